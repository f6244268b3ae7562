#pragma once

#include <cmath>
#include <cstddef>

namespace emcel::quadrature {

struct SimpsonOptions {
  double abs_tol = 1e-12;
  int max_depth = 50;
  std::size_t max_evaluations = 200000;
};

struct SimpsonResult {
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;  // false when the depth or evaluation cap was hit
};

namespace detail {

template <class F>
struct SimpsonState {
  F& f;
  const SimpsonOptions& opts;
  std::size_t evaluations = 0;
  bool converged = true;

  double eval(double x) {
    ++evaluations;
    return f(x);
  }

  double recurse(double a, double fa, double b, double fb, double m, double fm, double whole,
                 double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0 || evaluations >= opts.max_evaluations || !(lm > a && rm < b)) {
      converged = false;
      return left + right + delta / 15.0;
    }
    return recurse(a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           recurse(m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
  }
};

}  // namespace detail

/// Adaptive Simpson rule on [a, b] with Richardson correction. Stops
/// refining once the depth or evaluation cap is reached and reports it.
template <class F>
SimpsonResult adaptive_simpson(F&& f, double a, double b, const SimpsonOptions& opts = {}) {
  if (!(b > a)) return {};
  detail::SimpsonState<F> st{f, opts};
  const double fa = st.eval(a);
  const double fb = st.eval(b);
  const double m = 0.5 * (a + b);
  const double fm = st.eval(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  SimpsonResult out;
  out.value = st.recurse(a, fa, b, fb, m, fm, whole, opts.abs_tol, opts.max_depth);
  out.evaluations = st.evaluations;
  out.converged = st.converged;
  return out;
}

}  // namespace emcel::quadrature
