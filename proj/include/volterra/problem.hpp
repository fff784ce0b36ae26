#ifndef VOLTERRA_PROBLEM_HPP
#define VOLTERRA_PROBLEM_HPP

#include <vector>

#include "volterra/polynomials.hpp"

namespace volterra {

// A first-kind Volterra problem with a kernel defined piecewise on the
// sectors alpha_{i-1} t <= s < alpha_i t between rays through the origin:
//   integral_0^t K(t, s) x(s) ds = f(t),  0 < t <= T,
// with K = kernels[i-1] on sector i and implicit alpha_0 = 0, alpha_n = 1.
struct Problem {
    std::vector<double> breakpoints;      // alpha_1 .. alpha_{n-1}, strictly inside (0, 1)
    std::vector<BivariatePoly> kernels;   // K_1 .. K_n
    UniPoly rhs;                          // f, with f(0) = 0
    double horizon = 1.0;                 // T > 0
};

// A Problem whose invariants have been checked; obtained through validate().
class ValidatedProblem {
public:
    const Problem& problem() const { return problem_; }
    int sector_count() const { return static_cast<int>(problem_.kernels.size()); }

    // alpha(0) = 0 and alpha(n) = 1 included; i in 0..n.
    double alpha(int i) const { return alphas_[i]; }
    // a_i = ln(alpha_i), with the conventions a_0 = 0 and a_n = 0.
    double log_alpha(int i) const { return log_alphas_[i]; }
    // K_i, 1-based as in the sector numbering.
    const BivariatePoly& kernel(int i) const { return problem_.kernels[i - 1]; }
    double kernel00(int i) const { return kernel00_[i - 1]; }

    const UniPoly& rhs() const { return problem_.rhs; }
    double horizon() const { return problem_.horizon; }

private:
    friend ValidatedProblem validate(const Problem& p);
    ValidatedProblem() = default;

    Problem problem_;
    std::vector<double> alphas_;      // 0, alpha_1, ..., alpha_{n-1}, 1
    std::vector<double> log_alphas_;  // 0, ln alpha_1, ..., ln alpha_{n-1}, 0
    std::vector<double> kernel00_;    // K_i(0, 0)
};

// Checks breakpoint ordering, f(0) = 0 exactly, kernel/breakpoint counts and
// a nonvanishing diagonal K_n(t, t): |K_n(t, t)| >= 1e-9 * (grid max) on a
// uniform 1001-point grid over [0, T].
ValidatedProblem validate(const Problem& p);
// Idempotent counterpart: a validated problem passes through unchanged.
inline ValidatedProblem validate(const ValidatedProblem& p) { return p; }

struct RegularizationParams {
    int N = 0;
    double q = 0.0;       // achieved contraction factor, < 1
    int t_grid_size = 1001;
};

// The effective contraction factor at order N: the grid maximum over [0, T] of
//   |K_n(t,t)|^-1 * sum_i (alpha_i^(1+N) |K_i(t, alpha_i t)|
//                          + alpha_{i-1}^(1+N) |K_i(t, alpha_{i-1} t)|) - 1.
// The i = n upper term contributes exactly 1, so the value is >= 0 and
// non-increasing in N.
double condition_a_factor(const ValidatedProblem& vp, int N, int t_grid_size = 1001);

// Smallest N with condition_a_factor(N) <= q_max; throws NoFeasibleN past the cap.
RegularizationParams select_N(const ValidatedProblem& vp, double q_max, int t_grid_size = 1001,
                              int N_cap = 64);

}  // namespace volterra

#endif  // VOLTERRA_PROBLEM_HPP
