#ifndef VOLTERRA_VERIFY_HPP
#define VOLTERRA_VERIFY_HPP

#include <utility>
#include <vector>

#include "volterra/problem.hpp"
#include "volterra/tail.hpp"

namespace volterra {

// Direct check of the original equation: r(t) = integral_0^t K x ds - f(t).
struct ResidualReport {
    std::vector<std::pair<double, double>> samples;  // (t, r(t))
    int quad_order = 32;
    double max_abs = 0.0;
};

// x(t) = x^N(t) + t^N u(t), u off-grid by linear interpolation.
// Throws OutOfDomain outside (0, T].
double eval_solution(const Solution& sol, double t);

// Sector integrals by Gauss-Legendre of the given order; the first sector
// [0, alpha_1 t] is split dyadically toward 0 into 40 subintervals to tame
// the integrable ln(s) singularity.
ResidualReport residual(const ValidatedProblem& vp, const Solution& sol,
                        const std::vector<double>& ts, int quad_order = 32);

// Inverts the equation: given a target solution, computes the matching f by
// exact sector integration. Log terms must cancel to a polynomial f
// (ResidualLogTerms otherwise); constant term vanishes by construction.
std::pair<Problem, LogPoly> make_manufactured(const std::vector<BivariatePoly>& kernels,
                                              const std::vector<double>& alphas,
                                              const LogPoly& x_target, double T);

}  // namespace volterra

#endif  // VOLTERRA_VERIFY_HPP
