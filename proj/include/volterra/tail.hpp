#ifndef VOLTERRA_TAIL_HPP
#define VOLTERRA_TAIL_HPP

#include <Eigen/Core>

#include <vector>

#include "volterra/asymptotic.hpp"
#include "volterra/logpoly.hpp"
#include "volterra/problem.hpp"

namespace volterra {

// The regularized problem for the tail u:
//   integral_0^t K(t, s) s^N u(s) ds = g(t),
// with g(t) = f(t) - integral_0^t K(t, s) x^N(s) ds computed exactly.
struct TailProblem {
    ValidatedProblem problem;
    LogPoly g;
    LogPoly g_prime;
    int N = 0;
};

// Grid solution of the tail equation plus contraction diagnostics.
struct TailSolution {
    Eigen::VectorXd grid;    // t_k = k h, k = 0..K
    Eigen::VectorXd values;  // u_k, with u_0 = 0 pinned
    double weight_l = 1.0;   // weight of the norm max e^{-l t} |u(t)|
    int iterations = 0;
    double contraction_estimate = 0.0;
    bool converged = false;
    std::vector<double> diff_norms;  // weighted sweep-difference history

    double step() const { return grid.size() > 1 ? grid[1] : 0.0; }
    double max_abs() const { return values.size() ? values.cwiseAbs().maxCoeff() : 0.0; }
};

// Full solution x(t) = x^N(t) + t^N u(t), with u linearly interpolated
// between grid nodes.
struct Solution {
    AsymptoticSolution asymptotic;
    TailSolution tail;
    int N = 0;

    LogPoly asymptotic_logpoly;  // cached sum of the x_j(ln t) t^j
};

Solution make_solution(AsymptoticSolution asymptotic, TailSolution tail, int N);

// Linear interpolation of grid values at t in [0, grid end].
double interp_grid(const Eigen::VectorXd& values, double h, double t);

// Computes g and g' in the exact algebra and enforces the o(t^N) hypothesis:
// every coefficient of g' at powers below N must be at most otN_tol relative
// to the largest coefficient of g' (AsymptoticInconsistent otherwise).
TailProblem compute_g(const ValidatedProblem& vp, const AsymptoticSolution& xN,
                      double otN_tol = 1e-9);

// Successive approximations on the differentiated regularized equation
// solved for the i = n boundary value u(t):
//   u(t) = [g'(t) - (other boundary terms) - (sector integrals of dK/dt s^N u)]
//          / (t^N K_n(t, t)).
// Nodes are updated Jacobi-style from the previous sweep; sector integrals
// use the composite trapezoid with at least 8 subnodes; convergence is
// declared when max_k e^{-l t_k} |u_k^{m+1} - u_k^m| < tol. On max_iter the
// solve retries once with the weight l doubled before failing.
TailSolution solve_tail(const TailProblem& tp, double h, double l = 1.0, double tol = 1e-10,
                        int max_iter = 500);

// Independent cross-check: direct product-midpoint time stepping of the
// regularized equation. Cell weights integral_cell K(t_k, s) s^N ds are
// computed in closed form (sector splits included); the unknowns are the
// cell-midpoint values of u, averaged back onto the grid.
TailSolution solve_tail_quadrature(const TailProblem& tp, double h);

}  // namespace volterra

#endif  // VOLTERRA_TAIL_HPP
