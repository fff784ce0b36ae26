#include "volterra/problem.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "volterra/errors.hpp"

namespace volterra {

namespace {
constexpr double kDiagonalRelFloor = 1e-9;
constexpr int kDiagonalGridSize = 1001;
}  // namespace

ValidatedProblem validate(const Problem& p) {
    if (p.kernels.empty()) fail(ErrorCode::BadInput, "problem needs at least one kernel");
    if (p.kernels.size() != p.breakpoints.size() + 1) {
        std::ostringstream os;
        os << "expected " << p.breakpoints.size() + 1 << " kernels for " << p.breakpoints.size()
           << " breakpoint(s), got " << p.kernels.size();
        fail(ErrorCode::BadInput, os.str());
    }
    if (!(p.horizon > 0.0)) fail(ErrorCode::BadInput, "horizon T must be positive");

    double prev = 0.0;
    for (double a : p.breakpoints) {
        if (!(a > prev && a < 1.0))
            fail(ErrorCode::BreakpointOrder,
                 "breakpoints must satisfy 0 < alpha_1 < ... < alpha_{n-1} < 1 strictly");
        prev = a;
    }

    if (p.rhs.coeff(0) != 0.0) fail(ErrorCode::NonzeroF0, "constant term of f must be exactly 0");

    // Diagonal check: K_n(t, t) bounded away from zero on [0, T].
    const UniPoly diag = p.kernels.back().diagonal();
    double max_mag = 0.0;
    double min_mag = std::numeric_limits<double>::infinity();
    for (int k = 0; k < kDiagonalGridSize; ++k) {
        const double t = p.horizon * k / (kDiagonalGridSize - 1);
        const double v = std::abs(diag.eval(t));
        max_mag = std::max(max_mag, v);
        min_mag = std::min(min_mag, v);
    }
    if (max_mag == 0.0 || min_mag < kDiagonalRelFloor * max_mag)
        fail(ErrorCode::DegenerateDiagonal, "K_n(t, t) vanishes or nearly vanishes on [0, T]");

    ValidatedProblem vp;
    vp.problem_ = p;
    vp.alphas_.push_back(0.0);
    vp.log_alphas_.push_back(0.0);
    for (double a : p.breakpoints) {
        vp.alphas_.push_back(a);
        vp.log_alphas_.push_back(std::log(a));
    }
    vp.alphas_.push_back(1.0);
    vp.log_alphas_.push_back(0.0);
    for (const BivariatePoly& k : p.kernels) vp.kernel00_.push_back(k.value_at_origin());
    return vp;
}

double condition_a_factor(const ValidatedProblem& vp, int N, int t_grid_size) {
    if (N < 0) fail(ErrorCode::BadInput, "N must be nonnegative");
    if (t_grid_size < 2) fail(ErrorCode::BadInput, "t grid needs at least 2 points");
    const int n = vp.sector_count();
    const double T = vp.horizon();

    // Ray restrictions K_i(t, alpha t) and endpoint weights alpha^(1+N).
    std::vector<UniPoly> upper_ray(n), lower_ray(n);
    std::vector<double> upper_w(n), lower_w(n);
    for (int i = 1; i <= n; ++i) {
        upper_ray[i - 1] = vp.kernel(i).ray(vp.alpha(i));
        lower_ray[i - 1] = vp.kernel(i).ray(vp.alpha(i - 1));
        upper_w[i - 1] = std::pow(vp.alpha(i), 1 + N);
        lower_w[i - 1] = std::pow(vp.alpha(i - 1), 1 + N);  // 0 for i = 1
    }
    const UniPoly diag = vp.kernel(n).diagonal();

    double q = 0.0;
    for (int k = 0; k < t_grid_size; ++k) {
        const double t = T * k / (t_grid_size - 1);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            sum += upper_w[i] * std::abs(upper_ray[i].eval(t));
            sum += lower_w[i] * std::abs(lower_ray[i].eval(t));
        }
        q = std::max(q, sum / std::abs(diag.eval(t)) - 1.0);
    }
    return q;
}

RegularizationParams select_N(const ValidatedProblem& vp, double q_max, int t_grid_size,
                              int N_cap) {
    if (!(q_max > 0.0 && q_max < 1.0)) fail(ErrorCode::BadInput, "q_max must lie in (0, 1)");
    for (int N = 0; N <= N_cap; ++N) {
        const double q = condition_a_factor(vp, N, t_grid_size);
        if (q <= q_max) return RegularizationParams{N, q, t_grid_size};
    }
    std::ostringstream os;
    os << "no N <= " << N_cap << " achieves contraction factor <= " << q_max;
    fail(ErrorCode::NoFeasibleN, os.str());
}

}  // namespace volterra
