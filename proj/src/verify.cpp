#include "volterra/verify.hpp"

#include <cmath>
#include <sstream>

#include "volterra/errors.hpp"
#include "volterra/quadrature.hpp"

namespace volterra {

namespace {

constexpr int kDyadicSplits = 40;
constexpr double kManufactureSnapTol = 1e-12;

}  // namespace

double eval_solution(const Solution& sol, double t) {
    const double T = sol.tail.grid.size() ? sol.tail.grid[sol.tail.grid.size() - 1] : 0.0;
    if (!(t > 0.0) || t > T * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "t = " << t << " outside the solution domain (0, " << T << "]";
        fail(ErrorCode::OutOfDomain, os.str());
    }
    const double u = interp_grid(sol.tail.values, sol.tail.step(), t);
    return sol.asymptotic_logpoly.eval(t) + std::pow(t, sol.N) * u;
}

ResidualReport residual(const ValidatedProblem& vp, const Solution& sol,
                        const std::vector<double>& ts, int quad_order) {
    const GaussLegendre rule = gauss_legendre(quad_order);
    ResidualReport report;
    report.quad_order = quad_order;
    for (double t : ts) {
        if (!(t > 0.0) || t > vp.horizon() * (1.0 + 1e-12))
            fail(ErrorCode::OutOfDomain, "residual sample outside (0, T]");
        double integral = 0.0;
        for (int i = 1; i <= vp.sector_count(); ++i) {
            const BivariatePoly& K = vp.kernel(i);
            const auto integrand = [&](double s) { return K.eval(t, s) * eval_solution(sol, s); };
            const double lo = vp.alpha(i - 1) * t;
            const double hi = vp.alpha(i) * t;
            if (i == 1) {
                // Dyadic refinement toward the ln(s) singularity at 0; the
                // innermost piece reaches 0 (Gauss nodes stay interior).
                double b = hi;
                for (int split = 0; split < kDyadicSplits - 1; ++split) {
                    const double a = 0.5 * b;
                    integral += integrate(rule, a, b, integrand);
                    b = a;
                }
                integral += integrate(rule, 0.0, b, integrand);
            } else {
                integral += integrate(rule, lo, hi, integrand);
            }
        }
        const double r = integral - vp.rhs().eval(t);
        report.samples.emplace_back(t, r);
        report.max_abs = std::max(report.max_abs, std::abs(r));
    }
    return report;
}

std::pair<Problem, LogPoly> make_manufactured(const std::vector<BivariatePoly>& kernels,
                                              const std::vector<double>& alphas,
                                              const LogPoly& x_target, double T) {
    if (kernels.size() != alphas.size() + 1)
        fail(ErrorCode::BadInput, "need one more kernel than breakpoints");
    std::vector<double> bounds{0.0};
    bounds.insert(bounds.end(), alphas.begin(), alphas.end());
    bounds.push_back(1.0);

    LogPoly f_exact;
    double cancel_scale = 0.0;
    for (std::size_t i = 0; i < kernels.size(); ++i) {
        const LogPoly part = integrate_segment(kernels[i], x_target, bounds[i], bounds[i + 1]);
        cancel_scale = std::max(cancel_scale, part.max_abs_coeff());
        f_exact += part;
    }
    const LogPoly f_snapped = snap(f_exact, kManufactureSnapTol, cancel_scale);

    int max_p = 0;
    for (const LogTerm& term : f_snapped.terms()) {
        if (term.m > 0) {
            std::ostringstream os;
            os << "log terms in f do not cancel (found " << term.c << " * t^" << term.p
               << " * ln(t)^" << term.m << "); the target is incompatible with a polynomial f";
            fail(ErrorCode::ResidualLogTerms, os.str());
        }
        max_p = std::max(max_p, term.p);
    }
    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(max_p + 1);
    for (const LogTerm& term : f_snapped.terms()) coeffs[term.p] = term.c;

    Problem p;
    p.breakpoints = alphas;
    p.kernels = kernels;
    p.rhs = UniPoly(std::move(coeffs));
    p.horizon = T;
    return {std::move(p), x_target};
}

}  // namespace volterra
