#include "volterra/tail.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include "volterra/errors.hpp"

namespace volterra {

namespace {

constexpr double kCancellationSnapTol = 1e-12;

int grid_steps(double T, double h) {
    if (!(h > 0.0) || h > T) fail(ErrorCode::BadInput, "step h must satisfy 0 < h <= T");
    const double ratio = T / h;
    const int K = static_cast<int>(std::lround(ratio));
    if (K < 1 || std::abs(ratio - K) > 1e-9 * ratio)
        fail(ErrorCode::BadInput, "step h must divide the horizon T");
    return K;
}

// s-coefficients of K(t0, s): coef[q] multiplies s^q.
std::vector<double> s_coefficients_at(const std::vector<UniPoly>& by_s, double t0) {
    std::vector<double> coef(by_s.size());
    for (std::size_t q = 0; q < by_s.size(); ++q) coef[q] = by_s[q].eval(t0);
    return coef;
}

double eval_poly(const std::vector<double>& coef, double s) {
    double acc = 0.0;
    for (std::size_t q = coef.size(); q-- > 0;) acc = acc * s + coef[q];
    return acc;
}

}  // namespace

double interp_grid(const Eigen::VectorXd& values, double h, double t) {
    const int K = static_cast<int>(values.size()) - 1;
    if (t <= 0.0) return values[0];
    const double pos = t / h;
    int idx = static_cast<int>(pos);
    if (idx >= K) return values[K];
    const double w = pos - idx;
    return (1.0 - w) * values[idx] + w * values[idx + 1];
}

Solution make_solution(AsymptoticSolution asymptotic, TailSolution tail, int N) {
    Solution sol;
    sol.asymptotic = std::move(asymptotic);
    sol.tail = std::move(tail);
    sol.N = N;
    sol.asymptotic_logpoly = sol.asymptotic.as_logpoly();
    return sol;
}

TailProblem compute_g(const ValidatedProblem& vp, const AsymptoticSolution& xN, double otN_tol) {
    const LogPoly x_lp = xN.as_logpoly();
    LogPoly g = LogPoly::from_unipoly(vp.rhs());
    double cancel_scale = g.max_abs_coeff();
    for (int i = 1; i <= vp.sector_count(); ++i) {
        const LogPoly part = integrate_segment(vp.kernel(i), x_lp, vp.alpha(i - 1), vp.alpha(i));
        cancel_scale = std::max(cancel_scale, part.max_abs_coeff());
        g -= part;
    }
    g = snap(g, kCancellationSnapTol, cancel_scale);
    const LogPoly g_prime = g.derivative();

    // o(t^N) hypothesis: powers below N must have cancelled.
    const double scale = g_prime.max_abs_coeff();
    double worst = 0.0;
    int worst_p = -1, worst_m = -1;
    for (const LogTerm& term : g_prime.terms()) {
        if (term.p < xN.N && std::abs(term.c) > worst) {
            worst = std::abs(term.c);
            worst_p = term.p;
            worst_m = term.m;
        }
    }
    if (worst > otN_tol * scale) {
        std::ostringstream os;
        os << "g' has coefficient " << worst << " at t^" << worst_p << " ln^" << worst_m
           << " below the regularization order N = " << xN.N;
        fail(ErrorCode::AsymptoticInconsistent, os.str());
    }

    return TailProblem{vp, g, g_prime, xN.N};
}

TailSolution solve_tail(const TailProblem& tp, double h, double l, double tol, int max_iter) {
    const ValidatedProblem& vp = tp.problem;
    const int n = vp.sector_count();
    const int N = tp.N;
    const double T = vp.horizon();
    const int K = grid_steps(T, h);

    Eigen::VectorXd grid(K + 1);
    for (int k = 0; k <= K; ++k) grid[k] = k * h;

    // Per-node constants of the iteration map.
    Eigen::VectorXd denom(K + 1), gp(K + 1), tN(K + 1);
    const UniPoly diag = vp.kernel(n).diagonal();
    double diag_max = 0.0;
    for (int k = 1; k <= K; ++k) diag_max = std::max(diag_max, std::abs(diag.eval(grid[k])));
    for (int k = 1; k <= K; ++k) {
        const double d = diag.eval(grid[k]);
        if (std::abs(d) < 1e-9 * diag_max)
            fail(ErrorCode::DegenerateDiagonal, "K_n(t, t) nearly vanishes on the tail grid");
        tN[k] = std::pow(grid[k], N);
        denom[k] = tN[k] * d;
        gp[k] = tp.g_prime.is_zero() ? 0.0 : tp.g_prime.eval(grid[k]);
    }

    // Boundary (functional) terms, excluding the solved-for i = n upper one:
    // coefficient tables for u(alpha_i t_k) contributions.
    struct BoundaryTerm {
        double alpha;                 // argument scale
        double weight_pow;            // alpha^(1+N), signed
        Eigen::VectorXd kernel_ray;   // K_i(t_k, alpha t_k) per node
    };
    std::vector<BoundaryTerm> boundary;
    for (int i = 1; i <= n; ++i) {
        const double hi = vp.alpha(i);
        if (i < n) {  // upper terms; i = n upper is solved for
            BoundaryTerm bt{hi, std::pow(hi, 1 + N), Eigen::VectorXd(K + 1)};
            const UniPoly ray = vp.kernel(i).ray(hi);
            for (int k = 1; k <= K; ++k) bt.kernel_ray[k] = ray.eval(grid[k]);
            boundary.push_back(std::move(bt));
        }
        const double lo = vp.alpha(i - 1);
        if (lo > 0.0) {
            BoundaryTerm bt{lo, -std::pow(lo, 1 + N), Eigen::VectorXd(K + 1)};
            const UniPoly ray = vp.kernel(i).ray(lo);
            for (int k = 1; k <= K; ++k) bt.kernel_ray[k] = ray.eval(grid[k]);
            boundary.push_back(std::move(bt));
        }
    }

    // Sector integrals of dK_i/dt (t, s) s^N u(s); absent for t-free kernels.
    struct SectorIntegral {
        double lo, hi;                    // sector bounds as fractions of t
        std::vector<UniPoly> dK_by_s;     // s-coefficients of dK/dt as polys in t
    };
    std::vector<SectorIntegral> integrals;
    for (int i = 1; i <= n; ++i) {
        const BivariatePoly dK = vp.kernel(i).partial_t();
        if (!dK.is_zero())
            integrals.push_back({vp.alpha(i - 1), vp.alpha(i), dK.by_s_power()});
    }

    const auto run = [&](double weight) -> std::optional<TailSolution> {
        Eigen::VectorXd u = Eigen::VectorXd::Zero(K + 1);
        Eigen::VectorXd u_next = Eigen::VectorXd::Zero(K + 1);
        std::vector<double> diff_norms;
        for (int iter = 1; iter <= max_iter; ++iter) {
            for (int k = 1; k <= K; ++k) {
                const double t = grid[k];
                double acc = gp[k];
                for (const BoundaryTerm& bt : boundary)
                    acc -= bt.weight_pow * bt.kernel_ray[k] * tN[k] *
                           interp_grid(u, h, bt.alpha * t);
                for (const SectorIntegral& si : integrals) {
                    const double a = si.lo * t;
                    const double b = si.hi * t;
                    const int nsub = std::max(8, static_cast<int>(std::ceil((b - a) / h)));
                    const double ds = (b - a) / nsub;
                    const std::vector<double> coef = s_coefficients_at(si.dK_by_s, t);
                    double integral = 0.0;
                    for (int m = 0; m <= nsub; ++m) {
                        const double s = a + m * ds;
                        const double w = (m == 0 || m == nsub) ? 0.5 : 1.0;
                        integral += w * eval_poly(coef, s) * std::pow(s, N) * interp_grid(u, h, s);
                    }
                    acc -= integral * ds;
                }
                u_next[k] = acc / denom[k];
            }
            u_next[0] = 0.0;

            double diff = 0.0;
            for (int k = 0; k <= K; ++k)
                diff = std::max(diff, std::exp(-weight * grid[k]) * std::abs(u_next[k] - u[k]));
            diff_norms.push_back(diff);
            u.swap(u_next);

            if (diff < tol) {
                TailSolution ts;
                ts.grid = grid;
                ts.values = u;
                ts.weight_l = weight;
                ts.iterations = iter;
                ts.converged = true;
                ts.diff_norms = diff_norms;
                // Geometric-mean contraction over the last up-to-5 ratios.
                const int have = static_cast<int>(diff_norms.size());
                const int span = std::min(5, have - 1);
                if (span >= 1 && diff_norms[have - 1 - span] > 0.0)
                    ts.contraction_estimate = std::pow(
                        diff_norms[have - 1] / diff_norms[have - 1 - span], 1.0 / span);
                return ts;
            }
        }
        return std::nullopt;
    };

    if (auto ts = run(l)) return *ts;
    if (auto ts = run(2.0 * l)) return *ts;  // one retry with the weight doubled
    std::ostringstream os;
    os << "tail iteration did not converge within " << max_iter << " sweeps (weights " << l
       << " and " << 2.0 * l << ")";
    fail(ErrorCode::NoConvergence, os.str());
}

TailSolution solve_tail_quadrature(const TailProblem& tp, double h) {
    const ValidatedProblem& vp = tp.problem;
    const int n = vp.sector_count();
    const int N = tp.N;
    const double T = vp.horizon();
    const int K = grid_steps(T, h);

    // s-coefficient profiles of each kernel, reused across equations.
    std::vector<std::vector<UniPoly>> kernel_by_s(n);
    for (int i = 0; i < n; ++i) kernel_by_s[i] = vp.kernel(i + 1).by_s_power();

    Eigen::VectorXd v(K + 1);  // midpoint values, v[m] ~ u((m - 1/2) h)
    v[0] = 0.0;

    for (int k = 1; k <= K; ++k) {
        const double t = k * h;
        // Antiderivatives A_i(s) of K_i(t, s) s^N per sector at this t.
        std::vector<std::vector<double>> anti(n);
        for (int i = 0; i < n; ++i) {
            const std::vector<double> coef = s_coefficients_at(kernel_by_s[i], t);
            std::vector<double> a(coef.size() + N + 1, 0.0);
            for (std::size_t q = 0; q < coef.size(); ++q)
                a[q + N + 1] = coef[q] / static_cast<double>(q + N + 1);
            anti[i] = std::move(a);
        }
        const auto moment = [&](int i, double s0, double s1) {
            double acc1 = 0.0, acc0 = 0.0;
            for (std::size_t q = anti[i].size(); q-- > 1;) {
                acc1 = acc1 * s1 + anti[i][q];
                acc0 = acc0 * s0 + anti[i][q];
            }
            return acc1 * s1 - acc0 * s0;
        };
        // Exact cell weights: walk cells and sector boundaries together.
        double known = 0.0;
        double w_kk = 0.0;
        double w_max = 0.0;
        int sector = 0;
        for (int m = 1; m <= k; ++m) {
            double lo = (m - 1) * h;
            const double cell_hi = std::min(m * h, t);
            double w = 0.0;
            while (sector < n - 1 && vp.alpha(sector + 1) * t < cell_hi) {
                const double b = vp.alpha(sector + 1) * t;
                if (b > lo) {
                    w += moment(sector, lo, b);
                    lo = b;
                }
                ++sector;
            }
            w += moment(sector, lo, cell_hi);
            w_max = std::max(w_max, std::abs(w));
            if (m == k)
                w_kk = w;
            else
                known += w * v[m];
        }
        if (std::abs(w_kk) <= 1e-10 * std::max(w_max, 1e-300))
            fail(ErrorCode::DegenerateDiagonal,
                 "leading quadrature weight vanishes in the time stepping");
        const double g_t = tp.g.is_zero() ? 0.0 : tp.g.eval(t);
        v[k] = (g_t - known) / w_kk;
    }

    TailSolution ts;
    ts.grid.resize(K + 1);
    for (int k = 0; k <= K; ++k) ts.grid[k] = k * h;
    ts.values.resize(K + 1);
    ts.values[0] = 0.0;
    for (int k = 1; k < K; ++k) ts.values[k] = 0.5 * (v[k] + v[k + 1]);
    ts.values[K] = K >= 2 ? 1.5 * v[K] - 0.5 * v[K - 1] : v[K];
    ts.weight_l = 0.0;
    ts.iterations = 1;
    ts.contraction_estimate = 0.0;
    ts.converged = true;
    return ts;
}

}  // namespace volterra
