#include "volterra/asymptotic.hpp"

#include <cmath>
#include <sstream>

#include "volterra/errors.hpp"

namespace volterra {

namespace {

constexpr double kResidualSnapTol = 1e-12;
constexpr double kInconsistentTol = 1e-8;

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double acc = 1.0;
    for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
    return std::round(acc);
}

}  // namespace

LogPoly AsymptoticSolution::as_logpoly() const {
    LogPoly sum;
    for (int j = 0; j < static_cast<int>(coeffs.size()); ++j)
        sum += coeffs[j].times_t_power(j);
    return sum;
}

LogPoly differentiated_lhs(const ValidatedProblem& vp, const LogPoly& y) {
    const int n = vp.sector_count();
    LogPoly lhs;
    for (int i = 1; i <= n; ++i) {
        const BivariatePoly& K = vp.kernel(i);
        // Upper boundary term alpha_i K_i(t, alpha_i t) y(alpha_i t).
        const double hi = vp.alpha(i);
        lhs += hi * (LogPoly::from_unipoly(K.ray(hi)) * y.scaled_argument(hi));
        // Lower boundary term; drops out at alpha_0 = 0.
        const double lo = vp.alpha(i - 1);
        if (lo > 0.0) lhs -= lo * (LogPoly::from_unipoly(K.ray(lo)) * y.scaled_argument(lo));
        // Sector integral of dK_i/dt against y.
        const BivariatePoly dK = K.partial_t();
        if (!dK.is_zero()) lhs += integrate_segment(dK, y, lo, hi);
    }
    return lhs;
}

ZPoly build_Mj(const ValidatedProblem& vp, const std::vector<ZPoly>& prior, int j) {
    if (static_cast<int>(prior.size()) < j)
        fail(ErrorCode::BadInput, "prior coefficients x_0..x_{j-1} required");
    LogPoly partial;
    for (int m = 0; m < j; ++m) partial += prior[m].times_t_power(m);
    LogPoly residue = LogPoly::from_unipoly(vp.rhs().derivative());
    double cancel_scale = residue.max_abs_coeff();
    if (!partial.is_zero()) {
        const LogPoly lhs = differentiated_lhs(vp, partial);
        cancel_scale = std::max(cancel_scale, lhs.max_abs_coeff());
        residue -= lhs;
    }
    return snap(residue, kResidualSnapTol, cancel_scale).slice(j);
}

Eigen::MatrixXd difference_operator(const ValidatedProblem& vp, int j, int deg) {
    if (deg < 0) fail(ErrorCode::BadInput, "operator degree must be nonnegative");
    const int n = vp.sector_count();
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(deg + 1, deg + 1);
    const double Kn = vp.kernel00(n);
    for (int k = 0; k <= deg; ++k) D(k, k) = Kn;
    for (int i = 1; i <= n - 1; ++i) {
        const double beta = std::pow(vp.alpha(i), 1 + j) * (vp.kernel00(i) - vp.kernel00(i + 1));
        const double a = vp.log_alpha(i);
        for (int k = 0; k <= deg; ++k)
            for (int l = 0; l <= k; ++l)
                D(l, k) += beta * binomial(k, l) * std::pow(a, k - l);
    }
    return D;
}

ZPoly solve_coeff(const ValidatedProblem& vp, int j, const ZPoly& Mj, int r_j,
                  const std::vector<double>& free) {
    if (r_j < 0 || static_cast<int>(free.size()) != r_j)
        fail(ErrorCode::BadInput, "free-constant count must equal the root multiplicity");

    const int deg_m = Mj.degree();  // -1 when M_j == 0
    if (deg_m < 0 && r_j == 0) return ZPoly{};

    const int deg_x = std::max(deg_m, 0) + r_j;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(deg_x + 1);
    for (int i = 0; i < r_j; ++i) c[i] = free[i];
    if (deg_m < 0) return ZPoly(std::move(c));  // homogeneous part only

    const Eigen::MatrixXd D = difference_operator(vp, j, deg_x);

    // Undetermined coefficients from the top power down: equation row l
    // determines c[l + r_j]; entries left of that pivot are structural
    // zeros of the root case (the homogeneous monomials z^0..z^(r_j-1)).
    for (int l = deg_m; l >= 0; --l) {
        double rhs = Mj.coeff(l);
        for (int k = l + r_j + 1; k <= deg_x; ++k) rhs -= D(l, k) * c[k];
        const double pivot = D(l, l + r_j);
        if (pivot == 0.0)
            fail(ErrorCode::InconsistentSystem, "zero pivot in the difference-equation solve");
        c[l + r_j] = rhs / pivot;
    }

    // Residual against the full matrix, tiny structural entries included.
    Eigen::VectorXd m_ext = Eigen::VectorXd::Zero(deg_x + 1);
    for (int l = 0; l <= deg_m; ++l) m_ext[l] = Mj.coeff(l);
    const double resid = (D * c - m_ext).cwiseAbs().maxCoeff();
    const double scale = std::max({1e-30, m_ext.cwiseAbs().maxCoeff(),
                                   D.cwiseAbs().maxCoeff() * c.cwiseAbs().maxCoeff()});
    if (resid > kInconsistentTol * scale) {
        std::ostringstream os;
        os << "difference equation j = " << j << " back-substitution residual " << resid
           << " exceeds tolerance; multiplicity r_j = " << r_j << " looks misdetected";
        fail(ErrorCode::InconsistentSystem, os.str());
    }
    return ZPoly(std::move(c));
}

AsymptoticSolution build_asymptotic(const ValidatedProblem& vp, const CharacteristicReport& report,
                                    int N, std::vector<double> constants) {
    if (N < 0) fail(ErrorCode::BadInput, "N must be nonnegative");
    if (N > report.N)
        fail(ErrorCode::BadInput, "asymptotic order exceeds the analyzed characteristic range");

    AsymptoticSolution sol;
    sol.N = N;
    for (int j : report.roots)
        for (int i = 0; i < report.multiplicity_of(j); ++i) sol.free_slots.push_back({j, i});

    if (constants.empty()) constants.assign(sol.free_slots.size(), 0.0);
    if (constants.size() != sol.free_slots.size()) {
        std::ostringstream os;
        os << "expected " << sol.free_slots.size() << " free constant(s), got "
           << constants.size();
        fail(ErrorCode::BadInput, os.str());
    }
    sol.assigned = constants;

    std::size_t slot = 0;
    for (int j = 0; j <= N; ++j) {
        const ZPoly Mj = build_Mj(vp, sol.coeffs, j);
        const int r = report.multiplicity_of(j);
        std::vector<double> free(constants.begin() + slot, constants.begin() + slot + r);
        slot += r;
        sol.coeffs.push_back(solve_coeff(vp, j, Mj, r, free));
    }
    return sol;
}

}  // namespace volterra
