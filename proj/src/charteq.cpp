#include "volterra/charteq.hpp"

#include <cmath>
#include <sstream>

#include "volterra/errors.hpp"

namespace volterra {

namespace {

double kernel00_scale(const ValidatedProblem& vp) {
    double scale = 0.0;
    for (int i = 1; i <= vp.sector_count(); ++i) scale += std::abs(vp.kernel00(i));
    return scale;
}

}  // namespace

double eval_L(const ValidatedProblem& vp, int j) {
    if (j < 0) fail(ErrorCode::BadInput, "characteristic index j must be nonnegative");
    double L = 0.0;
    for (int i = 1; i <= vp.sector_count(); ++i)
        L += vp.kernel00(i) * (std::pow(vp.alpha(i), 1 + j) - std::pow(vp.alpha(i - 1), 1 + j));
    return L;
}

std::vector<int> natural_roots(const ValidatedProblem& vp, int N, double root_tol) {
    const double scale = kernel00_scale(vp);
    std::vector<int> roots;
    for (int j = 0; j <= N; ++j)
        if (std::abs(eval_L(vp, j)) <= root_tol * scale) roots.push_back(j);
    return roots;
}

int multiplicity(const ValidatedProblem& vp, int j, double tol) {
    const int n = vp.sector_count();
    for (int l = 1; l <= n - 1; ++l) {
        double S = 0.0;
        double scale = 0.0;
        for (int i = 1; i <= n - 1; ++i) {
            const double w = std::pow(vp.alpha(i), 1 + j) * (vp.kernel00(i) - vp.kernel00(i + 1));
            const double al = std::pow(vp.log_alpha(i), l);
            S += w * al;
            scale += std::abs(w) * std::abs(al);
        }
        if (std::abs(S) > tol * scale) return l;
    }
    std::ostringstream os;
    os << "all kernel-jump sums S_1..S_" << n - 1 << " vanish at j = " << j
       << "; contradicts the nonvanishing-diagonal condition";
    fail(ErrorCode::MultiplicityOverflow, os.str());
}

CharacteristicReport analyze(const ValidatedProblem& vp, const RegularizationParams& params) {
    CharacteristicReport report;
    report.N = params.N;
    const double scale = kernel00_scale(vp);
    for (int j = 0; j <= params.N; ++j) report.L_values.push_back(eval_L(vp, j));
    report.roots = natural_roots(vp, params.N);
    for (int j : report.roots) {
        const int r = multiplicity(vp, j);
        report.multiplicities[j] = r;
        report.free_constant_count += r;
    }
    for (int i = 1; i < vp.sector_count(); ++i)
        report.log_breakpoints.push_back(vp.log_alpha(i));

    // The regular/irregular dichotomy is discrete but L(j) is floating point:
    // flag non-roots that come close to the threshold.
    const double warn_floor = 1e4 * kRootTol * scale;
    for (int j = 0; j <= params.N; ++j) {
        const double absL = std::abs(report.L_values[j]);
        if (absL > kRootTol * scale && absL <= warn_floor) {
            std::ostringstream os;
            os << "L(" << j << ") is near zero (|L| = " << absL
               << ") but above the root tolerance; treated as a non-root";
            report.warnings.push_back(os.str());
        }
    }
    return report;
}

}  // namespace volterra
