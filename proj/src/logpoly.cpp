#include "volterra/logpoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "volterra/errors.hpp"

namespace volterra {

namespace {

// Binomial coefficients C(n, k) as doubles; exact for the small n used here.
double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double acc = 1.0;
    for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
    return std::round(acc);
}

}  // namespace

ZPoly::ZPoly(Eigen::VectorXd coeffs) : coeffs_(std::move(coeffs)) { trim(); }

ZPoly::ZPoly(std::initializer_list<double> coeffs) {
    coeffs_.resize(static_cast<Eigen::Index>(coeffs.size()));
    Eigen::Index k = 0;
    for (double c : coeffs) coeffs_[k++] = c;
    trim();
}

ZPoly ZPoly::constant(double c) { return ZPoly({c}); }

void ZPoly::trim() {
    Eigen::Index n = coeffs_.size();
    while (n > 0 && coeffs_[n - 1] == 0.0) --n;
    coeffs_.conservativeResize(n);
    if (degree() > kDegreeCap) fail(ErrorCode::DegreeCapExceeded, "z-polynomial degree exceeds cap");
}

double ZPoly::coeff(int k) const {
    if (k < 0 || k >= coeffs_.size()) return 0.0;
    return coeffs_[k];
}

double ZPoly::max_abs_coeff() const {
    return coeffs_.size() == 0 ? 0.0 : coeffs_.cwiseAbs().maxCoeff();
}

double ZPoly::eval(double z) const {
    double acc = 0.0;
    for (Eigen::Index k = coeffs_.size() - 1; k >= 0; --k) acc = acc * z + coeffs_[k];
    return acc;
}

LogPoly ZPoly::times_t_power(int p) const {
    std::vector<LogTerm> terms;
    for (int k = 0; k < coeffs_.size(); ++k)
        if (coeffs_[k] != 0.0) terms.push_back(LogTerm{p, k, coeffs_[k]});
    return LogPoly(std::move(terms));
}

LogPoly::LogPoly(std::initializer_list<LogTerm> terms) : terms_(terms) { normalize(); }

LogPoly::LogPoly(std::vector<LogTerm> terms) : terms_(std::move(terms)) { normalize(); }

LogPoly LogPoly::constant(double c) { return LogPoly({LogTerm{0, 0, c}}); }

LogPoly LogPoly::from_unipoly(const UniPoly& f) {
    std::vector<LogTerm> terms;
    for (int k = 0; k <= f.degree(); ++k)
        if (f.coeff(k) != 0.0) terms.push_back(LogTerm{k, 0, f.coeff(k)});
    return LogPoly(std::move(terms));
}

void LogPoly::normalize() {
    for (const LogTerm& term : terms_) {
        if (term.p < 0 || term.m < 0)
            fail(ErrorCode::BadInput, "log-power term exponents must be nonnegative");
        if (term.p > kPowerCap || term.m > kLogPowerCap)
            fail(ErrorCode::DegreeCapExceeded, "log-power term degree exceeds cap");
    }
    std::sort(terms_.begin(), terms_.end(), [](const LogTerm& a, const LogTerm& b) {
        return a.p != b.p ? a.p < b.p : a.m < b.m;
    });
    std::vector<LogTerm> merged;
    for (const LogTerm& term : terms_) {
        if (!merged.empty() && merged.back().p == term.p && merged.back().m == term.m) {
            merged.back().c += term.c;
        } else {
            merged.push_back(term);
        }
    }
    std::erase_if(merged, [](const LogTerm& t) { return t.c == 0.0; });
    terms_ = std::move(merged);
}

double LogPoly::coeff(int p, int m) const {
    for (const LogTerm& term : terms_)
        if (term.p == p && term.m == m) return term.c;
    return 0.0;
}

int LogPoly::max_power() const {
    int p = 0;
    for (const LogTerm& term : terms_) p = std::max(p, term.p);
    return p;
}

int LogPoly::max_log_power() const {
    int m = 0;
    for (const LogTerm& term : terms_) m = std::max(m, term.m);
    return m;
}

double LogPoly::max_abs_coeff() const {
    double c = 0.0;
    for (const LogTerm& term : terms_) c = std::max(c, std::abs(term.c));
    return c;
}

double LogPoly::eval(double t) const {
    if (!(t > 0.0)) fail(ErrorCode::NonpositiveT, "log-power polynomial evaluated at t <= 0");
    const double z = std::log(t);
    double acc = 0.0;
    for (const LogTerm& term : terms_)
        acc += term.c * std::pow(t, term.p) * std::pow(z, term.m);
    return acc;
}

LogPoly LogPoly::derivative() const {
    std::vector<LogTerm> d;
    for (const LogTerm& term : terms_) {
        if (term.p == 0) {
            if (term.m >= 1)
                fail(ErrorCode::NotDifferentiableAtZero,
                     "derivative of a pure ln(t) power leaves the p >= 0 algebra");
            continue;  // constant term
        }
        d.push_back(LogTerm{term.p - 1, term.m, term.c * term.p});
        if (term.m >= 1) d.push_back(LogTerm{term.p - 1, term.m - 1, term.c * term.m});
    }
    return LogPoly(std::move(d));
}

LogPoly LogPoly::scaled_argument(double alpha) const {
    if (!(alpha > 0.0)) fail(ErrorCode::BadInput, "argument scale must be positive");
    const double la = std::log(alpha);
    std::vector<LogTerm> out;
    for (const LogTerm& term : terms_) {
        const double base = term.c * std::pow(alpha, term.p);
        if (la == 0.0) {
            out.push_back(LogTerm{term.p, term.m, base});
            continue;
        }
        // (ln t + la)^m expanded binomially.
        for (int i = 0; i <= term.m; ++i)
            out.push_back(
                LogTerm{term.p, i, base * binomial(term.m, i) * std::pow(la, term.m - i)});
    }
    return LogPoly(std::move(out));
}

ZPoly LogPoly::slice(int p) const {
    int deg = -1;
    for (const LogTerm& term : terms_)
        if (term.p == p) deg = std::max(deg, term.m);
    if (deg < 0) return ZPoly{};
    Eigen::VectorXd c = Eigen::VectorXd::Zero(deg + 1);
    for (const LogTerm& term : terms_)
        if (term.p == p) c[term.m] += term.c;
    return ZPoly(std::move(c));
}

std::string LogPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const LogTerm& term : terms_) {
        if (!first) os << " + ";
        first = false;
        os << term.c << " * t^" << term.p << " * ln(t)^" << term.m;
    }
    return os.str();
}

LogPoly operator+(const LogPoly& a, const LogPoly& b) {
    std::vector<LogTerm> terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return LogPoly(std::move(terms));
}

LogPoly operator-(const LogPoly& a, const LogPoly& b) { return a + (-1.0 * b); }

LogPoly operator*(const LogPoly& a, const LogPoly& b) {
    std::vector<LogTerm> terms;
    terms.reserve(a.terms_.size() * b.terms_.size());
    for (const LogTerm& x : a.terms_)
        for (const LogTerm& y : b.terms_)
            terms.push_back(LogTerm{x.p + y.p, x.m + y.m, x.c * y.c});
    return LogPoly(std::move(terms));
}

LogPoly operator*(double s, const LogPoly& a) {
    std::vector<LogTerm> terms = a.terms_;
    for (LogTerm& term : terms) term.c *= s;
    return LogPoly(std::move(terms));
}

LogPoly& LogPoly::operator+=(const LogPoly& other) {
    *this = *this + other;
    return *this;
}

LogPoly& LogPoly::operator-=(const LogPoly& other) {
    *this = *this - other;
    return *this;
}

LogPoly snap(const LogPoly& a, double rel_tol, double scale) {
    const double floor = rel_tol * std::max(a.max_abs_coeff(), scale);
    std::vector<LogTerm> kept;
    for (const LogTerm& term : a.terms())
        if (std::abs(term.c) > floor) kept.push_back(term);
    return LogPoly(std::move(kept));
}

LogPoly antiderivative_power_log(int p, int m) {
    if (p < 0 || m < 0) fail(ErrorCode::BadInput, "antiderivative exponents must be nonnegative");
    std::vector<LogTerm> terms;
    double factor = 1.0 / (p + 1);  // r = 0: m!/(m-0)! (p+1)^-1
    for (int r = 0; r <= m; ++r) {
        terms.push_back(LogTerm{p + 1, m - r, factor});
        factor *= -static_cast<double>(m - r) / (p + 1);
    }
    return LogPoly(std::move(terms));
}

LogPoly integrate_segment(const BivariatePoly& kernel, const LogPoly& x, double alpha_lo,
                          double alpha_hi) {
    if (!(0.0 <= alpha_lo && alpha_lo < alpha_hi && alpha_hi <= 1.0))
        fail(ErrorCode::BadInput, "segment bounds must satisfy 0 <= lo < hi <= 1");
    LogPoly result;
    for (const BiTerm& kt : kernel.terms()) {
        for (const LogTerm& xt : x.terms()) {
            // integral of s^(sp + p) ln(s)^m ds, then endpoints s = alpha*t.
            const LogPoly prim = antiderivative_power_log(kt.sp + xt.p, xt.m);
            LogPoly ends = prim.scaled_argument(alpha_hi);
            if (alpha_lo > 0.0) ends -= prim.scaled_argument(alpha_lo);
            const double c = kt.c * xt.c;
            // times c * t^tp
            std::vector<LogTerm> shifted;
            shifted.reserve(ends.terms().size());
            for (const LogTerm& term : ends.terms())
                shifted.push_back(LogTerm{term.p + kt.tp, term.m, term.c * c});
            result += LogPoly(std::move(shifted));
        }
    }
    return result;
}

}  // namespace volterra
