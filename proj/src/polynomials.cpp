#include "volterra/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "volterra/errors.hpp"

namespace volterra {

UniPoly::UniPoly(Eigen::VectorXd coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly::UniPoly(std::initializer_list<double> coeffs) {
    coeffs_.resize(static_cast<Eigen::Index>(coeffs.size()));
    Eigen::Index k = 0;
    for (double c : coeffs) coeffs_[k++] = c;
    trim();
}

void UniPoly::trim() {
    Eigen::Index n = coeffs_.size();
    while (n > 0 && coeffs_[n - 1] == 0.0) --n;
    coeffs_.conservativeResize(n);
}

double UniPoly::coeff(int k) const {
    if (k < 0 || k >= coeffs_.size()) return 0.0;
    return coeffs_[k];
}

double UniPoly::max_abs_coeff() const {
    return coeffs_.size() == 0 ? 0.0 : coeffs_.cwiseAbs().maxCoeff();
}

double UniPoly::eval(double t) const {
    double acc = 0.0;
    for (Eigen::Index k = coeffs_.size() - 1; k >= 0; --k) acc = acc * t + coeffs_[k];
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (coeffs_.size() <= 1) return UniPoly{};
    Eigen::VectorXd d(coeffs_.size() - 1);
    for (Eigen::Index k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return UniPoly(std::move(d));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(std::max(a.coeffs_.size(), b.coeffs_.size()));
    c.head(a.coeffs_.size()) += a.coeffs_;
    c.head(b.coeffs_.size()) += b.coeffs_;
    return UniPoly(std::move(c));
}

UniPoly operator*(double s, const UniPoly& a) { return UniPoly(Eigen::VectorXd(s * a.coeffs_)); }

BivariatePoly::BivariatePoly(std::initializer_list<BiTerm> terms) : terms_(terms) { normalize(); }

BivariatePoly::BivariatePoly(std::vector<BiTerm> terms) : terms_(std::move(terms)) { normalize(); }

BivariatePoly BivariatePoly::constant(double c) { return BivariatePoly({BiTerm{0, 0, c}}); }

void BivariatePoly::normalize() {
    for (const BiTerm& term : terms_) {
        if (term.tp < 0 || term.sp < 0)
            fail(ErrorCode::BadInput, "kernel exponents must be nonnegative");
        if (term.tp + term.sp > kTotalDegreeCap)
            fail(ErrorCode::DegreeCapExceeded, "kernel total degree exceeds cap");
    }
    std::sort(terms_.begin(), terms_.end(), [](const BiTerm& a, const BiTerm& b) {
        return a.tp != b.tp ? a.tp < b.tp : a.sp < b.sp;
    });
    std::vector<BiTerm> merged;
    for (const BiTerm& term : terms_) {
        if (!merged.empty() && merged.back().tp == term.tp && merged.back().sp == term.sp) {
            merged.back().c += term.c;
        } else {
            merged.push_back(term);
        }
    }
    std::erase_if(merged, [](const BiTerm& t) { return t.c == 0.0; });
    terms_ = std::move(merged);
}

int BivariatePoly::total_degree() const {
    int d = 0;
    for (const BiTerm& term : terms_) d = std::max(d, term.tp + term.sp);
    return d;
}

double BivariatePoly::eval(double t, double s) const {
    double acc = 0.0;
    for (const BiTerm& term : terms_) acc += term.c * std::pow(t, term.tp) * std::pow(s, term.sp);
    return acc;
}

double BivariatePoly::value_at_origin() const {
    for (const BiTerm& term : terms_)
        if (term.tp == 0 && term.sp == 0) return term.c;
    return 0.0;
}

BivariatePoly BivariatePoly::partial_t() const {
    std::vector<BiTerm> d;
    for (const BiTerm& term : terms_)
        if (term.tp >= 1) d.push_back(BiTerm{term.tp - 1, term.sp, term.c * term.tp});
    return BivariatePoly(std::move(d));
}

UniPoly BivariatePoly::ray(double alpha) const {
    if (terms_.empty()) return UniPoly{};
    Eigen::VectorXd c = Eigen::VectorXd::Zero(total_degree() + 1);
    for (const BiTerm& term : terms_) c[term.tp + term.sp] += term.c * std::pow(alpha, term.sp);
    return UniPoly(std::move(c));
}

std::vector<UniPoly> BivariatePoly::by_s_power() const {
    int max_sp = 0;
    int max_tp = 0;
    for (const BiTerm& term : terms_) {
        max_sp = std::max(max_sp, term.sp);
        max_tp = std::max(max_tp, term.tp);
    }
    std::vector<Eigen::VectorXd> rows(max_sp + 1, Eigen::VectorXd::Zero(max_tp + 1));
    for (const BiTerm& term : terms_) rows[term.sp][term.tp] += term.c;
    std::vector<UniPoly> out;
    out.reserve(rows.size());
    for (Eigen::VectorXd& row : rows) out.emplace_back(std::move(row));
    return out;
}

std::string BivariatePoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const BiTerm& term : terms_) {
        if (!first) os << " + ";
        first = false;
        os << term.c;
        if (term.tp > 0) os << " * t^" << term.tp;
        if (term.sp > 0) os << " * s^" << term.sp;
    }
    return os.str();
}

}  // namespace volterra
