#ifndef VOLTERRA_POLYNOMIALS_HPP
#define VOLTERRA_POLYNOMIALS_HPP

#include <Eigen/Core>

#include <initializer_list>
#include <string>
#include <vector>

namespace volterra {

// Dense univariate polynomial in t. coeffs()[k] multiplies t^k; trailing
// zeros are trimmed, so the zero polynomial has an empty coefficient vector.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(Eigen::VectorXd coeffs);
    UniPoly(std::initializer_list<double> coeffs);

    const Eigen::VectorXd& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.size() == 0; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    double coeff(int k) const;
    double max_abs_coeff() const;

    double eval(double t) const;
    UniPoly derivative() const;

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(double s, const UniPoly& a);
    bool operator==(const UniPoly&) const = default;

private:
    void trim();
    Eigen::VectorXd coeffs_;  // empty == zero polynomial
};

// One monomial c * t^tp * s^sp of a kernel polynomial.
struct BiTerm {
    int tp = 0;
    int sp = 0;
    double c = 0.0;
};

// Sparse bivariate polynomial in (t, s). Terms are kept sorted by (tp, sp)
// with like terms merged and zero coefficients dropped.
class BivariatePoly {
public:
    static constexpr int kTotalDegreeCap = 16;

    BivariatePoly() = default;
    BivariatePoly(std::initializer_list<BiTerm> terms);
    explicit BivariatePoly(std::vector<BiTerm> terms);
    static BivariatePoly constant(double c);

    const std::vector<BiTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int total_degree() const;

    double eval(double t, double s) const;
    double value_at_origin() const;  // K(0,0)

    // Exact partial derivative with respect to t.
    BivariatePoly partial_t() const;

    // Restriction to a ray through the origin: t -> K(t, alpha*t).
    UniPoly ray(double alpha) const;
    // Restriction to the diagonal: t -> K(t, t).
    UniPoly diagonal() const { return ray(1.0); }

    // Coefficients of K(t, s) grouped by powers of s: returns c[q] = the
    // univariate polynomial in t multiplying s^q.
    std::vector<UniPoly> by_s_power() const;

    std::string to_string() const;

private:
    void normalize();
    std::vector<BiTerm> terms_;
};

}  // namespace volterra

#endif  // VOLTERRA_POLYNOMIALS_HPP
