#ifndef VOLTERRA_LOGPOLY_HPP
#define VOLTERRA_LOGPOLY_HPP

#include <Eigen/Core>

#include <initializer_list>
#include <string>
#include <vector>

#include "volterra/polynomials.hpp"

namespace volterra {

class LogPoly;

// Polynomial in z = ln t. coeffs()[k] multiplies z^k; trailing zeros trimmed.
class ZPoly {
public:
    static constexpr int kDegreeCap = 256;

    ZPoly() = default;
    explicit ZPoly(Eigen::VectorXd coeffs);
    ZPoly(std::initializer_list<double> coeffs);
    static ZPoly constant(double c);

    const Eigen::VectorXd& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.size() == 0; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 when zero
    double coeff(int k) const;
    double max_abs_coeff() const;

    double eval(double z) const;

    // The log-power polynomial sum_k coeffs[k] * t^p * ln(t)^k.
    LogPoly times_t_power(int p) const;

    bool operator==(const ZPoly&) const = default;

private:
    void trim();
    Eigen::VectorXd coeffs_;
};

// One term c * t^p * ln(t)^m.
struct LogTerm {
    int p = 0;
    int m = 0;
    double c = 0.0;
};

// Finite sum of terms c * t^p * ln(t)^m with p, m >= 0. Closed under
// addition, multiplication, differentiation (away from p=0 log terms) and
// the sector integrals used throughout: the exact algebra housing the
// asymptotic coefficients and every intermediate integral.
//
// Terms are kept sorted by (p, m), like terms merged, exact zeros dropped.
class LogPoly {
public:
    static constexpr int kPowerCap = 256;
    static constexpr int kLogPowerCap = 64;

    LogPoly() = default;
    LogPoly(std::initializer_list<LogTerm> terms);
    explicit LogPoly(std::vector<LogTerm> terms);
    static LogPoly constant(double c);
    static LogPoly from_unipoly(const UniPoly& f);

    const std::vector<LogTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    double coeff(int p, int m) const;
    int max_power() const;
    int max_log_power() const;
    double max_abs_coeff() const;

    // Evaluation at t > 0; throws NonpositiveT otherwise.
    double eval(double t) const;

    // Term-wise d/dt; requires every p=0 term to have m=0, otherwise the
    // derivative leaves the p >= 0 algebra (NotDifferentiableAtZero).
    LogPoly derivative() const;

    // Argument scaling t -> alpha*t for alpha > 0: c t^p ln^m t becomes
    // c alpha^p t^p (ln t + ln alpha)^m, expanded binomially.
    LogPoly scaled_argument(double alpha) const;

    // The polynomial in z = ln t multiplying t^p.
    ZPoly slice(int p) const;

    // Terms rendered as "c * t^p * ln(t)^m" joined by " + ", (p, m) order.
    std::string to_string() const;

    friend LogPoly operator+(const LogPoly& a, const LogPoly& b);
    friend LogPoly operator-(const LogPoly& a, const LogPoly& b);
    friend LogPoly operator*(const LogPoly& a, const LogPoly& b);
    friend LogPoly operator*(double s, const LogPoly& a);
    LogPoly& operator+=(const LogPoly& other);
    LogPoly& operator-=(const LogPoly& other);

private:
    void normalize();
    std::vector<LogTerm> terms_;
};

// Drops every term whose coefficient is at or below rel_tol times
// max(largest coefficient magnitude, scale). Cancellations that are exact
// in theory (but inexact through ln(alpha) roundoff) are cleared here;
// anything that survives a snap is a genuine term. Pass the magnitude of
// the quantities that entered a cancellation as `scale` so that a result
// consisting of pure roundoff snaps to zero.
LogPoly snap(const LogPoly& a, double rel_tol = 1e-12, double scale = 0.0);

// F with F'(s) = s^p ln(s)^m and F(s) -> 0 as s -> +0:
//   F(s) = s^(p+1) * sum_{r=0..m} (-1)^r m!/(m-r)! (p+1)^-(r+1) ln(s)^(m-r).
LogPoly antiderivative_power_log(int p, int m);

// Exact integral over one sector segment:
//   t -> integral_{alpha_lo*t}^{alpha_hi*t} kernel(t, s) * x(s) ds
// for 0 <= alpha_lo < alpha_hi <= 1. The alpha_lo = 0 endpoint contributes
// nothing (all antiderivatives vanish at +0).
LogPoly integrate_segment(const BivariatePoly& kernel, const LogPoly& x, double alpha_lo,
                          double alpha_hi);

}  // namespace volterra

#endif  // VOLTERRA_LOGPOLY_HPP
