#ifndef VOLTERRA_ASYMPTOTIC_HPP
#define VOLTERRA_ASYMPTOTIC_HPP

#include <Eigen/Core>

#include <vector>

#include "volterra/charteq.hpp"
#include "volterra/logpoly.hpp"
#include "volterra/problem.hpp"

namespace volterra {

// One arbitrary constant of the solution family: the coefficient of
// z^index in x_j(z) at a characteristic root j, index in 0..r_j-1.
struct FreeSlot {
    int j = 0;
    int index = 0;
};

// The truncated expansion x^N(t) = sum_{j=0..N} x_j(ln t) t^j.
struct AsymptoticSolution {
    int N = 0;
    std::vector<ZPoly> coeffs;       // x_0 .. x_N as polynomials in z = ln t
    std::vector<FreeSlot> free_slots;
    std::vector<double> assigned;    // values bound to free_slots, same order

    LogPoly as_logpoly() const;
    double eval(double t) const { return as_logpoly().eval(t); }
};

// Left-hand side of the differentiated equation applied to a log-power
// polynomial y (the equation equivalent to the original one once f(0) = 0):
//   sum_i [alpha_i K_i(t, alpha_i t) y(alpha_i t)
//          - alpha_{i-1} K_i(t, alpha_{i-1} t) y(alpha_{i-1} t)]
//   + sum_i integral_{alpha_{i-1} t}^{alpha_i t} dK_i/dt (t, s) y(s) ds.
LogPoly differentiated_lhs(const ValidatedProblem& vp, const LogPoly& y);

// Right-hand side M_j(z) of the j-th difference equation: substitute the
// partial sum built from prior = x_0..x_{j-1} into the differentiated
// equation, subtract from f'(t) and take the z-polynomial multiplying t^j.
ZPoly build_Mj(const ValidatedProblem& vp, const std::vector<ZPoly>& prior, int j);

// Matrix of the difference operator
//   D_j[x](z) = K_n(0,0) x(z) + sum_{i=1..n-1} beta_i x(z + a_i),
//   beta_i = alpha_i^(1+j) (K_i(0,0) - K_{i+1}(0,0)),
// in the monomial basis 1, z, ..., z^deg. Upper triangular; every diagonal
// entry equals L(j).
Eigen::MatrixXd difference_operator(const ValidatedProblem& vp, int j, int deg);

// Solves D_j[x_j] = M_j by undetermined coefficients from the top power
// down. r_j is the root multiplicity (0 when L(j) != 0); the coefficients of
// z^0..z^(r_j - 1) are taken from `free` since those monomials solve the
// homogeneous equation. The back-substitution residual is checked against
// the full operator matrix (InconsistentSystem on failure).
ZPoly solve_coeff(const ValidatedProblem& vp, int j, const ZPoly& Mj, int r_j,
                  const std::vector<double>& free);

// Runs j = 0..N, threading `constants` into root slots in ascending (j, i)
// order. Constants default to zero when omitted.
AsymptoticSolution build_asymptotic(const ValidatedProblem& vp, const CharacteristicReport& report,
                                    int N, std::vector<double> constants = {});

}  // namespace volterra

#endif  // VOLTERRA_ASYMPTOTIC_HPP
