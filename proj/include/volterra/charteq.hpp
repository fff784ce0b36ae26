#ifndef VOLTERRA_CHARTEQ_HPP
#define VOLTERRA_CHARTEQ_HPP

#include <map>
#include <string>
#include <vector>

#include "volterra/problem.hpp"

namespace volterra {

// Relative tolerance deciding "L(j) = 0"; scaled by sum_i |K_i(0,0)|.
inline constexpr double kRootTol = 1e-10;

struct CharacteristicReport {
    int N = 0;
    std::vector<double> L_values;          // L(0) .. L(N)
    std::vector<int> roots;                // natural j with L(j) ~ 0, ascending
    std::map<int, int> multiplicities;     // j -> r_j
    int free_constant_count = 0;           // p = sum of multiplicities
    std::vector<double> log_breakpoints;   // a_i = ln alpha_i, i = 1..n-1
    std::vector<std::string> warnings;     // near-zero non-roots etc.

    bool regular() const { return roots.empty(); }
    int multiplicity_of(int j) const {
        auto it = multiplicities.find(j);
        return it == multiplicities.end() ? 0 : it->second;
    }
};

// L(j) = sum_{i=1..n} K_i(0,0) (alpha_i^(1+j) - alpha_{i-1}^(1+j)).
double eval_L(const ValidatedProblem& vp, int j);

// All j in 0..N with |L(j)| <= root_tol * sum_i |K_i(0,0)|, ascending.
std::vector<int> natural_roots(const ValidatedProblem& vp, int N, double root_tol = kRootTol);

// Smallest l >= 1 with S_l := sum_{i=1..n-1} alpha_i^(1+j) (K_i(0,0) -
// K_{i+1}(0,0)) ln(alpha_i)^l nonzero beyond tolerance. Bounded by n-1;
// exceeding that contradicts the diagonal condition (MultiplicityOverflow).
int multiplicity(const ValidatedProblem& vp, int j, double tol = kRootTol);

// Aggregated characteristic data for j = 0..params.N.
CharacteristicReport analyze(const ValidatedProblem& vp, const RegularizationParams& params);

}  // namespace volterra

#endif  // VOLTERRA_CHARTEQ_HPP
