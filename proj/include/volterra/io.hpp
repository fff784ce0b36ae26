#ifndef VOLTERRA_IO_HPP
#define VOLTERRA_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "volterra/charteq.hpp"
#include "volterra/logpoly.hpp"
#include "volterra/problem.hpp"
#include "volterra/tail.hpp"
#include "volterra/verify.hpp"

namespace volterra {

// Problem schema:
//   {"alphas":[0.5], "kernels":[[[0,0,1.0]],[[0,0,-1.0]]], "f":[0.0,1.0], "T":1.0}
// Kernels are lists of [p, q, c] triples (t-power, s-power, coefficient);
// f is the dense coefficient list from the constant term upward.
Problem problem_from_json(const nlohmann::json& j);
nlohmann::ordered_json problem_to_json(const Problem& p);

// Log-power polynomial as a list of [p, m, c] triples.
LogPoly logpoly_from_json(const nlohmann::json& j);

nlohmann::ordered_json report_to_json(const CharacteristicReport& report);
nlohmann::ordered_json diagnostics_to_json(const TailSolution& tail);

// "x_j(z) = c0 + c1 z + ..." rendering of one asymptotic coefficient.
std::string zpoly_to_string(const ZPoly& x, int j);
// Structured form: coefficients by (j, z-power), free slots, plus the
// rendered strings.
nlohmann::ordered_json asymptotic_to_json(const AsymptoticSolution& sol);

// 17-significant-digit rendering used by every CSV column.
std::string format_double(double v);

std::string solution_csv(const Solution& sol, const std::vector<double>& ts);
std::string residual_csv(const ResidualReport& report);

nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace volterra

#endif  // VOLTERRA_IO_HPP
