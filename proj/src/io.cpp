#include "volterra/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "volterra/errors.hpp"

namespace volterra {

namespace {

double as_number(const nlohmann::json& j, const char* what) {
    if (!j.is_number()) fail(ErrorCode::BadInput, std::string(what) + " must be a number");
    return j.get<double>();
}

int as_exponent(const nlohmann::json& j, const char* what) {
    if (!j.is_number_integer() || j.get<int>() < 0)
        fail(ErrorCode::BadInput, std::string(what) + " must be a nonnegative integer");
    return j.get<int>();
}

}  // namespace

Problem problem_from_json(const nlohmann::json& j) {
    if (!j.is_object()) fail(ErrorCode::BadInput, "problem JSON must be an object");
    for (const char* key : {"alphas", "kernels", "f", "T"})
        if (!j.contains(key)) fail(ErrorCode::BadInput, std::string("problem JSON missing \"") + key + "\"");

    Problem p;
    if (!j["alphas"].is_array()) fail(ErrorCode::BadInput, "\"alphas\" must be an array");
    for (const auto& a : j["alphas"]) p.breakpoints.push_back(as_number(a, "breakpoint"));

    if (!j["kernels"].is_array()) fail(ErrorCode::BadInput, "\"kernels\" must be an array");
    for (const auto& kj : j["kernels"]) {
        if (!kj.is_array()) fail(ErrorCode::BadInput, "each kernel must be an array of [p,q,c] triples");
        std::vector<BiTerm> terms;
        for (const auto& term : kj) {
            if (!term.is_array() || term.size() != 3)
                fail(ErrorCode::BadInput, "kernel terms must be [p, q, c] triples");
            terms.push_back(BiTerm{as_exponent(term[0], "kernel t-exponent"),
                                   as_exponent(term[1], "kernel s-exponent"),
                                   as_number(term[2], "kernel coefficient")});
        }
        p.kernels.emplace_back(std::move(terms));
    }

    if (!j["f"].is_array()) fail(ErrorCode::BadInput, "\"f\" must be a coefficient array");
    Eigen::VectorXd coeffs(j["f"].size());
    Eigen::Index k = 0;
    for (const auto& c : j["f"]) coeffs[k++] = as_number(c, "f coefficient");
    p.rhs = UniPoly(std::move(coeffs));

    p.horizon = as_number(j["T"], "\"T\"");
    return p;
}

nlohmann::ordered_json problem_to_json(const Problem& p) {
    nlohmann::ordered_json j;
    j["alphas"] = p.breakpoints;
    nlohmann::ordered_json kernels = nlohmann::ordered_json::array();
    for (const BivariatePoly& kernel : p.kernels) {
        nlohmann::ordered_json terms = nlohmann::ordered_json::array();
        for (const BiTerm& term : kernel.terms())
            terms.push_back({term.tp, term.sp, term.c});
        kernels.push_back(std::move(terms));
    }
    j["kernels"] = std::move(kernels);
    std::vector<double> f(p.rhs.degree() + 1, 0.0);
    for (int k = 0; k <= p.rhs.degree(); ++k) f[k] = p.rhs.coeff(k);
    if (f.empty()) f.push_back(0.0);
    j["f"] = std::move(f);
    j["T"] = p.horizon;
    return j;
}

LogPoly logpoly_from_json(const nlohmann::json& j) {
    if (!j.is_array()) fail(ErrorCode::BadInput, "log-power polynomial must be an array of [p,m,c]");
    std::vector<LogTerm> terms;
    for (const auto& term : j) {
        if (!term.is_array() || term.size() != 3)
            fail(ErrorCode::BadInput, "log-power terms must be [p, m, c] triples");
        terms.push_back(LogTerm{as_exponent(term[0], "t-exponent"), as_exponent(term[1], "ln-exponent"),
                                as_number(term[2], "coefficient")});
    }
    return LogPoly(std::move(terms));
}

nlohmann::ordered_json report_to_json(const CharacteristicReport& report) {
    nlohmann::ordered_json j;
    j["roots"] = report.roots;
    nlohmann::ordered_json mult = nlohmann::ordered_json::object();
    for (const auto& [root, r] : report.multiplicities) mult[std::to_string(root)] = r;
    j["multiplicities"] = std::move(mult);
    j["p"] = report.free_constant_count;
    j["regular"] = report.regular();
    j["L"] = report.L_values;
    if (!report.warnings.empty()) j["warnings"] = report.warnings;
    return j;
}

nlohmann::ordered_json diagnostics_to_json(const TailSolution& tail) {
    nlohmann::ordered_json j;
    j["iterations"] = tail.iterations;
    j["contraction"] = tail.contraction_estimate;
    j["l"] = tail.weight_l;
    j["converged"] = tail.converged;
    j["max_u"] = tail.max_abs();
    return j;
}

std::string zpoly_to_string(const ZPoly& x, int j) {
    std::ostringstream os;
    os << "x_" << j << "(z) = ";
    if (x.is_zero()) {
        os << "0";
        return os.str();
    }
    bool first = true;
    for (int k = 0; k <= x.degree(); ++k) {
        if (x.coeff(k) == 0.0) continue;
        if (!first) os << " + ";
        first = false;
        os << format_double(x.coeff(k));
        if (k == 1) os << " z";
        if (k > 1) os << " z^" << k;
    }
    return os.str();
}

nlohmann::ordered_json asymptotic_to_json(const AsymptoticSolution& sol) {
    nlohmann::ordered_json j;
    j["N"] = sol.N;
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    nlohmann::ordered_json rendered = nlohmann::ordered_json::array();
    for (int jj = 0; jj < static_cast<int>(sol.coeffs.size()); ++jj) {
        nlohmann::ordered_json entry;
        entry["j"] = jj;
        std::vector<double> z(sol.coeffs[jj].degree() + 1, 0.0);
        for (int k = 0; k <= sol.coeffs[jj].degree(); ++k) z[k] = sol.coeffs[jj].coeff(k);
        entry["z"] = std::move(z);
        coeffs.push_back(std::move(entry));
        rendered.push_back(zpoly_to_string(sol.coeffs[jj], jj));
    }
    j["coefficients"] = std::move(coeffs);
    j["rendered"] = std::move(rendered);
    nlohmann::ordered_json slots = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < sol.free_slots.size(); ++s)
        slots.push_back({{"j", sol.free_slots[s].j},
                         {"i", sol.free_slots[s].index},
                         {"value", s < sol.assigned.size() ? sol.assigned[s] : 0.0}});
    j["free_constants"] = std::move(slots);
    return j;
}

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string solution_csv(const Solution& sol, const std::vector<double>& ts) {
    std::ostringstream os;
    os << "t,x,xN,u\n";
    for (double t : ts) {
        const double xN = sol.asymptotic_logpoly.eval(t);
        const double u = interp_grid(sol.tail.values, sol.tail.step(), t);
        const double x = xN + std::pow(t, sol.N) * u;
        os << format_double(t) << ',' << format_double(x) << ',' << format_double(xN) << ','
           << format_double(u) << '\n';
    }
    return os.str();
}

std::string residual_csv(const ResidualReport& report) {
    std::ostringstream os;
    os << "t,residual\n";
    for (const auto& [t, r] : report.samples)
        os << format_double(t) << ',' << format_double(r) << '\n';
    return os.str();
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::BadInput, "cannot open file: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) fail(ErrorCode::BadInput, "invalid JSON in file: " + path);
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::BadInput, "cannot open file for writing: " + path);
    out << content;
}

}  // namespace volterra
