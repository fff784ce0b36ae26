// Command-line front end: analyze, solve, residual and manufacture
// subcommands over JSON problem files, emitting JSON reports and CSV tables.

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "volterra/asymptotic.hpp"
#include "volterra/charteq.hpp"
#include "volterra/errors.hpp"
#include "volterra/io.hpp"
#include "volterra/problem.hpp"
#include "volterra/tail.hpp"
#include "volterra/verify.hpp"

namespace {

using namespace volterra;

int exit_status_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::NoConvergence:
            return 3;
        case ErrorCode::AsymptoticInconsistent:
        case ErrorCode::InconsistentSystem:
        case ErrorCode::MultiplicityOverflow:
        case ErrorCode::DegreeCapExceeded:
        case ErrorCode::NotDifferentiableAtZero:
            return 4;
        default:
            return 2;  // validation / input errors
    }
}

struct Options {
    std::string problem_path;
    std::optional<int> N_override;
    double q_max = 0.5;
    std::optional<std::string> constants_arg;
    double h = -1.0;  // sentinel: T / 1000
    double tol = 1e-10;
    double weight_l = 1.0;
    int quad_order = 32;
    int samples = 200;
    int max_iter = 500;
    std::string out_path;
    std::string target_path;  // manufacture only
};

std::vector<double> parse_constants(const std::string& arg) {
    std::vector<double> values;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            fail(ErrorCode::BadInput, "cannot parse free constant: " + item);
        }
        if (used != item.size()) fail(ErrorCode::BadInput, "cannot parse free constant: " + item);
        values.push_back(v);
    }
    return values;
}

std::vector<double> log_spaced_samples(double T, int count) {
    if (count < 1) fail(ErrorCode::BadInput, "--samples must be at least 1");
    const double lo = 0.01 * T;
    std::vector<double> ts;
    ts.reserve(count);
    if (count == 1) {
        ts.push_back(T);
        return ts;
    }
    const double ratio = std::log(T / lo);
    for (int i = 0; i < count; ++i) ts.push_back(lo * std::exp(ratio * i / (count - 1)));
    ts.back() = T;
    return ts;
}

void emit(const Options& opt, const std::string& content) {
    if (opt.out_path.empty())
        std::cout << content;
    else
        write_text_file(opt.out_path, content);
}

struct Pipeline {
    ValidatedProblem vp;
    RegularizationParams params;
    CharacteristicReport report;
};

Pipeline analyze_pipeline(const Options& opt) {
    ValidatedProblem vp = validate(problem_from_json(load_json_file(opt.problem_path)));
    RegularizationParams params;
    if (opt.N_override) {
        const int N = *opt.N_override;
        if (N < 0) fail(ErrorCode::BadInput, "--N must be nonnegative");
        params = RegularizationParams{N, condition_a_factor(vp, N), 1001};
    } else {
        params = select_N(vp, opt.q_max);
    }
    CharacteristicReport report = analyze(vp, params);
    return Pipeline{std::move(vp), params, std::move(report)};
}

Solution solve_pipeline(const Options& opt, const Pipeline& pl) {
    std::vector<double> constants;
    if (opt.constants_arg) {
        constants = parse_constants(*opt.constants_arg);
    }
    if ((opt.constants_arg || pl.report.free_constant_count > 0) &&
        static_cast<int>(constants.size()) != pl.report.free_constant_count) {
        std::ostringstream os;
        os << "expected " << pl.report.free_constant_count << " free constant(s), got "
           << constants.size();
        fail(ErrorCode::BadInput, os.str());
    }
    const AsymptoticSolution xN = build_asymptotic(pl.vp, pl.report, pl.params.N, constants);
    const TailProblem tp = compute_g(pl.vp, xN);
    const double h = opt.h > 0.0 ? opt.h : pl.vp.horizon() / 1000.0;
    TailSolution tail = solve_tail(tp, h, opt.weight_l, opt.tol, opt.max_iter);
    return make_solution(xN, std::move(tail), pl.params.N);
}

int run_command(const std::string& command, const Options& opt) {
    if (command == "analyze") {
        const Pipeline pl = analyze_pipeline(opt);
        emit(opt, report_to_json(pl.report).dump() + "\n");
        return 0;
    }
    if (command == "solve") {
        const Pipeline pl = analyze_pipeline(opt);
        const Solution sol = solve_pipeline(opt, pl);
        const std::vector<double> ts = log_spaced_samples(pl.vp.horizon(), opt.samples);
        if (opt.out_path.empty()) {
            std::cout << solution_csv(sol, ts);
        } else {
            write_text_file(opt.out_path, solution_csv(sol, ts));
            nlohmann::ordered_json j = diagnostics_to_json(sol.tail);
            j["asymptotic"] = asymptotic_to_json(sol.asymptotic);
            std::cout << j.dump() << "\n";
        }
        return 0;
    }
    if (command == "residual") {
        const Pipeline pl = analyze_pipeline(opt);
        const Solution sol = solve_pipeline(opt, pl);
        const std::vector<double> ts = log_spaced_samples(pl.vp.horizon(), opt.samples);
        const ResidualReport report = residual(pl.vp, sol, ts, opt.quad_order);
        emit(opt, residual_csv(report));
        return 0;
    }
    if (command == "manufacture") {
        const nlohmann::json j = load_json_file(opt.target_path);
        if (!j.is_object() || !j.contains("x_target"))
            fail(ErrorCode::BadInput, "manufacture spec needs an \"x_target\" term list");
        for (const char* key : {"alphas", "kernels", "T"})
            if (!j.contains(key))
                fail(ErrorCode::BadInput, std::string("manufacture spec missing \"") + key + "\"");
        nlohmann::json pj = j;
        pj["f"] = nlohmann::json::array({0.0});
        pj.erase("x_target");
        const Problem shell = problem_from_json(pj);
        const LogPoly x_target = logpoly_from_json(j["x_target"]);
        const auto [problem, target] = make_manufactured(shell.kernels, shell.breakpoints,
                                                         x_target, shell.horizon);
        validate(problem);
        emit(opt, problem_to_json(problem).dump() + "\n");
        return 0;
    }
    fail(ErrorCode::BadInput, "unknown command: " + command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver for first-kind Volterra equations with piecewise kernels on sectors"};
    app.set_help_flag("--help", "print help");  // keep -h free for the step option
    app.require_subcommand(1);

    Options opt;
    std::string constants_raw;
    bool constants_given = false;
    int N_value = 0;

    const auto add_common = [&](CLI::App* cmd, bool needs_problem) {
        cmd->set_help_flag("--help", "print help");
        if (needs_problem)
            cmd->add_option("--problem", opt.problem_path, "problem JSON file")->required();
        cmd->add_option("--N", N_value, "override the regularization order N");
        cmd->add_option("--qmax", opt.q_max, "target contraction factor for selecting N");
        cmd->add_option("--out", opt.out_path, "output file (stdout when omitted)");
    };

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "characteristic report as JSON");
    add_common(analyze_cmd, true);

    const auto add_solver_options = [&](CLI::App* cmd) {
        add_common(cmd, true);
        cmd->add_option("--constants", constants_raw,
                        "comma-separated free constants (one per root multiplicity)")
            ->trigger_on_parse()
            ->each([&](const std::string&) { constants_given = true; });
        cmd->add_option("--h", opt.h, "tail grid step (default T/1000)");
        cmd->add_option("--tol", opt.tol, "tail convergence tolerance");
        cmd->add_option("--l", opt.weight_l, "initial weight of the convergence norm");
        cmd->add_option("--max-iter", opt.max_iter, "tail iteration cap");
        cmd->add_option("--quad-order", opt.quad_order, "Gauss-Legendre order for residuals");
        cmd->add_option("--samples", opt.samples, "number of log-spaced output samples");
    };

    CLI::App* solve_cmd = app.add_subcommand("solve", "solution CSV plus diagnostics JSON");
    add_solver_options(solve_cmd);
    CLI::App* residual_cmd = app.add_subcommand("residual", "residual CSV for the solved problem");
    add_solver_options(residual_cmd);

    CLI::App* man_cmd =
        app.add_subcommand("manufacture", "build a problem JSON from an x_target spec");
    man_cmd->set_help_flag("--help", "print help");
    man_cmd->add_option("--target", opt.target_path, "manufacture spec JSON file")->required();
    man_cmd->add_option("--out", opt.out_path, "output file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error[BadInput] " << e.what() << "\n";
        return 2;
    }

    if (constants_given) opt.constants_arg = constants_raw;
    CLI::App* active = app.get_subcommands().front();
    const CLI::Option* n_opt = active->get_option_no_throw("--N");
    if (n_opt && n_opt->count()) opt.N_override = N_value;

    try {
        return run_command(active->get_name(), opt);
    } catch (const volterra::Error& e) {
        std::cerr << "error[" << volterra::error_code_name(e.code()) << "] " << e.message()
                  << "\n";
        return exit_status_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error[Internal] " << e.what() << "\n";
        return 4;
    }
}
