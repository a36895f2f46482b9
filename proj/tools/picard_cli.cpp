#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "picard/grid.hpp"
#include "picard/suite.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolveFailed = 2;
constexpr int kExitSuiteFailed = 3;

struct SolveOptions {
    std::string source;
    int iterations = -1;
    int degree_t = -1;
    int degree_x = -1;
    int grid_n = 50;
    std::string out_path;
    bool csv = false;
};

picard::ProblemSpec load_spec(const std::string& source) {
    if (source.rfind("builtin:", 0) == 0) return picard::load_builtin(source.substr(8)).spec;
    std::ifstream in(source);
    if (!in) throw picard::SpecError("cannot open problem file '" + source + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return picard::parse_problem(buf.str());
}

std::string gamma_to_text(const picard::Series1& g) {
    std::ostringstream os;
    os << "[";
    const int shown = std::min(g.deg, 3);
    for (int k = 0; k <= shown; ++k) {
        if (k) os << ", ";
        os << picard::format_double_sig(g.c[static_cast<size_t>(k)], 6);
    }
    if (g.deg > shown) os << ", ...";
    os << "]";
    return os.str();
}

int run_solve(const SolveOptions& opt) {
    picard::ProblemSpec spec;
    try {
        spec = load_spec(opt.source);
    } catch (const picard::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (opt.iterations > 0) spec.iterations = opt.iterations;
    if (opt.degree_t > 0) spec.deg_t = opt.degree_t;
    if (opt.degree_x > 0) spec.deg_x = opt.degree_x;

    try {
        const picard::RunReport report = picard::run(spec);
        const picard::EvalContext ctx = spec.eval_context();
        const std::string& var = spec.vars.front().name;

        std::ostringstream body;
        if (opt.csv) {
            if (!spec.exact) {
                std::cerr << "error: '" << spec.name << "' has no exact solution; no CSV grid\n";
                return kExitSolveFailed;
            }
            const picard::ErrorGrid grid = picard::error_grid(
                report.final_state.at(var), *spec.exact, spec.domain, opt.grid_n, ctx);
            picard::write_csv(body, grid);
        } else {
            body << "problem " << spec.name << "  (evolve " << picard::axis_name(spec.evolution)
                 << ", degrees " << spec.deg_t << "/" << spec.deg_x << ", " << spec.iterations
                 << " sweeps)\n";
            int k = 0;
            for (const auto& rec : report.iterations) {
                ++k;
                body << "  sweep " << k << ": residual";
                if (rec.residual_norms.empty()) body << " -";
                for (double r : rec.residual_norms) body << " " << picard::format_double_sig(r, 6);
                if (rec.gamma) body << "  slope " << gamma_to_text(*rec.gamma);
                body << "\n";
            }
            body << "  truncation drops: " << report.truncation_drops_total << "\n";
            if (spec.exact) {
                const auto rows =
                    picard::convergence_table(report, *spec.exact, spec, opt.grid_n, var);
                body << "  error surface (" << opt.grid_n << "x" << opt.grid_n << "):\n";
                for (const auto& row : rows)
                    body << "    sweep " << row.iteration << ": max_abs "
                         << picard::format_double_sig(row.max_abs, 6) << "\n";
                const picard::ErrorGrid grid = picard::error_grid(
                    report.final_state.at(var), *spec.exact, spec.domain, opt.grid_n, ctx);
                body << "  final: max_abs " << picard::format_double_sig(grid.max_abs, 6)
                     << " at (t, x) = (" << picard::format_double_sig(grid.argmax_t, 6) << ", "
                     << picard::format_double_sig(grid.argmax_x, 6) << "), mean_abs "
                     << picard::format_double_sig(grid.mean_abs, 6) << ", max_rel "
                     << picard::format_double_sig(grid.max_rel, 6) << "\n";
            } else {
                body << "  (no exact solution given; skipping error surface)\n";
            }
        }

        if (!opt.out_path.empty()) {
            std::ofstream out(opt.out_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot write '" << opt.out_path << "'\n";
                return kExitSolveFailed;
            }
            out << body.str();
        } else {
            std::cout << body.str();
        }
        return kExitOk;
    } catch (const picard::Error& e) {
        std::cerr << "solve failed: " << e.what() << "\n";
        return kExitSolveFailed;
    }
}

int run_suite(const std::string& out_dir) {
    bool all_pass = true;
    std::cout << std::left << std::setw(18) << "key" << std::setw(8) << "sweeps" << std::setw(14)
              << "max_abs" << std::setw(12) << "paper" << "result\n";
    for (const std::string& key : picard::builtin_keys()) {
        picard::SuiteOutcome outcome;
        try {
            outcome = picard::run_suite_entry(key);
        } catch (const std::exception& e) {
            std::cout << std::left << std::setw(18) << key << "error: " << e.what() << "\n";
            all_pass = false;
            continue;
        }
        std::cout << std::left << std::setw(18) << outcome.key << std::setw(8) << outcome.sweeps;
        if (outcome.ran)
            std::cout << std::setw(14) << picard::format_double_sig(outcome.max_abs, 5);
        else
            std::cout << std::setw(14) << "-";
        std::cout << std::setw(12)
                  << (outcome.reference_error ? picard::format_double(*outcome.reference_error)
                                              : "-");
        std::cout << (outcome.pass ? "pass" : "FAIL");
        if (!outcome.pass && !outcome.note.empty()) std::cout << "  (" << outcome.note << ")";
        std::cout << "\n";
        if (!outcome.pass) all_pass = false;

        if (!out_dir.empty() && outcome.ran && outcome.spec.exact) {
            std::filesystem::create_directories(out_dir);
            const picard::EvalContext ctx = outcome.spec.eval_context();
            const std::string& var = outcome.spec.vars.front().name;
            const picard::ErrorGrid grid =
                picard::error_grid(outcome.report.final_state.at(var), *outcome.spec.exact,
                                   outcome.spec.domain, 50, ctx);
            std::ofstream out(std::filesystem::path(out_dir) / (key + ".csv"), std::ios::binary);
            picard::write_csv(out, grid);
        }
    }
    return all_pass ? kExitOk : kExitSuiteFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Truncated power-series Picard solver for PDE boundary value problems"};
    app.require_subcommand(1);

    SolveOptions solve_opt;
    CLI::App* solve = app.add_subcommand("solve", "solve a problem file or builtin:<key>");
    solve->add_option("source", solve_opt.source, "problem file path or builtin:<key>")->required();
    solve->add_option("--iterations", solve_opt.iterations, "override sweep count");
    solve->add_option("--degree-t", solve_opt.degree_t, "override t truncation order");
    solve->add_option("--degree-x", solve_opt.degree_x, "override x truncation order");
    solve->add_option("--grid", solve_opt.grid_n, "error grid points per axis (default 50)");
    solve->add_option("--out", solve_opt.out_path, "write output to a file");
    solve->add_flag("--csv", solve_opt.csv, "emit the error surface as CSV");

    std::string suite_out;
    CLI::App* suite = app.add_subcommand("suite", "run every builtin and print a results table");
    suite->add_option("--out", suite_out, "directory for per-problem CSV error surfaces");

    CLI::App* list = app.add_subcommand("list", "print builtin problem keys");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (solve->parsed()) return run_solve(solve_opt);
    if (suite->parsed()) return run_suite(suite_out);
    if (list->parsed()) {
        for (const std::string& key : picard::builtin_keys()) std::cout << key << "\n";
        return kExitOk;
    }
    return kExitUsage;
}
