#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "picard/engine.hpp"

namespace picard {

struct GridError : Error {
    using Error::Error;
};

/// One sampled cell of the error surface. rel_valid is false where the exact
/// solution is numerically zero and the relative error is meaningless.
struct ErrorCell {
    double t = 0.0;
    double x = 0.0;
    double approx = 0.0;
    double exact = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    bool rel_valid = false;
};

struct ErrorGrid {
    int n_t = 0;
    int n_x = 0;
    std::vector<ErrorCell> cells;  // row-major, t outer
    double max_abs = 0.0;
    double mean_abs = 0.0;
    double max_rel = 0.0;
    double argmax_t = 0.0;  // location of max_abs
    double argmax_x = 0.0;
};

constexpr double kRelErrFloor = 1e-12;

/// Uniform n-by-n sampling of the closed domain: the series through
/// eval_point in local coordinates, the exact expression numerically.
inline ErrorGrid error_grid(const Series2& s, const Expr& exact, const Domain& dom, int n,
                            const EvalContext& ctx) {
    if (n < 2) throw GridError("error grid needs at least 2 points per axis");
    ErrorGrid g;
    g.n_t = g.n_x = n;
    g.cells.reserve(static_cast<size_t>(n) * n);
    double abs_sum = 0.0;
    const std::map<std::string, double> no_state;
    for (int i = 0; i < n; ++i) {
        const double t = dom.t.lo + dom.t.length() * i / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double x = dom.x.lo + dom.x.length() * j / (n - 1);
            ErrorCell cell;
            cell.t = t;
            cell.x = x;
            cell.approx = eval_point(s, t - ctx.origin_t, x - ctx.origin_x);
            try {
                cell.exact = eval_numeric(exact, t, x, no_state, ctx);
            } catch (const Error& e) {
                throw GridError("exact solution failed at (t, x) = (" + format_double(t) + ", " +
                                format_double(x) + "): " + e.what());
            }
            cell.abs_err = std::abs(cell.approx - cell.exact);
            cell.rel_valid = std::abs(cell.exact) >= kRelErrFloor;
            if (cell.rel_valid) cell.rel_err = cell.abs_err / std::abs(cell.exact);
            abs_sum += cell.abs_err;
            if (cell.abs_err > g.max_abs) {
                g.max_abs = cell.abs_err;
                g.argmax_t = t;
                g.argmax_x = x;
            }
            if (cell.rel_valid) g.max_rel = std::max(g.max_rel, cell.rel_err);
            g.cells.push_back(cell);
        }
    }
    g.mean_abs = abs_sum / static_cast<double>(g.cells.size());
    return g;
}

struct ConvergenceRow {
    int iteration = 0;
    double max_abs = 0.0;
    double residual_norm = 0.0;  // largest correction residual of that sweep
};

/// Per-sweep error surface summary for the named variable (defaults to the
/// first declared one, the variable the exact solution describes).
inline std::vector<ConvergenceRow> convergence_table(const RunReport& report, const Expr& exact,
                                                     const ProblemSpec& p, int n,
                                                     const std::string& var = "") {
    if (report.iterations.empty()) throw GridError("convergence table needs at least one iteration");
    const std::string name = var.empty() ? p.vars.front().name : var;
    const EvalContext ctx = p.eval_context();
    std::vector<ConvergenceRow> rows;
    int k = 0;
    for (const auto& rec : report.iterations) {
        ++k;
        ConvergenceRow row;
        row.iteration = k;
        row.max_abs = error_grid(rec.state.at(name), exact, p.domain, n, ctx).max_abs;
        for (double r : rec.residual_norms) row.residual_norm = std::max(row.residual_norm, r);
        rows.push_back(row);
    }
    return rows;
}

/// CSV error surface: header t,x,approx,exact,abs_err,rel_err; row-major over
/// t then x; 17 significant digits; rel_err empty where the exact solution
/// vanishes. Deterministic: equal grids produce identical bytes.
inline void write_csv(std::ostream& out, const ErrorGrid& g) {
    out << "t,x,approx,exact,abs_err,rel_err\n";
    for (const auto& cell : g.cells) {
        out << format_double_sig(cell.t, 17) << ',' << format_double_sig(cell.x, 17) << ','
            << format_double_sig(cell.approx, 17) << ',' << format_double_sig(cell.exact, 17) << ','
            << format_double_sig(cell.abs_err, 17) << ',';
        if (cell.rel_valid) out << format_double_sig(cell.rel_err, 17);
        out << '\n';
    }
}

}  // namespace picard
