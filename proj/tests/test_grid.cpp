#include <cmath>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "picard/builtins.hpp"
#include "picard/grid.hpp"

using namespace picard;

TEST_CASE("the advection test has a zero error surface") {
    const BuiltinEntry entry = load_builtin("ex1");
    const RunReport report = run(entry.spec);
    const ErrorGrid g = error_grid(report.final_state.at("u"), *entry.spec.exact,
                                   entry.spec.domain, 50, entry.spec.eval_context());
    CHECK(g.max_abs <= 1e-12);
    CHECK(g.max_rel <= 1e-12);
    CHECK(g.cells.size() == 2500);
}

TEST_CASE("a polynomial series against itself has zero error") {
    EvalContext ctx;
    const Expr poly = parse_expr("1 + 2*t + 3*x + t*x", {});
    Series2 s(4, 4);
    s.at(0, 0) = 1.0;
    s.at(1, 0) = 2.0;
    s.at(0, 1) = 3.0;
    s.at(1, 1) = 1.0;
    Domain dom{{0.0, 1.0}, {0.0, 1.0}};
    const ErrorGrid g = error_grid(s, poly, dom, 21, ctx);
    CHECK(g.max_abs <= 1e-12);
}

TEST_CASE("relative error is suppressed where the exact solution vanishes") {
    EvalContext ctx;
    const Expr zero_line = parse_expr("t*x", {});
    Series2 s(2, 2);
    s.at(1, 1) = 1.0;
    s.at(0, 0) = 1e-6;  // constant offset: absolute error everywhere
    Domain dom{{0.0, 1.0}, {0.0, 1.0}};
    const ErrorGrid g = error_grid(s, zero_line, dom, 11, ctx);
    int invalid = 0;
    for (const auto& cell : g.cells) {
        if (!cell.rel_valid) {
            ++invalid;
            CHECK(std::abs(cell.exact) < 1e-12);
        }
    }
    CHECK(invalid == 21);  // the t=0 and x=0 edges
    CHECK(g.max_abs >= 1e-6);
}

TEST_CASE("grid sampling needs two points per axis and an evaluable exact") {
    EvalContext ctx;
    Series2 s(2, 2);
    Domain dom{{0.0, 1.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(error_grid(s, parse_expr("t", {}), dom, 1, ctx), GridError);
    try {
        error_grid(s, parse_expr("1/(x - 0.5)", {}), dom, 3, ctx);
        FAIL("expected a GridError");
    } catch (const GridError& e) {
        CHECK(std::string(e.what()).find("0.5") != std::string::npos);
    }
}

TEST_CASE("convergence table rows are per sweep") {
    const BuiltinEntry ex1 = load_builtin("ex1");
    const RunReport ex1_report = run(ex1.spec);
    const auto ex1_rows = convergence_table(ex1_report, *ex1.spec.exact, ex1.spec, 20);
    REQUIRE(ex1_rows.size() == 1);
    CHECK(ex1_rows[0].max_abs <= 1e-12);

    const BuiltinEntry wave = load_builtin("wave");
    const RunReport report = run(wave.spec);
    const auto rows = convergence_table(report, *wave.spec.exact, wave.spec, 30);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].iteration == 1);
    // the surface at sweep 4 is below the surface at sweep 2
    CHECK(rows[3].max_abs < rows[1].max_abs);
    // residuals decay for this problem
    CHECK(rows[3].residual_norm < rows[1].residual_norm);

    RunReport empty;
    CHECK_THROWS_AS(convergence_table(empty, *wave.spec.exact, wave.spec, 10), GridError);
}

TEST_CASE("csv output is deterministic and shaped as documented") {
    const BuiltinEntry entry = load_builtin("ex1");
    const RunReport report = run(entry.spec);
    const ErrorGrid g = error_grid(report.final_state.at("u"), *entry.spec.exact,
                                   entry.spec.domain, 10, entry.spec.eval_context());
    std::ostringstream a, b;
    write_csv(a, g);
    write_csv(b, g);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("t,x,approx,exact,abs_err,rel_err\n", 0) == 0);
    // 10x10 cells + header
    int lines = 0;
    for (char ch : a.str())
        if (ch == '\n') ++lines;
    CHECK(lines == 101);
}

TEST_CASE("csv leaves the relative field empty where undefined") {
    EvalContext ctx;
    const Expr zero = parse_expr("t*x", {});
    Series2 s(2, 2);
    s.at(0, 0) = 0.25;
    Domain dom{{0.0, 1.0}, {0.0, 1.0}};
    const ErrorGrid g = error_grid(s, zero, dom, 2, ctx);
    std::ostringstream out;
    write_csv(out, g);
    // the (0, 0) cell line ends with an empty rel_err field
    const std::string text = out.str();
    CHECK(text.find("0,0,0.25,0,0.25,\n") != std::string::npos);
}
