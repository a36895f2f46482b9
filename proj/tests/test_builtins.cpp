#include <cmath>
#include <fstream>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "picard/builtins.hpp"
#include "picard/grid.hpp"

using namespace picard;

TEST_CASE("the builtin catalogue is complete") {
    const std::vector<std::string> keys = builtin_keys();
    REQUIRE(keys.size() == 14);
    const std::vector<std::string> expected = {
        "ex1",  "ex2-case1", "ex2-case2", "ex2-case3", "ex2-case4",
        "ex2-case5", "ex2-case6", "ex2-case7", "wave", "sine-gordon-m01",
        "sine-gordon-m05", "sine-gordon-m09", "ex5-shooting", "ex6-division"};
    CHECK(keys == expected);
    CHECK_THROWS_AS(load_builtin("nope"), SpecError);
    try {
        load_builtin("nope");
    } catch (const SpecError& e) {
        CHECK(std::string(e.what()).find("ex5-shooting") != std::string::npos);
    }
}

TEST_CASE("builtins validate and carry their published errors") {
    for (const std::string& key : builtin_keys()) {
        const BuiltinEntry entry = load_builtin(key);  // parse_problem validates
        CHECK(entry.spec.exact.has_value());
        CHECK_FALSE(entry.notes.empty());
        if (entry.reference_error) CHECK(*entry.reference_error > 0.0);
    }
    CHECK(load_builtin("ex1").spec.iterations == 1);
    CHECK(load_builtin("ex6-division").spec.iterations == 2);
    CHECK(load_builtin("ex2-case1").reference_error == 0.00439);
    CHECK(load_builtin("wave").reference_error == 0.0003);
    CHECK_FALSE(load_builtin("ex1").reference_error.has_value());
    CHECK(load_builtin("sine-gordon-m09").spec.constants.at("m") == 0.9);
    CHECK(load_builtin("ex2-case7").spec.constants.at("A6") == 1.0);
}

TEST_CASE("every builtin round-trips through its own emission") {
    for (const std::string& key : builtin_keys()) {
        const BuiltinEntry entry = load_builtin(key);
        const std::string text = builtin_file_text(key);
        CHECK(emit_problem(entry.spec) == text);
        const ProblemSpec reparsed = parse_problem(emit_problem(entry.spec));
        CHECK(emit_problem(reparsed) == text);
    }
}

TEST_CASE("shipped problem files are byte-identical to the builtins") {
    for (const std::string& key : builtin_keys()) {
        const std::string path = std::string(PICARD_SOURCE_DIR) + "/problems/" + key + ".prob";
        std::ifstream in(path, std::ios::binary);
        INFO(path);
        REQUIRE(in.good());
        std::stringstream buf;
        buf << in.rdbuf();
        CHECK(buf.str() == builtin_file_text(key));
    }
}

TEST_CASE("exact solutions satisfy their own boundary targets") {
    const std::map<std::string, double> none;
    for (const std::string& key : builtin_keys()) {
        const ProblemSpec p = load_builtin(key).spec;
        const EvalContext ctx = p.eval_context();
        for (const Correction& c : p.corrections) {
            const Axis trace_axis = other_axis(c.axis);
            const Interval& span = p.domain.along(trace_axis);
            for (int i = 0; i < 20; ++i) {
                const double v = span.lo + span.length() * i / 19.0;
                auto at = [&](double fixed, const Expr& target) {
                    const double t = c.axis == Axis::T ? fixed : v;
                    const double x = c.axis == Axis::X ? fixed : v;
                    const double lhs = eval_numeric(*p.exact, t, x, none, ctx);
                    const double rhs = eval_numeric(target, t, x, none, ctx);
                    INFO(key << " at (" << t << ", " << x << ")");
                    CHECK(std::abs(lhs - rhs) < 1e-10);
                };
                at(c.point, c.target_a);
                if (c.kind == Correction::Kind::Blend) at(c.point_b, c.target_b);
            }
        }
        if (p.shooting) {
            const Axis trace_axis = other_axis(p.shooting->axis);
            const Interval& span = p.domain.along(trace_axis);
            for (int i = 0; i < 20; ++i) {
                const double v = span.lo + span.length() * i / 19.0;
                auto at = [&](double fixed, const Expr& target) {
                    const double t = p.shooting->axis == Axis::T ? fixed : v;
                    const double x = p.shooting->axis == Axis::X ? fixed : v;
                    CHECK(std::abs(eval_numeric(*p.exact, t, x, none, ctx) -
                                   eval_numeric(target, t, x, none, ctx)) < 1e-10);
                };
                at(p.shooting->lo, p.shooting->alpha);
                at(p.shooting->hi, p.shooting->beta);
            }
        }
    }
}

TEST_CASE("entire seeds agree with their numeric values on the inner half") {
    // The radius-limited seeds (the geometric factor, the large-m breather
    // data) are exercised by the acceptance suite; these are the seeds whose
    // expansions converge comfortably on the domain.
    const std::map<std::string, double> none;
    for (const char* key : {"ex1", "ex2-case1", "ex2-case4", "wave", "sine-gordon-m01"}) {
        const ProblemSpec p = load_builtin(key).spec;
        const EvalContext ctx = p.eval_context();
        const Axis axis = p.seed_axis();
        const Interval& span = p.domain.along(axis);
        for (const VarSpec& v : p.vars) {
            const Series1 s = expand_seed(v.seed, axis, p.degree(axis), ctx);
            for (int i = 0; i < 20; ++i) {
                const double g = span.lo + span.length() * (0.25 + 0.5 * i / 19.0);
                const double t = axis == Axis::T ? g : 0.0;
                const double x = axis == Axis::X ? g : 0.0;
                const double direct = eval_numeric(v.seed, t, x, none, ctx);
                INFO(key << " var " << v.name << " at " << g);
                CHECK(std::abs(s.eval(g - ctx.origin(axis)) - direct) < 1e-8);
            }
        }
    }
}

TEST_CASE("printing any suite expression and reparsing is a fixed point") {
    for (const std::string& key : builtin_keys()) {
        const ProblemSpec p = load_builtin(key).spec;
        std::vector<const Expr*> exprs;
        for (const VarSpec& v : p.vars) {
            exprs.push_back(&v.seed);
            exprs.push_back(&v.rhs);
        }
        for (const Correction& c : p.corrections) {
            exprs.push_back(&c.target_a);
            if (c.kind == Correction::Kind::Blend) exprs.push_back(&c.target_b);
        }
        if (p.shooting) {
            exprs.push_back(&p.shooting->alpha);
            exprs.push_back(&p.shooting->beta);
        }
        if (p.exact) exprs.push_back(&*p.exact);
        for (const Expr* e : exprs) {
            INFO(key << ": " << to_string(*e));
            CHECK(parse_expr(to_string(*e), p.constants) == *e);
        }
    }
}

TEST_CASE("the exponential closure seed starts at exp(-1)") {
    const ProblemSpec p = load_builtin("ex2-case1").spec;
    const EvalContext ctx = p.eval_context();
    for (const VarSpec& v : p.vars) {
        if (v.name != "R") continue;
        const Series1 r0 = expand_seed(v.seed, Axis::X, p.deg_x, ctx);
        CHECK(std::abs(r0.c[0] - std::exp(-1.0)) < 1e-12);
    }
}
