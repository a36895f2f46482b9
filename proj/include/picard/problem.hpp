#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "picard/eval.hpp"
#include "picard/parse.hpp"

namespace picard {

struct SpecError : Error {
    using Error::Error;
};

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    bool contains(double v) const { return v >= lo && v <= hi; }
    double length() const { return hi - lo; }
};

struct Domain {
    Interval t;
    Interval x;
    const Interval& along(Axis a) const { return a == Axis::T ? t : x; }
};

struct Correction {
    enum class Kind { Pin, Blend };
    Kind kind = Kind::Pin;
    std::string target_var;
    Axis axis = Axis::X;
    // pin: trace at `point` is forced to `target_a`
    // blend: traces at `point`/`point_b` are forced to `target_a`/`target_b`
    double point = 0.0;
    double point_b = 0.0;
    Expr target_a;
    Expr target_b;
};

struct ShootingSpec {
    std::string slope_var;    // the reduced first-order variable with unknown start
    std::string primary_var;  // the variable whose two-point data drives the update
    Axis axis = Axis::X;      // must be the evolution axis
    double lo = 0.0;
    double hi = 1.0;
    Expr alpha;  // target at `lo`
    Expr beta;   // target at `hi`
};

struct VarSpec {
    std::string name;
    Expr seed;  // expression in the non-evolution axis
    Expr rhs;
};

struct ProblemSpec {
    std::string name;
    Axis evolution = Axis::T;
    Domain domain;
    int deg_t = 16;
    int deg_x = 16;
    std::map<std::string, double> constants;
    std::vector<VarSpec> vars;  // declaration order = sweep order
    std::vector<Correction> corrections;
    std::optional<ShootingSpec> shooting;
    std::optional<Expr> exact;
    int iterations = 4;

    Axis seed_axis() const { return other_axis(evolution); }
    int degree(Axis a) const { return a == Axis::T ? deg_t : deg_x; }
    EvalContext eval_context() const { return EvalContext{constants, domain.t.lo, domain.x.lo}; }
    bool has_var(const std::string& n) const {
        for (const auto& v : vars)
            if (v.name == n) return true;
        return false;
    }
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

inline void validate(const ProblemSpec& p) {
    std::vector<std::string> errs;
    auto fail = [&errs](std::string m) { errs.push_back(std::move(m)); };

    if (p.vars.empty()) fail("no variables declared");
    if (p.iterations < 1) fail("iterations must be at least 1");
    if (p.deg_t < 1 || p.deg_x < 1) fail("degrees must be at least 1");
    if (p.domain.t.length() <= 0.0 || p.domain.x.length() <= 0.0) fail("empty domain interval");

    std::set<std::string> names;
    for (const auto& v : p.vars)
        if (!names.insert(v.name).second) fail("duplicate variable '" + v.name + "'");

    for (const auto& v : p.vars) {
        std::vector<std::string> refs;
        collect_state_refs(v.rhs, refs);
        for (const auto& r : refs)
            if (!names.count(r)) fail("rhs of '" + v.name + "' references undeclared '" + r + "'");
        if (contains_var(v.seed, p.evolution))
            fail("seed of '" + v.name + "' uses the evolution variable");
        std::vector<std::string> seed_refs;
        collect_state_refs(v.seed, seed_refs);
        if (!seed_refs.empty()) fail("seed of '" + v.name + "' references state variables");
    }

    for (const auto& c : p.corrections) {
        if (!names.count(c.target_var)) fail("correction targets undeclared '" + c.target_var + "'");
        const Interval& iv = p.domain.along(c.axis);
        if (!iv.contains(c.point))
            fail("correction point " + format_double(c.point) + " outside the " +
                 axis_name(c.axis) + " interval");
        if (c.kind == Correction::Kind::Blend) {
            if (!iv.contains(c.point_b))
                fail("correction point " + format_double(c.point_b) + " outside the " +
                     axis_name(c.axis) + " interval");
            if (c.point == c.point_b) fail("degenerate blend: equal correction points");
        }
    }

    if (p.shooting) {
        const auto& sh = *p.shooting;
        if (!names.count(sh.slope_var)) fail("shooting slope variable '" + sh.slope_var + "' undeclared");
        if (!names.count(sh.primary_var)) fail("shooting primary variable '" + sh.primary_var + "' undeclared");
        if (sh.axis != p.evolution) fail("shooting interval must lie along the evolution axis");
        if (sh.hi == sh.lo) fail("degenerate shooting interval");
    }

    if (p.exact) {
        std::vector<std::string> refs;
        collect_state_refs(*p.exact, refs);
        if (!refs.empty()) fail("exact solution must not reference state variables");
    }

    if (!errs.empty()) {
        std::string all = "invalid problem '" + p.name + "':";
        for (const auto& e : errs) all += "\n  " + e;
        throw SpecError(all);
    }
}

// ---------------------------------------------------------------------------
// Problem-file format: line oriented, '#' comments.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline bool eat_prefix(std::string& s, const std::string& prefix) {
    if (s.rfind(prefix, 0) != 0) return false;
    s = trim(s.substr(prefix.size()));
    return true;
}

/// Split on the first comma at parenthesis depth zero.
inline std::pair<std::string, std::string> split_top_comma(const std::string& s, int line,
                                                           ParseDiagnostics& diags) {
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(' || s[i] == '[') ++depth;
        if (s[i] == ')' || s[i] == ']') --depth;
        if (s[i] == ',' && depth == 0) return {trim(s.substr(0, i)), trim(s.substr(i + 1))};
    }
    diags.add(static_cast<size_t>(line), "expected two comma-separated expressions");
    return {s, ""};
}

inline double parse_number(const std::string& s, int line, ParseDiagnostics& diags) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || trim(std::string(end)) != "")
        diags.add(static_cast<size_t>(line), "bad number '" + s + "'");
    return v;
}

/// "[a, b]" -> Interval
inline Interval parse_interval(std::string s, int line, ParseDiagnostics& diags) {
    s = trim(s);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
        diags.add(static_cast<size_t>(line), "expected an interval [lo, hi], got '" + s + "'");
        return {};
    }
    const std::string inner = s.substr(1, s.size() - 2);
    const size_t comma = inner.find(',');
    if (comma == std::string::npos) {
        diags.add(static_cast<size_t>(line), "expected a comma inside the interval");
        return {};
    }
    Interval iv;
    iv.lo = parse_number(trim(inner.substr(0, comma)), line, diags);
    iv.hi = parse_number(trim(inner.substr(comma + 1)), line, diags);
    return iv;
}

inline std::optional<Axis> parse_axis(const std::string& s) {
    if (s == "t") return Axis::T;
    if (s == "x") return Axis::X;
    return std::nullopt;
}

}  // namespace detail

/// Parse the problem-file format. Diagnostics carry line numbers.
inline ProblemSpec parse_problem(const std::string& text) {
    using detail::trim;
    ParseDiagnostics diags;
    ProblemSpec p;
    bool saw_problem = false;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    auto bad = [&diags](int line, std::string msg) { diags.add(static_cast<size_t>(line), std::move(msg)); };

    auto parse_expr_line = [&](const std::string& s, int line) -> Expr {
        try {
            return parse_expr(s, p.constants);
        } catch (const ParseError& e) {
            bad(line, e.what());
            return Expr::number_of(0.0);
        }
    };

    while (std::getline(in, raw)) {
        ++line_no;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string line = trim(raw);
        if (line.empty()) continue;

        if (detail::eat_prefix(line, "problem")) {
            line = trim(line);
            if (line.size() < 2 || line.front() != '"' || line.back() != '"') {
                bad(line_no, "expected problem \"<name>\"");
            } else {
                p.name = line.substr(1, line.size() - 2);
                saw_problem = true;
            }
        } else if (detail::eat_prefix(line, "evolve")) {
            auto a = detail::parse_axis(trim(line));
            if (!a)
                bad(line_no, "evolve expects t or x");
            else
                p.evolution = *a;
        } else if (detail::eat_prefix(line, "domain")) {
            // domain t in [lo, hi], x in [lo, hi]
            size_t split = std::string::npos;
            int depth = 0;
            for (size_t i = 0; i < line.size(); ++i) {
                if (line[i] == '[') ++depth;
                if (line[i] == ']') --depth;
                if (line[i] == ',' && depth == 0) {
                    split = i;
                    break;
                }
            }
            if (split == std::string::npos) {
                bad(line_no, "domain expects two comma-separated axis ranges");
                continue;
            }
            auto parse_range = [&](std::string part) {
                part = trim(part);
                auto a = detail::parse_axis(part.substr(0, 1));
                std::string rest = trim(part.substr(1));
                if (!a || !detail::eat_prefix(rest, "in")) {
                    bad(line_no, "expected '<axis> in [lo, hi]'");
                    return;
                }
                const Interval iv = detail::parse_interval(rest, line_no, diags);
                (*a == Axis::T ? p.domain.t : p.domain.x) = iv;
            };
            parse_range(line.substr(0, split));
            parse_range(line.substr(split + 1));
        } else if (detail::eat_prefix(line, "degree")) {
            // degree t=16 x=16
            std::istringstream ls(line);
            std::string item;
            while (ls >> item) {
                const size_t eq = item.find('=');
                auto a = eq == std::string::npos ? std::nullopt : detail::parse_axis(item.substr(0, eq));
                if (!a) {
                    bad(line_no, "degree expects t=<int> x=<int>");
                    continue;
                }
                const int d = std::atoi(item.c_str() + eq + 1);
                (*a == Axis::T ? p.deg_t : p.deg_x) = d;
            }
        } else if (detail::eat_prefix(line, "const")) {
            const size_t eq = line.find('=');
            if (eq == std::string::npos) {
                bad(line_no, "const expects <name> = <real>");
                continue;
            }
            const std::string name = trim(line.substr(0, eq));
            p.constants[name] = detail::parse_number(trim(line.substr(eq + 1)), line_no, diags);
        } else if (detail::eat_prefix(line, "var")) {
            // var <name>: seed = <expr> ; rhs = <expr>
            const size_t colon = line.find(':');
            if (colon == std::string::npos) {
                bad(line_no, "var expects '<name>: seed = <expr> ; rhs = <expr>'");
                continue;
            }
            VarSpec v;
            v.name = trim(line.substr(0, colon));
            std::string rest = trim(line.substr(colon + 1));
            const size_t semi = rest.find(';');
            if (semi == std::string::npos) {
                bad(line_no, "var expects a ';' between seed and rhs");
                continue;
            }
            std::string seed_part = trim(rest.substr(0, semi));
            std::string rhs_part = trim(rest.substr(semi + 1));
            if (!detail::eat_prefix(seed_part, "seed") || !detail::eat_prefix(seed_part, "=") ||
                !detail::eat_prefix(rhs_part, "rhs") || !detail::eat_prefix(rhs_part, "=")) {
                bad(line_no, "var expects 'seed = <expr> ; rhs = <expr>'");
                continue;
            }
            v.seed = parse_expr_line(seed_part, line_no);
            v.rhs = parse_expr_line(rhs_part, line_no);
            p.vars.push_back(std::move(v));
        } else if (detail::eat_prefix(line, "correct")) {
            // correct <var>: pin <axis>=<real> to <expr>
            // correct <var>: blend <axis> in [a,b] to <expr>, <expr>
            const size_t colon = line.find(':');
            if (colon == std::string::npos) {
                bad(line_no, "correct expects '<var>: pin ...' or '<var>: blend ...'");
                continue;
            }
            Correction c;
            c.target_var = trim(line.substr(0, colon));
            std::string rest = trim(line.substr(colon + 1));
            if (detail::eat_prefix(rest, "pin")) {
                c.kind = Correction::Kind::Pin;
                const size_t eq = rest.find('=');
                auto a = eq == std::string::npos ? std::nullopt
                                                 : detail::parse_axis(trim(rest.substr(0, eq)));
                if (!a) {
                    bad(line_no, "pin expects '<axis>=<real> to <expr>'");
                    continue;
                }
                c.axis = *a;
                rest = trim(rest.substr(eq + 1));
                const size_t to = rest.find(" to ");
                if (to == std::string::npos) {
                    bad(line_no, "pin expects 'to <expr>'");
                    continue;
                }
                c.point = detail::parse_number(trim(rest.substr(0, to)), line_no, diags);
                c.target_a = parse_expr_line(trim(rest.substr(to + 4)), line_no);
            } else if (detail::eat_prefix(rest, "blend")) {
                c.kind = Correction::Kind::Blend;
                auto a = detail::parse_axis(rest.substr(0, 1));
                std::string tail = trim(rest.substr(1));
                if (!a || !detail::eat_prefix(tail, "in")) {
                    bad(line_no, "blend expects '<axis> in [a,b] to <expr>, <expr>'");
                    continue;
                }
                c.axis = *a;
                const size_t to = tail.find(" to ");
                if (to == std::string::npos) {
                    bad(line_no, "blend expects 'to <expr>, <expr>'");
                    continue;
                }
                const Interval iv = detail::parse_interval(trim(tail.substr(0, to)), line_no, diags);
                c.point = iv.lo;
                c.point_b = iv.hi;
                auto [ea, eb] = detail::split_top_comma(trim(tail.substr(to + 4)), line_no, diags);
                c.target_a = parse_expr_line(ea, line_no);
                c.target_b = parse_expr_line(eb, line_no);
            } else {
                bad(line_no, "correct expects 'pin' or 'blend'");
                continue;
            }
            p.corrections.push_back(std::move(c));
        } else if (detail::eat_prefix(line, "shoot")) {
            // shoot <var>: slope of <uvar> over <axis> in [a,b] targets <expr>, <expr>
            const size_t colon = line.find(':');
            if (colon == std::string::npos) {
                bad(line_no, "shoot expects '<var>: slope of <uvar> over <axis> in [a,b] targets <expr>, <expr>'");
                continue;
            }
            ShootingSpec sh;
            sh.slope_var = trim(line.substr(0, colon));
            std::string rest = trim(line.substr(colon + 1));
            if (!detail::eat_prefix(rest, "slope of")) {
                bad(line_no, "shoot expects 'slope of <uvar>'");
                continue;
            }
            const size_t over = rest.find(" over ");
            if (over == std::string::npos) {
                bad(line_no, "shoot expects 'over <axis>'");
                continue;
            }
            sh.primary_var = trim(rest.substr(0, over));
            rest = trim(rest.substr(over + 6));
            auto a = detail::parse_axis(rest.substr(0, 1));
            rest = trim(rest.substr(1));
            if (!a || !detail::eat_prefix(rest, "in")) {
                bad(line_no, "shoot expects '<axis> in [a,b]'");
                continue;
            }
            sh.axis = *a;
            const size_t targets = rest.find(" targets ");
            if (targets == std::string::npos) {
                bad(line_no, "shoot expects 'targets <expr>, <expr>'");
                continue;
            }
            const Interval iv = detail::parse_interval(trim(rest.substr(0, targets)), line_no, diags);
            sh.lo = iv.lo;
            sh.hi = iv.hi;
            auto [ea, eb] = detail::split_top_comma(trim(rest.substr(targets + 9)), line_no, diags);
            sh.alpha = parse_expr_line(ea, line_no);
            sh.beta = parse_expr_line(eb, line_no);
            p.shooting = std::move(sh);
        } else if (detail::eat_prefix(line, "exact")) {
            std::string rest = line;
            if (!detail::eat_prefix(rest, "=")) {
                bad(line_no, "exact expects '= <expr>'");
                continue;
            }
            p.exact = parse_expr_line(rest, line_no);
        } else if (detail::eat_prefix(line, "iterations")) {
            p.iterations = std::atoi(trim(line).c_str());
        } else {
            bad(line_no, "unrecognized directive: '" + line + "'");
        }
    }

    if (!saw_problem) diags.add(0, "missing 'problem \"<name>\"' line");
    if (!diags.empty()) throw SpecError("problem file errors:\n" + diags.summary());
    validate(p);
    return p;
}

/// Canonical emission; parse_problem(emit_problem(p)) reproduces p, and the
/// built-in suite is stored in exactly this form.
inline std::string emit_problem(const ProblemSpec& p) {
    std::ostringstream out;
    out << "problem \"" << p.name << "\"\n";
    out << "evolve " << axis_name(p.evolution) << "\n";
    out << "domain t in [" << format_double(p.domain.t.lo) << ", " << format_double(p.domain.t.hi)
        << "], x in [" << format_double(p.domain.x.lo) << ", " << format_double(p.domain.x.hi)
        << "]\n";
    out << "degree t=" << p.deg_t << " x=" << p.deg_x << "\n";
    for (const auto& [name, value] : p.constants)
        out << "const " << name << " = " << format_double(value) << "\n";
    for (const auto& v : p.vars)
        out << "var " << v.name << ": seed = " << to_string(v.seed) << " ; rhs = " << to_string(v.rhs)
            << "\n";
    for (const auto& c : p.corrections) {
        if (c.kind == Correction::Kind::Pin) {
            out << "correct " << c.target_var << ": pin " << axis_name(c.axis) << "="
                << format_double(c.point) << " to " << to_string(c.target_a) << "\n";
        } else {
            out << "correct " << c.target_var << ": blend " << axis_name(c.axis) << " in ["
                << format_double(c.point) << ", " << format_double(c.point_b) << "] to "
                << to_string(c.target_a) << ", " << to_string(c.target_b) << "\n";
        }
    }
    if (p.shooting) {
        const auto& sh = *p.shooting;
        out << "shoot " << sh.slope_var << ": slope of " << sh.primary_var << " over "
            << axis_name(sh.axis) << " in [" << format_double(sh.lo) << ", " << format_double(sh.hi)
            << "] targets " << to_string(sh.alpha) << ", " << to_string(sh.beta) << "\n";
    }
    if (p.exact) out << "exact = " << to_string(*p.exact) << "\n";
    out << "iterations " << p.iterations << "\n";
    return out.str();
}

}  // namespace picard
