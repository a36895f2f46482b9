#pragma once

#include <optional>
#include <string>
#include <vector>

#include "picard/problem.hpp"

namespace picard {

/// A shipped problem instance. `file_text` is the canonical problem-file
/// form; the same bytes live under problems/ in the source tree.
struct BuiltinEntry {
    std::string key;
    ProblemSpec spec;
    std::optional<double> reference_error;  // reference max-error for this setup, when known
    std::string notes;
};

namespace detail {

struct BuiltinRecord {
    const char* key;
    const char* text;
    double reference_error;  // <= 0 means none published
    const char* notes;
};

// Example 2 family: one nonlinear first-order problem, seven constant sets.
// The exponential forcing and its closure partners are carried as state
// variables so every right-hand side stays polynomial.
inline std::string ex2_text(const char* name, int j, double a3, double a4, double a5) {
    const int a6 = static_cast<int>(-a5);
    std::string s;
    s += "problem \"";
    s += name;
    s += "\"\n";
    s += "evolve t\n";
    s += "domain t in [0, 1], x in [0, 1]\n";
    s += "degree t=16 x=16\n";
    s += "const A1 = 1\n";
    s += "const A2 = 1\n";
    s += "const A3 = " + format_double(a3) + "\n";
    s += "const A4 = " + format_double(a4) + "\n";
    s += "const A5 = " + format_double(a5) + "\n";
    s += "const A6 = " + format_double(static_cast<double>(a6)) + "\n";
    s += "const b = 1\n";
    s += "const j = " + format_double(static_cast<double>(j)) + "\n";
    s += "const m = 1\n";
    const std::string uj = "u^" + std::to_string(j);
    const std::string pj = "P^" + std::to_string(j);
    const std::string ta6 = "T^" + std::to_string(a6);
    const std::string ra6 = "R^" + std::to_string(a6);
    s += "var u: seed = exp(x/b) ; rhs = (-A1*D[x](u^2) + A3*" + uj + " + A4*" + ta6 + " + E)/A2\n";
    s += "var v: seed = 1 ; rhs = v\n";
    s += "var T: seed = exp(-exp(x/b)) ; rhs = -u_t*T\n";
    s += "var P: seed = exp(x/b) ; rhs = P\n";
    s += "var R: seed = exp(-exp(x/b)) ; rhs = -P*R\n";
    s += "var E: seed = exp(x/b)*(A2 + A1/b*(m + 1)*exp(m*x/b)) - A3*exp(j*x/b) - "
         "A4*exp(-A6*exp(x/b)) ; rhs = P*(A2 + A1/b*(m + 1)^2*P^1) - A3*j*" + pj +
         " + A4*A6*P*" + ra6 + "\n";
    s += "correct u: pin x=0 to exp(t)\n";
    s += "exact = exp(t + x/b)\n";
    s += "iterations 4\n";
    return s;
}

inline std::string sine_gordon_text(const char* name, const char* m_literal) {
    const std::string m = m_literal;
    const std::string core = "m/sqrt(1 - m^2)*sin(sqrt(1 - m^2)";
    std::string s;
    s += "problem \"";
    s += name;
    s += "\"\n";
    s += "evolve x\n";
    s += "domain t in [0, 1], x in [0, 1]\n";
    s += "degree t=16 x=16\n";
    s += "const m = " + m + "\n";
    s += "var u: seed = -4*atan(" + core + "*t)) ; rhs = v\n";
    s += "var v: seed = 0 ; rhs = u_tt - U\n";
    s += "var U: seed = sin(-4*atan(" + core + "*t))) ; rhs = v*V\n";
    s += "var V: seed = cos(-4*atan(" + core + "*t))) ; rhs = -v*U\n";
    s += "correct u: blend t in [0, 1] to 0, -4*atan(" + core + ")/cosh(m*x))\n";
    s += "exact = -4*atan(" + core + "*t)/cosh(m*x))\n";
    s += "iterations 4\n";
    return s;
}

inline const std::vector<BuiltinRecord>& builtin_records() {
    static const std::vector<BuiltinRecord> records = [] {
        std::vector<BuiltinRecord> r;

        static const std::string ex1 =
            "problem \"ex1\"\n"
            "evolve t\n"
            "domain t in [0, 1], x in [0, 1]\n"
            "degree t=16 x=16\n"
            "var u: seed = 1 + x ; rhs = -u_x + 2 + t + x\n"
            "correct u: pin x=0 to 1 + t\n"
            "exact = (1 + t)*(1 + x)\n"
            "iterations 1\n";
        r.push_back({"ex1", ex1.c_str(), 0.0,
                     "linear advection with product solution; one sweep is exact"});

        struct Case {
            int j;
            double a3, a4, a5;
        };
        static const Case cases[7] = {{1, 0, 0, 0},  {1, -1, 0, 0}, {2, -1, 0, 0}, {2, 1, 0, 0},
                                      {1, 1, 0, 0},  {1, 0, 1, -1}, {1, 1, 1, -1}};
        static std::vector<std::string> ex2_texts;
        static std::vector<std::string> ex2_keys;
        for (int i = 0; i < 7; ++i) {
            ex2_keys.push_back("ex2-case" + std::to_string(i + 1));
            ex2_texts.push_back(ex2_text(ex2_keys.back().c_str(), cases[i].j, cases[i].a3,
                                         cases[i].a4, cases[i].a5));
        }
        static const char* ex2_notes[7] = {
            "nonlinear transport, pure forcing balance",
            "nonlinear transport with linear sink",
            "nonlinear transport with quadratic sink",
            "nonlinear transport with quadratic source",
            "nonlinear transport with linear source",
            "nonlinear transport with exponential source",
            "nonlinear transport with linear and exponential sources"};
        for (int i = 0; i < 7; ++i)
            r.push_back({ex2_keys[i].c_str(), ex2_texts[i].c_str(), i == 0 ? 0.00439 : 0.0,
                         ex2_notes[i]});

        static const std::string wave =
            "problem \"wave\"\n"
            "evolve t\n"
            "domain t in [0, 1], x in [0, 1.5707963267948966]\n"
            "degree t=16 x=16\n"
            "var u: seed = cos(x) ; rhs = v\n"
            "var v: seed = cos(x) ; rhs = -u_xx\n"
            "var U: seed = 1 ; rhs = U\n"
            "correct u: blend x in [0, 1.5707963267948966] to exp(t), 0\n"
            "exact = exp(t)*cos(x)\n"
            "iterations 4\n";
        r.push_back({"wave", wave.c_str(), 0.0003,
                     "second-order wave problem reduced to (u, v), two-point blend in x"});

        static const std::string sg1 = sine_gordon_text("sine-gordon-m01", "0.1");
        static const std::string sg5 = sine_gordon_text("sine-gordon-m05", "0.5");
        static const std::string sg9 = sine_gordon_text("sine-gordon-m09", "0.9");
        r.push_back({"sine-gordon-m01", sg1.c_str(), 0.010,
                     "sine-Gordon breather slice, sin/cos auxiliary pair, blend in t"});
        r.push_back({"sine-gordon-m05", sg5.c_str(), 0.05,
                     "sine-Gordon breather slice, sin/cos auxiliary pair, blend in t"});
        r.push_back({"sine-gordon-m09", sg9.c_str(), 0.12,
                     "sine-Gordon breather slice, sin/cos auxiliary pair, blend in t"});

        static const std::string ex5 =
            "problem \"ex5-shooting\"\n"
            "evolve x\n"
            "domain t in [0, 1], x in [0, 1]\n"
            "degree t=16 x=16\n"
            "var u: seed = t + 2 ; rhs = v\n"
            "var v: seed = -(t + 2)/2 ; rhs = -2*u_t*v\n"
            "correct u: pin t=0 to 2/(x + 1)\n"
            "shoot v: slope of u over x in [0, 1] targets t + 2, (2 + t)/2\n"
            "exact = (2 + t)/(1 + x)\n"
            "iterations 4\n";
        r.push_back({"ex5-shooting", ex5.c_str(), 0.010,
                     "second-order two-point problem solved for the unknown initial slope"});

        static const std::string ex6 =
            "problem \"ex6-division\"\n"
            "evolve t\n"
            "domain t in [0, 1], x in [0, 1]\n"
            "degree t=16 x=16\n"
            "var u: seed = 2/(x + 1) ; rhs = -u_xx/(2*u_x)\n"
            "correct u: blend x in [0, 1] to t + 2, (2 + t)/2\n"
            "exact = (2 + t)/(1 + x)\n"
            "iterations 2\n";
        r.push_back({"ex6-division", ex6.c_str(), 0.0,
                     "same solution as the shooting form, rewritten with a series quotient"});

        return r;
    }();
    return records;
}

}  // namespace detail

inline std::vector<std::string> builtin_keys() {
    std::vector<std::string> keys;
    for (const auto& rec : detail::builtin_records()) keys.emplace_back(rec.key);
    return keys;
}

/// Canonical problem-file text for a builtin (identical to problems/<key>.prob).
inline std::string builtin_file_text(const std::string& key) {
    for (const auto& rec : detail::builtin_records())
        if (key == rec.key) return rec.text;
    std::string msg = "unknown builtin '" + key + "'; available:";
    for (const auto& rec : detail::builtin_records()) msg += std::string(" ") + rec.key;
    throw SpecError(msg);
}

inline BuiltinEntry load_builtin(const std::string& key) {
    for (const auto& rec : detail::builtin_records()) {
        if (key != rec.key) continue;
        BuiltinEntry e;
        e.key = rec.key;
        e.spec = parse_problem(rec.text);
        if (rec.reference_error > 0.0) e.reference_error = rec.reference_error;
        e.notes = rec.notes;
        return e;
    }
    std::string msg = "unknown builtin '" + key + "'; available:";
    for (const auto& rec : detail::builtin_records()) msg += std::string(" ") + rec.key;
    throw SpecError(msg);
}

}  // namespace picard
