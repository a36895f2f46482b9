#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "picard/common.hpp"

namespace picard {

enum class ExprKind {
    Number,   // literal
    Const,    // named constant resolved from the problem's table
    Var,      // t or x
    State,    // reference to a state variable's current iterate
    Deriv,    // u_t, u_x, u_tt, u_xx, u_tx
    Neg,
    Add,
    Sub,
    Mul,
    Div,
    PowInt,   // integer power, exponent folded at parse time
    Func,     // exp/sin/cos/sinh/cosh/atan/sqrt
    DOf,      // D[t](e) / D[x](e): derivative of a subexpression
};

struct Expr {
    ExprKind kind = ExprKind::Number;
    double number = 0.0;             // Number
    std::string name;                // Const, State, Deriv, Func
    Axis axis = Axis::T;             // Var, DOf
    DerivAxis daxis = DerivAxis::T;  // Deriv
    int exponent = 0;                // PowInt
    std::vector<Expr> kids;

    friend bool operator==(const Expr&, const Expr&) = default;

    static Expr number_of(double v) {
        Expr e;
        e.kind = ExprKind::Number;
        e.number = v;
        return e;
    }
    static Expr constant(std::string n) {
        Expr e;
        e.kind = ExprKind::Const;
        e.name = std::move(n);
        return e;
    }
    static Expr var(Axis a) {
        Expr e;
        e.kind = ExprKind::Var;
        e.axis = a;
        return e;
    }
    static Expr state(std::string n) {
        Expr e;
        e.kind = ExprKind::State;
        e.name = std::move(n);
        return e;
    }
    static Expr deriv(std::string n, DerivAxis d) {
        Expr e;
        e.kind = ExprKind::Deriv;
        e.name = std::move(n);
        e.daxis = d;
        return e;
    }
    static Expr unary(ExprKind k, Expr a) {
        Expr e;
        e.kind = k;
        e.kids.push_back(std::move(a));
        return e;
    }
    static Expr binary(ExprKind k, Expr a, Expr b) {
        Expr e;
        e.kind = k;
        e.kids.push_back(std::move(a));
        e.kids.push_back(std::move(b));
        return e;
    }
    static Expr pow_int(Expr base, int n) {
        Expr e;
        e.kind = ExprKind::PowInt;
        e.exponent = n;
        e.kids.push_back(std::move(base));
        return e;
    }
    static Expr func(std::string n, Expr a) {
        Expr e;
        e.kind = ExprKind::Func;
        e.name = std::move(n);
        e.kids.push_back(std::move(a));
        return e;
    }
    static Expr d_of(Axis a, Expr arg) {
        Expr e;
        e.kind = ExprKind::DOf;
        e.axis = a;
        e.kids.push_back(std::move(arg));
        return e;
    }
};

inline bool is_known_function(const std::string& n) {
    return n == "exp" || n == "sin" || n == "cos" || n == "sinh" || n == "cosh" ||
           n == "atan" || n == "sqrt";
}

// Binding strength used by the printer: + - (1), * / (2), unary - (3), ^ (4).
inline int precedence_of(ExprKind k) {
    switch (k) {
        case ExprKind::Add:
        case ExprKind::Sub: return 1;
        case ExprKind::Mul:
        case ExprKind::Div: return 2;
        case ExprKind::Neg: return 3;
        case ExprKind::PowInt: return 4;
        default: return 5;
    }
}

inline std::string to_string(const Expr& e);

namespace detail {
inline std::string child_str(const Expr& child, int min_prec) {
    const std::string s = to_string(child);
    if (precedence_of(child.kind) < min_prec) return "(" + s + ")";
    return s;
}
}  // namespace detail

/// Canonical text form; parse(to_string(e)) reconstructs e.
inline std::string to_string(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Number: return format_double(e.number);
        case ExprKind::Const: return e.name;
        case ExprKind::Var: return axis_name(e.axis);
        case ExprKind::State: return e.name;
        case ExprKind::Deriv: return e.name + "_" + deriv_axis_name(e.daxis);
        case ExprKind::Neg: return "-" + detail::child_str(e.kids[0], 4);
        case ExprKind::Add:
            return detail::child_str(e.kids[0], 1) + " + " + detail::child_str(e.kids[1], 2);
        case ExprKind::Sub:
            return detail::child_str(e.kids[0], 1) + " - " + detail::child_str(e.kids[1], 2);
        case ExprKind::Mul:
            return detail::child_str(e.kids[0], 2) + "*" + detail::child_str(e.kids[1], 3);
        case ExprKind::Div:
            return detail::child_str(e.kids[0], 2) + "/" + detail::child_str(e.kids[1], 3);
        case ExprKind::PowInt:
            return detail::child_str(e.kids[0], 5) + "^" + std::to_string(e.exponent);
        case ExprKind::Func: return e.name + "(" + to_string(e.kids[0]) + ")";
        case ExprKind::DOf:
            return std::string("D[") + axis_name(e.axis) + "](" + to_string(e.kids[0]) + ")";
    }
    return "?";
}

/// Fold a subtree to a number when it contains only literals and table
/// constants. Used to resolve integer exponents at parse time.
inline std::optional<double> fold_constant(const Expr& e, const std::map<std::string, double>& constants) {
    switch (e.kind) {
        case ExprKind::Number: return e.number;
        case ExprKind::Const: {
            auto it = constants.find(e.name);
            if (it == constants.end()) return std::nullopt;
            return it->second;
        }
        case ExprKind::Neg: {
            auto v = fold_constant(e.kids[0], constants);
            if (!v) return std::nullopt;
            return -*v;
        }
        case ExprKind::Add:
        case ExprKind::Sub:
        case ExprKind::Mul:
        case ExprKind::Div: {
            auto a = fold_constant(e.kids[0], constants);
            auto b = fold_constant(e.kids[1], constants);
            if (!a || !b) return std::nullopt;
            switch (e.kind) {
                case ExprKind::Add: return *a + *b;
                case ExprKind::Sub: return *a - *b;
                case ExprKind::Mul: return *a * *b;
                default: return *a / *b;
            }
        }
        case ExprKind::PowInt: {
            auto a = fold_constant(e.kids[0], constants);
            if (!a) return std::nullopt;
            double r = 1.0;
            for (int i = 0; i < e.exponent; ++i) r *= *a;
            return r;
        }
        default: return std::nullopt;
    }
}

/// Collect every state/derivative reference name in a subtree.
inline void collect_state_refs(const Expr& e, std::vector<std::string>& out) {
    if (e.kind == ExprKind::State || e.kind == ExprKind::Deriv) out.push_back(e.name);
    for (const Expr& k : e.kids) collect_state_refs(k, out);
}

inline bool contains_var(const Expr& e, Axis a) {
    if (e.kind == ExprKind::Var && e.axis == a) return true;
    for (const Expr& k : e.kids)
        if (contains_var(k, a)) return true;
    return false;
}

}  // namespace picard
