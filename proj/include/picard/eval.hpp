#pragma once

#include <cmath>
#include <map>
#include <string>

#include "picard/expr.hpp"
#include "picard/series.hpp"

namespace picard {

struct EvalError : Error {
    using Error::Error;
};

/// Shared evaluation environment: the constant table and the global
/// coordinates of the series expansion point (the domain's lower-left
/// corner). Series work in local offsets from that point.
struct EvalContext {
    std::map<std::string, double> constants;
    double origin_t = 0.0;
    double origin_x = 0.0;

    double origin(Axis a) const { return a == Axis::T ? origin_t : origin_x; }
};

// ---------------------------------------------------------------------------
// Numeric point evaluation (exact solutions, error grids). Coordinates are
// global. Derivative references have no meaning here and are rejected.
// ---------------------------------------------------------------------------

inline double eval_numeric(const Expr& e, double t, double x,
                           const std::map<std::string, double>& state, const EvalContext& ctx) {
    switch (e.kind) {
        case ExprKind::Number: return e.number;
        case ExprKind::Const: {
            auto it = ctx.constants.find(e.name);
            if (it == ctx.constants.end()) throw EvalError("unbound constant '" + e.name + "'");
            return it->second;
        }
        case ExprKind::Var: return e.axis == Axis::T ? t : x;
        case ExprKind::State: {
            auto it = state.find(e.name);
            if (it == state.end()) throw EvalError("unbound name '" + e.name + "'");
            return it->second;
        }
        case ExprKind::Deriv:
            throw EvalError("derivative reference '" + to_string(e) + "' is not allowed in a numeric expression");
        case ExprKind::DOf:
            throw EvalError("D[...] is not allowed in a numeric expression");
        case ExprKind::Neg: return -eval_numeric(e.kids[0], t, x, state, ctx);
        case ExprKind::Add:
            return eval_numeric(e.kids[0], t, x, state, ctx) + eval_numeric(e.kids[1], t, x, state, ctx);
        case ExprKind::Sub:
            return eval_numeric(e.kids[0], t, x, state, ctx) - eval_numeric(e.kids[1], t, x, state, ctx);
        case ExprKind::Mul:
            return eval_numeric(e.kids[0], t, x, state, ctx) * eval_numeric(e.kids[1], t, x, state, ctx);
        case ExprKind::Div: {
            const double den = eval_numeric(e.kids[1], t, x, state, ctx);
            if (den == 0.0) throw EvalError("division by zero at the sample point");
            return eval_numeric(e.kids[0], t, x, state, ctx) / den;
        }
        case ExprKind::PowInt: {
            const double base = eval_numeric(e.kids[0], t, x, state, ctx);
            double r = 1.0;
            for (int i = 0; i < e.exponent; ++i) r *= base;
            return r;
        }
        case ExprKind::Func: {
            const double a = eval_numeric(e.kids[0], t, x, state, ctx);
            if (e.name == "exp") return std::exp(a);
            if (e.name == "sin") return std::sin(a);
            if (e.name == "cos") return std::cos(a);
            if (e.name == "sinh") return std::sinh(a);
            if (e.name == "cosh") return std::cosh(a);
            if (e.name == "atan") return std::atan(a);
            if (e.name == "sqrt") {
                if (a < 0.0) throw EvalError("sqrt of negative value at the sample point");
                return std::sqrt(a);
            }
            throw EvalError("unknown function '" + e.name + "'");
        }
    }
    throw EvalError("bad expression node");
}

// ---------------------------------------------------------------------------
// Seed expansion: one-variable expressions (initial/boundary data) expanded
// into a Series1 about the domain corner.
// ---------------------------------------------------------------------------

inline Series1 expand_seed(const Expr& e, Axis axis, int deg, const EvalContext& ctx) {
    switch (e.kind) {
        case ExprKind::Number: return Series1::constant(axis, deg, e.number);
        case ExprKind::Const: {
            auto it = ctx.constants.find(e.name);
            if (it == ctx.constants.end()) throw EvalError("unbound constant '" + e.name + "'");
            return Series1::constant(axis, deg, it->second);
        }
        case ExprKind::Var:
            if (e.axis != axis)
                throw EvalError(std::string("seed expression may only use '") + axis_name(axis) +
                                "', found '" + axis_name(e.axis) + "'");
            return Series1::variable(axis, deg, ctx.origin(axis));
        case ExprKind::State:
        case ExprKind::Deriv:
            throw EvalError("state reference '" + e.name + "' is not allowed in seed/boundary data");
        case ExprKind::DOf:
            throw EvalError("D[...] is not allowed in seed/boundary data");
        case ExprKind::Neg: return -expand_seed(e.kids[0], axis, deg, ctx);
        case ExprKind::Add:
            return expand_seed(e.kids[0], axis, deg, ctx) + expand_seed(e.kids[1], axis, deg, ctx);
        case ExprKind::Sub:
            return expand_seed(e.kids[0], axis, deg, ctx) - expand_seed(e.kids[1], axis, deg, ctx);
        case ExprKind::Mul:
            return mul(expand_seed(e.kids[0], axis, deg, ctx), expand_seed(e.kids[1], axis, deg, ctx));
        case ExprKind::Div:
            try {
                return mul(expand_seed(e.kids[0], axis, deg, ctx),
                           recip(expand_seed(e.kids[1], axis, deg, ctx)));
            } catch (const SeriesError& err) {
                throw EvalError(std::string(err.what()) + " in '" + to_string(e) + "'");
            }
        case ExprKind::PowInt: return powi(expand_seed(e.kids[0], axis, deg, ctx), e.exponent);
        case ExprKind::Func:
            try {
                return apply_analytic(e.name, expand_seed(e.kids[0], axis, deg, ctx));
            } catch (const SeriesError& err) {
                throw EvalError(std::string(err.what()) + " in '" + to_string(e) + "'");
            }
    }
    throw EvalError("bad expression node");
}

// ---------------------------------------------------------------------------
// Right-hand-side evaluation over the current iterate environment.
// ---------------------------------------------------------------------------

/// Everything eval_rhs needs besides the expression: the iterate map, the
/// evolution axis, and the per-variable RHS table used to resolve
/// evolution-axis derivative references (one substitution level).
struct RhsContext {
    const std::map<std::string, Series2>* env = nullptr;
    Axis evolution = Axis::T;
    const std::map<std::string, const Expr*>* rhs_table = nullptr;
    const EvalContext* eval = nullptr;
    int deg_t = 0;
    int deg_x = 0;
};

namespace detail {

inline bool is_evolution_first_order(DerivAxis d, Axis evolution) {
    return (d == DerivAxis::T && evolution == Axis::T) ||
           (d == DerivAxis::X && evolution == Axis::X);
}

inline Series2 eval_rhs_impl(const Expr& e, const RhsContext& ctx, bool in_substitution) {
    switch (e.kind) {
        case ExprKind::Number: return Series2::constant(ctx.deg_t, ctx.deg_x, e.number);
        case ExprKind::Const: {
            auto it = ctx.eval->constants.find(e.name);
            if (it == ctx.eval->constants.end()) throw EvalError("unbound constant '" + e.name + "'");
            return Series2::constant(ctx.deg_t, ctx.deg_x, it->second);
        }
        case ExprKind::Var: {
            Series2 s(ctx.deg_t, ctx.deg_x);
            s.at(0, 0) = ctx.eval->origin(e.axis);
            if (e.axis == Axis::T)
                s.at(1, 0) = 1.0;
            else
                s.at(0, 1) = 1.0;
            return s;
        }
        case ExprKind::State: {
            auto it = ctx.env->find(e.name);
            if (it == ctx.env->end()) throw EvalError("unbound state variable '" + e.name + "'");
            return it->second;
        }
        case ExprKind::Deriv: {
            auto it = ctx.env->find(e.name);
            if (it == ctx.env->end()) throw EvalError("unbound state variable '" + e.name + "'");
            // A first-order derivative along the evolution axis means the
            // variable's own equation: substitute its RHS (one level only).
            // Any other derivative is a formal derivative of the iterate.
            if (is_evolution_first_order(e.daxis, ctx.evolution)) {
                if (in_substitution)
                    throw EvalError("substitution cycle resolving '" + to_string(e) + "'");
                auto rt = ctx.rhs_table->find(e.name);
                if (rt == ctx.rhs_table->end())
                    throw EvalError("no equation for '" + e.name + "' to resolve '" + to_string(e) + "'");
                return eval_rhs_impl(*rt->second, ctx, true);
            }
            return deriv(it->second, e.daxis);
        }
        case ExprKind::DOf:
            return diff(eval_rhs_impl(e.kids[0], ctx, in_substitution), e.axis);
        case ExprKind::Neg: return -eval_rhs_impl(e.kids[0], ctx, in_substitution);
        case ExprKind::Add:
            return eval_rhs_impl(e.kids[0], ctx, in_substitution) +
                   eval_rhs_impl(e.kids[1], ctx, in_substitution);
        case ExprKind::Sub:
            return eval_rhs_impl(e.kids[0], ctx, in_substitution) -
                   eval_rhs_impl(e.kids[1], ctx, in_substitution);
        case ExprKind::Mul:
            return mul(eval_rhs_impl(e.kids[0], ctx, in_substitution),
                       eval_rhs_impl(e.kids[1], ctx, in_substitution));
        case ExprKind::Div: {
            Series2 num = eval_rhs_impl(e.kids[0], ctx, in_substitution);
            Series2 den = eval_rhs_impl(e.kids[1], ctx, in_substitution);
            try {
                return mul(num, recip(den));
            } catch (const SeriesError& err) {
                throw EvalError(std::string(err.what()) + " in '" + to_string(e) + "'");
            }
        }
        case ExprKind::PowInt:
            return powi(eval_rhs_impl(e.kids[0], ctx, in_substitution), e.exponent);
        case ExprKind::Func:
            throw EvalError("function '" + e.name +
                            "' is not allowed in a right-hand side: introduce an auxiliary variable");
    }
    throw EvalError("bad expression node");
}

}  // namespace detail

inline Series2 eval_rhs(const Expr& e, const RhsContext& ctx) {
    return detail::eval_rhs_impl(e, ctx, false);
}

}  // namespace picard
