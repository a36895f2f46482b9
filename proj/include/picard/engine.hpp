#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "picard/problem.hpp"

namespace picard {

struct EngineError : Error {
    using Error::Error;
};

using State = std::map<std::string, Series2>;

/// Previous-iterate (Jacobi) or updated-within-sweep (Gauss-Seidel)
/// evaluation. Jacobi keeps each update independent of declaration order and
/// reproduces the reference slope trajectory for the shooting problem; it is
/// the default.
enum class SweepMode { Jacobi, GaussSeidel };

struct IterationRecord {
    std::vector<double> residual_norms;  // per correction, max |coeff| before subtraction
    std::optional<Series1> gamma;
    std::uint64_t truncation_drops = 0;  // drops during this sweep
    State state;                         // post-sweep snapshot
};

struct RunReport {
    std::vector<IterationRecord> iterations;
    State final_state;
    std::optional<Series1> final_gamma;
    std::uint64_t truncation_drops_total = 0;

    const IterationRecord& last() const { return iterations.back(); }
};

namespace detail {

inline std::map<std::string, const Expr*> rhs_table_of(const ProblemSpec& p) {
    std::map<std::string, const Expr*> table;
    for (const auto& v : p.vars) table[v.name] = &v.rhs;
    return table;
}

inline void check_finite(const Series2& s, const std::string& var, int iteration) {
    if (!s.all_finite())
        throw EngineError("non-finite coefficients in '" + var + "' at iteration " +
                          std::to_string(iteration));
}

/// Degree-1 series a + b*axis in local coordinates.
inline Series2 affine(const ProblemSpec& p, Axis axis, double a, double b) {
    Series2 s(p.deg_t, p.deg_x);
    s.at(0, 0) = a;
    if (axis == Axis::T)
        s.at(1, 0) = b;
    else
        s.at(0, 1) = b;
    return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Boundary correction operators
// ---------------------------------------------------------------------------

/// Residual trace(s) of a correction against its target data, as series in
/// the non-correction axis. One entry for a pin, two for a blend.
inline std::vector<Series1> correction_residuals(const Correction& c, const Series2& s,
                                                 const ProblemSpec& p) {
    const EvalContext ctx = p.eval_context();
    const Axis trace_axis = other_axis(c.axis);
    const int trace_deg = p.degree(trace_axis);
    const double origin = ctx.origin(c.axis);
    std::vector<Series1> out;
    out.push_back(eval_axis(s, c.axis, c.point - origin) -
                  expand_seed(c.target_a, trace_axis, trace_deg, ctx));
    if (c.kind == Correction::Kind::Blend)
        out.push_back(eval_axis(s, c.axis, c.point_b - origin) -
                      expand_seed(c.target_b, trace_axis, trace_deg, ctx));
    return out;
}

/// Apply one boundary correction. Pin subtracts the lifted residual, which
/// annihilates the trace identically; blend subtracts the degree-1
/// interpolant of the two residuals, restoring both traces.
inline Series2 correct(const Correction& c, const Series2& s, const ProblemSpec& p) {
    const std::vector<Series1> res = correction_residuals(c, s, p);
    if (c.kind == Correction::Kind::Pin) return s - lift(res[0], p.deg_t, p.deg_x);

    const double origin = p.eval_context().origin(c.axis);
    const double width = c.point_b - c.point;
    // l_a(v) = (point_b - v)/width, l_b(v) = (v - point)/width, v global
    const Series2 l_a = detail::affine(p, c.axis, (c.point_b - origin) / width, -1.0 / width);
    const Series2 l_b = detail::affine(p, c.axis, (origin - c.point) / width, 1.0 / width);
    return s - mul(l_b, lift(res[1], p.deg_t, p.deg_x)) - mul(l_a, lift(res[0], p.deg_t, p.deg_x));
}

// ---------------------------------------------------------------------------
// Shooting update for an unknown initial slope
// ---------------------------------------------------------------------------

/// gamma = (beta - alpha - int_a^b (b-s) G(s) ds) / (b - a), with G the slope
/// variable's RHS on the given state. This is the two-point identity for
/// u(b) when u' = v, v' = G and v(a) = gamma.
inline Series1 shooting_update(const ShootingSpec& sh, const State& state, const ProblemSpec& p) {
    const EvalContext ctx = p.eval_context();
    const Axis axis = sh.axis;
    const Axis seed_axis = other_axis(axis);
    const int seed_deg = p.degree(seed_axis);

    const Expr* g_expr = nullptr;
    for (const auto& v : p.vars)
        if (v.name == sh.slope_var) g_expr = &v.rhs;
    if (!g_expr) throw EngineError("shooting slope variable '" + sh.slope_var + "' not found");

    const auto table = detail::rhs_table_of(p);
    RhsContext rctx{&state, p.evolution, &table, &ctx, p.deg_t, p.deg_x};
    const Series2 g = eval_rhs(*g_expr, rctx);

    const double origin = ctx.origin(axis);
    const Series2 weight = detail::affine(p, axis, sh.hi - origin, -1.0);  // b - s, s global
    const Series2 f = integrate(mul(weight, g), axis);
    const Series1 integral =
        eval_axis(f, axis, sh.hi - origin) - eval_axis(f, axis, sh.lo - origin);

    const Series1 alpha = expand_seed(sh.alpha, seed_axis, seed_deg, ctx);
    const Series1 beta = expand_seed(sh.beta, seed_axis, seed_deg, ctx);
    return (beta - alpha - integral) * (1.0 / (sh.hi - sh.lo));
}

// ---------------------------------------------------------------------------
// Seeding and sweeps
// ---------------------------------------------------------------------------

struct SeededState {
    State state;
    std::optional<Series1> gamma;  // slope seed for the next sweep, when shooting
};

/// Expand every variable's seed in the non-evolution axis. A shooting slope
/// variable is seeded with the straight-line slope (beta - alpha)/(b - a)
/// and the initial gamma is one shooting update on those seeds.
inline SeededState seed_state(const ProblemSpec& p) {
    const EvalContext ctx = p.eval_context();
    const Axis axis = p.seed_axis();
    const int deg = p.degree(axis);
    SeededState out;
    for (const auto& v : p.vars) {
        Series1 seed(axis, deg);
        if (p.shooting && p.shooting->slope_var == v.name) {
            const Series1 alpha = expand_seed(p.shooting->alpha, axis, deg, ctx);
            const Series1 beta = expand_seed(p.shooting->beta, axis, deg, ctx);
            seed = (beta - alpha) * (1.0 / (p.shooting->hi - p.shooting->lo));
        } else {
            try {
                seed = expand_seed(v.seed, axis, deg, ctx);
            } catch (const Error& e) {
                throw EngineError("seeding '" + v.name + "': " + e.what());
            }
        }
        out.state.emplace(v.name, lift(seed, p.deg_t, p.deg_x));
    }
    if (p.shooting) out.gamma = shooting_update(*p.shooting, out.state, p);
    return out;
}

/// One Picard sweep: integrate every variable's RHS along the evolution
/// axis on top of its seed, apply the corrections in listed order, then
/// refresh gamma if shooting. `gamma` is the slope seed consumed by this
/// sweep and is replaced by the updated one.
inline State picard_sweep(const ProblemSpec& p, const State& state,
                          std::optional<Series1>& gamma, SweepMode mode,
                          std::vector<double>* residual_norms = nullptr, int iteration = 0) {
    const EvalContext ctx = p.eval_context();
    const auto table = detail::rhs_table_of(p);
    const Axis seed_axis = p.seed_axis();
    const int seed_deg = p.degree(seed_axis);

    State next = state;
    const State& base = (mode == SweepMode::Jacobi) ? state : next;
    RhsContext rctx{&base, p.evolution, &table, &ctx, p.deg_t, p.deg_x};

    for (const auto& v : p.vars) {
        Series2 seed_lifted(p.deg_t, p.deg_x);
        if (p.shooting && p.shooting->slope_var == v.name && gamma)
            seed_lifted = lift(*gamma, p.deg_t, p.deg_x);
        else
            seed_lifted = lift(expand_seed(v.seed, seed_axis, seed_deg, ctx), p.deg_t, p.deg_x);
        try {
            next[v.name] = seed_lifted + integrate(eval_rhs(v.rhs, rctx), p.evolution);
        } catch (const Error& e) {
            throw EngineError("updating '" + v.name + "' at iteration " + std::to_string(iteration) +
                              ": " + e.what());
        }
        detail::check_finite(next[v.name], v.name, iteration);
    }

    for (const auto& c : p.corrections) {
        const Series2& cur = next.at(c.target_var);
        if (residual_norms) {
            double norm = 0.0;
            for (const Series1& r : correction_residuals(c, cur, p))
                for (double v : r.c) norm = std::max(norm, std::abs(v));
            residual_norms->push_back(norm);
        }
        next[c.target_var] = correct(c, cur, p);
        detail::check_finite(next.at(c.target_var), c.target_var, iteration);
    }

    if (p.shooting) gamma = shooting_update(*p.shooting, next, p);
    return next;
}

/// Seed, run `p.iterations` sweeps, and record residual norms, gamma
/// snapshots, truncation drops and per-sweep states.
inline RunReport run(const ProblemSpec& p, SweepMode mode = SweepMode::Jacobi) {
    validate(p);
    RunReport report;
    const std::uint64_t drops_start = truncation_drops();
    SeededState seeded = seed_state(p);
    State state = std::move(seeded.state);
    std::optional<Series1> gamma = std::move(seeded.gamma);

    std::uint64_t drops_before = truncation_drops();
    for (int k = 1; k <= p.iterations; ++k) {
        IterationRecord rec;
        state = picard_sweep(p, state, gamma, mode, &rec.residual_norms, k);
        rec.gamma = gamma;
        rec.truncation_drops = truncation_drops() - drops_before;
        drops_before = truncation_drops();
        rec.state = state;
        report.iterations.push_back(std::move(rec));
    }
    report.final_state = state;
    report.final_gamma = gamma;
    report.truncation_drops_total = truncation_drops() - drops_start;
    return report;
}

}  // namespace picard
