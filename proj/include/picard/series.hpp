#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "picard/common.hpp"

namespace picard {

struct SeriesError : Error {
    using Error::Error;
};

/// Count of nonzero coefficients dropped past a truncation window since the
/// thread started (or since the caller last reset it). Products and
/// antiderivatives silently discard overflow terms; this counter is the only
/// trace they leave.
inline std::uint64_t& truncation_drops() {
    thread_local std::uint64_t n = 0;
    return n;
}

// ---------------------------------------------------------------------------
// Series1: truncated power series in one variable (local coordinate).
// ---------------------------------------------------------------------------

struct Series1 {
    Axis axis = Axis::X;
    int deg = 0;
    std::vector<double> c;  // c[k] multiplies v^k

    Series1() : c(1, 0.0) {}
    Series1(Axis a, int d) : axis(a), deg(d), c(static_cast<size_t>(d) + 1, 0.0) {}

    static Series1 constant(Axis a, int d, double v) {
        Series1 s(a, d);
        s.c[0] = v;
        return s;
    }
    /// The local coordinate itself: offset + v. `offset` is the global
    /// position of the expansion point, so the series represents the global
    /// variable.
    static Series1 variable(Axis a, int d, double offset = 0.0) {
        Series1 s(a, d);
        s.c[0] = offset;
        if (d >= 1) s.c[1] = 1.0;
        return s;
    }

    double eval(double v) const {
        double r = 0.0;
        for (int k = deg; k >= 0; --k) r = r * v + c[static_cast<size_t>(k)];
        return r;
    }

    bool all_finite() const {
        for (double v : c)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

inline void check_compatible(const Series1& a, const Series1& b) {
    if (a.axis != b.axis || a.deg != b.deg)
        throw SeriesError("mismatched truncation orders or axes in Series1 operation");
}

inline Series1 operator+(const Series1& a, const Series1& b) {
    check_compatible(a, b);
    Series1 r = a;
    for (int k = 0; k <= r.deg; ++k) r.c[static_cast<size_t>(k)] += b.c[static_cast<size_t>(k)];
    return r;
}

inline Series1 operator-(const Series1& a, const Series1& b) {
    check_compatible(a, b);
    Series1 r = a;
    for (int k = 0; k <= r.deg; ++k) r.c[static_cast<size_t>(k)] -= b.c[static_cast<size_t>(k)];
    return r;
}

inline Series1 operator-(const Series1& a) {
    Series1 r = a;
    for (double& v : r.c) v = -v;
    return r;
}

inline Series1 operator*(const Series1& a, double s) {
    Series1 r = a;
    for (double& v : r.c) v *= s;
    return r;
}
inline Series1 operator*(double s, const Series1& a) { return a * s; }

inline Series1 mul(const Series1& a, const Series1& b) {
    check_compatible(a, b);
    Series1 r(a.axis, a.deg);
    for (int i = 0; i <= a.deg; ++i) {
        const double ai = a.c[static_cast<size_t>(i)];
        if (ai == 0.0) continue;
        for (int j = 0; j <= b.deg; ++j) {
            const double term = ai * b.c[static_cast<size_t>(j)];
            if (i + j <= r.deg)
                r.c[static_cast<size_t>(i + j)] += term;
            else if (term != 0.0)
                ++truncation_drops();
        }
    }
    return r;
}

/// Reciprocal by the standard coefficient recurrence; requires a constant
/// term away from zero.
inline Series1 recip(const Series1& a) {
    if (std::abs(a.c[0]) <= 1e-12)
        throw SeriesError("singular series reciprocal: constant term " + format_double(a.c[0]));
    Series1 r(a.axis, a.deg);
    r.c[0] = 1.0 / a.c[0];
    for (int k = 1; k <= a.deg; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += a.c[static_cast<size_t>(j)] * r.c[static_cast<size_t>(k - j)];
        r.c[static_cast<size_t>(k)] = -acc / a.c[0];
    }
    return r;
}

inline Series1 powi(const Series1& a, int n) {
    if (n < 0) throw SeriesError("negative power of a series: use recip");
    Series1 r = Series1::constant(a.axis, a.deg, 1.0);
    Series1 base = a;
    while (n > 0) {
        if (n & 1) r = mul(r, base);
        n >>= 1;
        if (n > 0) base = mul(base, base);
    }
    return r;
}

inline Series1 derivative(const Series1& a) {
    Series1 r(a.axis, a.deg);
    for (int k = 0; k < a.deg; ++k) r.c[static_cast<size_t>(k)] = (k + 1) * a.c[static_cast<size_t>(k + 1)];
    return r;
}

// Analytic functions by their defining ODE recurrences. Evaluating f and its
// closure partners at the constant term handles arbitrary expansion points
// (exp(-exp(y)) and friends), which a Maclaurin composition table would not.

inline Series1 series_exp(const Series1& s) {
    Series1 e(s.axis, s.deg);
    e.c[0] = std::exp(s.c[0]);
    for (int k = 1; k <= s.deg; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += j * s.c[static_cast<size_t>(j)] * e.c[static_cast<size_t>(k - j)];
        e.c[static_cast<size_t>(k)] = acc / k;
    }
    return e;
}

inline void series_sincos(const Series1& s, Series1& sn, Series1& cs) {
    sn = Series1(s.axis, s.deg);
    cs = Series1(s.axis, s.deg);
    sn.c[0] = std::sin(s.c[0]);
    cs.c[0] = std::cos(s.c[0]);
    for (int k = 1; k <= s.deg; ++k) {
        double as = 0.0, ac = 0.0;
        for (int j = 1; j <= k; ++j) {
            const double w = j * s.c[static_cast<size_t>(j)];
            as += w * cs.c[static_cast<size_t>(k - j)];
            ac -= w * sn.c[static_cast<size_t>(k - j)];
        }
        sn.c[static_cast<size_t>(k)] = as / k;
        cs.c[static_cast<size_t>(k)] = ac / k;
    }
}

inline Series1 series_sin(const Series1& s) {
    Series1 sn, cs;
    series_sincos(s, sn, cs);
    return sn;
}

inline Series1 series_cos(const Series1& s) {
    Series1 sn, cs;
    series_sincos(s, sn, cs);
    return cs;
}

inline void series_sinhcosh(const Series1& s, Series1& sh, Series1& ch) {
    sh = Series1(s.axis, s.deg);
    ch = Series1(s.axis, s.deg);
    sh.c[0] = std::sinh(s.c[0]);
    ch.c[0] = std::cosh(s.c[0]);
    for (int k = 1; k <= s.deg; ++k) {
        double ah = 0.0, ac = 0.0;
        for (int j = 1; j <= k; ++j) {
            const double w = j * s.c[static_cast<size_t>(j)];
            ah += w * ch.c[static_cast<size_t>(k - j)];
            ac += w * sh.c[static_cast<size_t>(k - j)];
        }
        sh.c[static_cast<size_t>(k)] = ah / k;
        ch.c[static_cast<size_t>(k)] = ac / k;
    }
}

inline Series1 series_sinh(const Series1& s) {
    Series1 sh, ch;
    series_sinhcosh(s, sh, ch);
    return sh;
}

inline Series1 series_cosh(const Series1& s) {
    Series1 sh, ch;
    series_sinhcosh(s, sh, ch);
    return ch;
}

// atan' = s'/(1+s^2), integrated term by term.
inline Series1 series_atan(const Series1& s) {
    Series1 w = mul(s, s);
    w.c[0] += 1.0;
    Series1 d = mul(derivative(s), recip(w));
    Series1 a(s.axis, s.deg);
    a.c[0] = std::atan(s.c[0]);
    for (int k = 1; k <= s.deg; ++k) a.c[static_cast<size_t>(k)] = d.c[static_cast<size_t>(k - 1)] / k;
    return a;
}

inline Series1 series_sqrt(const Series1& s) {
    if (s.c[0] <= 0.0)
        throw SeriesError("sqrt of series with non-positive constant term " + format_double(s.c[0]));
    Series1 r(s.axis, s.deg);
    r.c[0] = std::sqrt(s.c[0]);
    for (int k = 1; k <= s.deg; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k - 1; ++j) acc += r.c[static_cast<size_t>(j)] * r.c[static_cast<size_t>(k - j)];
        r.c[static_cast<size_t>(k)] = (s.c[static_cast<size_t>(k)] - acc) / (2.0 * r.c[0]);
    }
    return r;
}

inline Series1 apply_analytic(const std::string& name, const Series1& s) {
    if (name == "exp") return series_exp(s);
    if (name == "sin") return series_sin(s);
    if (name == "cos") return series_cos(s);
    if (name == "sinh") return series_sinh(s);
    if (name == "cosh") return series_cosh(s);
    if (name == "atan") return series_atan(s);
    if (name == "sqrt") return series_sqrt(s);
    throw SeriesError("unknown analytic function '" + name + "'");
}

// ---------------------------------------------------------------------------
// Series2: truncated power series in (t, x), both in local coordinates.
// Indices outside the (deg_t, deg_x) window are semantically zero.
// ---------------------------------------------------------------------------

struct Series2 {
    int deg_t = 0;
    int deg_x = 0;
    std::vector<double> c;  // row-major: c[i*(deg_x+1)+j] multiplies t^i x^j

    Series2() : c(1, 0.0) {}
    Series2(int dt, int dx)
        : deg_t(dt), deg_x(dx), c(static_cast<size_t>(dt + 1) * static_cast<size_t>(dx + 1), 0.0) {}

    double& at(int i, int j) { return c[static_cast<size_t>(i) * (deg_x + 1) + static_cast<size_t>(j)]; }
    double at(int i, int j) const { return c[static_cast<size_t>(i) * (deg_x + 1) + static_cast<size_t>(j)]; }

    static Series2 constant(int dt, int dx, double v) {
        Series2 s(dt, dx);
        s.at(0, 0) = v;
        return s;
    }

    bool all_finite() const {
        for (double v : c)
            if (!std::isfinite(v)) return false;
        return true;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (double v : c) m = std::max(m, std::abs(v));
        return m;
    }
};

inline void check_compatible(const Series2& a, const Series2& b) {
    if (a.deg_t != b.deg_t || a.deg_x != b.deg_x)
        throw SeriesError("mismatched truncation orders in Series2 operation");
}

inline Series2 operator+(const Series2& a, const Series2& b) {
    check_compatible(a, b);
    Series2 r = a;
    for (size_t k = 0; k < r.c.size(); ++k) r.c[k] += b.c[k];
    return r;
}

inline Series2 operator-(const Series2& a, const Series2& b) {
    check_compatible(a, b);
    Series2 r = a;
    for (size_t k = 0; k < r.c.size(); ++k) r.c[k] -= b.c[k];
    return r;
}

inline Series2 operator-(const Series2& a) {
    Series2 r = a;
    for (double& v : r.c) v = -v;
    return r;
}

inline Series2 operator*(const Series2& a, double s) {
    Series2 r = a;
    for (double& v : r.c) v *= s;
    return r;
}
inline Series2 operator*(double s, const Series2& a) { return a * s; }

/// Embed a Series1 along its own axis (zero everywhere else).
inline Series2 lift(const Series1& s, int deg_t, int deg_x) {
    const int cap = s.axis == Axis::T ? deg_t : deg_x;
    if (s.deg > cap) throw SeriesError("lift would truncate: Series1 degree exceeds target");
    Series2 r(deg_t, deg_x);
    for (int k = 0; k <= s.deg; ++k) {
        if (s.axis == Axis::T)
            r.at(k, 0) = s.c[static_cast<size_t>(k)];
        else
            r.at(0, k) = s.c[static_cast<size_t>(k)];
    }
    return r;
}

/// Truncated Cauchy product. Accumulates the full product, keeps the window,
/// and counts every discarded nonzero coefficient.
inline Series2 mul(const Series2& a, const Series2& b) {
    check_compatible(a, b);
    const int nt = a.deg_t, nx = a.deg_x;
    const int wt = 2 * nt + 1, wx = 2 * nx + 1;
    std::vector<double> full(static_cast<size_t>(wt) * wx, 0.0);
    for (int i = 0; i <= nt; ++i)
        for (int j = 0; j <= nx; ++j) {
            const double aij = a.at(i, j);
            if (aij == 0.0) continue;
            for (int p = 0; p <= nt; ++p) {
                double* row = full.data() + static_cast<size_t>(i + p) * wx + j;
                const double* brow = b.c.data() + static_cast<size_t>(p) * (nx + 1);
                for (int q = 0; q <= nx; ++q) row[q] += aij * brow[q];
            }
        }
    Series2 r(nt, nx);
    for (int i = 0; i < wt; ++i)
        for (int j = 0; j < wx; ++j) {
            const double v = full[static_cast<size_t>(i) * wx + j];
            if (i <= nt && j <= nx)
                r.at(i, j) = v;
            else if (v != 0.0)
                ++truncation_drops();
        }
    return r;
}

inline Series2 powi(const Series2& a, int n) {
    if (n < 0) throw SeriesError("negative power of a series: use recip");
    Series2 r = Series2::constant(a.deg_t, a.deg_x, 1.0);
    Series2 base = a;
    while (n > 0) {
        if (n & 1) r = mul(r, base);
        n >>= 1;
        if (n > 0) base = mul(base, base);
    }
    return r;
}

/// Bivariate reciprocal: solve mul(a, r) = 1 coefficient by coefficient in
/// graded order; every referenced index has strictly smaller total degree.
inline Series2 recip(const Series2& a) {
    if (std::abs(a.at(0, 0)) <= 1e-12)
        throw SeriesError("singular series reciprocal: constant term " + format_double(a.at(0, 0)));
    const int nt = a.deg_t, nx = a.deg_x;
    Series2 r(nt, nx);
    r.at(0, 0) = 1.0 / a.at(0, 0);
    for (int s = 1; s <= nt + nx; ++s) {
        for (int i = std::max(0, s - nx); i <= std::min(s, nt); ++i) {
            const int j = s - i;
            double acc = 0.0;
            for (int p = 0; p <= i; ++p)
                for (int q = 0; q <= j; ++q) {
                    if (p == 0 && q == 0) continue;
                    acc += a.at(p, q) * r.at(i - p, j - q);
                }
            r.at(i, j) = -acc / a.at(0, 0);
        }
    }
    return r;
}

/// Formal derivative along one axis. The top coefficient row/column of the
/// result is zero: that information was already lost to truncation.
inline Series2 diff(const Series2& s, Axis axis) {
    Series2 r(s.deg_t, s.deg_x);
    if (axis == Axis::T) {
        for (int i = 0; i < s.deg_t; ++i)
            for (int j = 0; j <= s.deg_x; ++j) r.at(i, j) = (i + 1) * s.at(i + 1, j);
    } else {
        for (int i = 0; i <= s.deg_t; ++i)
            for (int j = 0; j < s.deg_x; ++j) r.at(i, j) = (j + 1) * s.at(i, j + 1);
    }
    return r;
}

inline Series2 deriv(const Series2& s, DerivAxis d) {
    switch (d) {
        case DerivAxis::T: return diff(s, Axis::T);
        case DerivAxis::X: return diff(s, Axis::X);
        case DerivAxis::TT: return diff(diff(s, Axis::T), Axis::T);
        case DerivAxis::XX: return diff(diff(s, Axis::X), Axis::X);
        case DerivAxis::TX: return diff(diff(s, Axis::T), Axis::X);
    }
    throw SeriesError("bad derivative axis");
}

/// Formal antiderivative vanishing at the expansion point. Top-degree input
/// terms would overflow the window; they are dropped and counted.
inline Series2 integrate(const Series2& s, Axis axis) {
    Series2 r(s.deg_t, s.deg_x);
    if (axis == Axis::T) {
        for (int j = 0; j <= s.deg_x; ++j)
            if (s.at(s.deg_t, j) != 0.0) ++truncation_drops();
        for (int i = 1; i <= s.deg_t; ++i)
            for (int j = 0; j <= s.deg_x; ++j) r.at(i, j) = s.at(i - 1, j) / i;
    } else {
        for (int i = 0; i <= s.deg_t; ++i)
            if (s.at(i, s.deg_x) != 0.0) ++truncation_drops();
        for (int i = 0; i <= s.deg_t; ++i)
            for (int j = 1; j <= s.deg_x; ++j) r.at(i, j) = s.at(i, j - 1) / j;
    }
    return r;
}

/// Substitute a numeric local-coordinate value into one axis (Horner),
/// leaving a series in the other axis.
inline Series1 eval_axis(const Series2& s, Axis axis, double value) {
    if (axis == Axis::X) {
        Series1 r(Axis::T, s.deg_t);
        for (int i = 0; i <= s.deg_t; ++i) {
            double acc = 0.0;
            for (int j = s.deg_x; j >= 0; --j) acc = acc * value + s.at(i, j);
            r.c[static_cast<size_t>(i)] = acc;
        }
        return r;
    }
    Series1 r(Axis::X, s.deg_x);
    for (int j = 0; j <= s.deg_x; ++j) {
        double acc = 0.0;
        for (int i = s.deg_t; i >= 0; --i) acc = acc * value + s.at(i, j);
        r.c[static_cast<size_t>(j)] = acc;
    }
    return r;
}

/// Nested Horner evaluation at local coordinates (t, x).
inline double eval_point(const Series2& s, double t, double x) {
    double acc = 0.0;
    for (int i = s.deg_t; i >= 0; --i) {
        double row = 0.0;
        for (int j = s.deg_x; j >= 0; --j) row = row * x + s.at(i, j);
        acc = acc * t + row;
    }
    return acc;
}

}  // namespace picard
