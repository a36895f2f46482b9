#pragma once

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "picard/series.hpp"

namespace picard::testing {

inline std::mt19937& rng() {
    static std::mt19937 gen(20240613u);
    return gen;
}

inline Series2 random_series(int deg_t, int deg_x, double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    Series2 s(deg_t, deg_x);
    for (double& v : s.c) v = dist(rng());
    return s;
}

inline Series1 random_series1(Axis axis, int deg, double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    Series1 s(axis, deg);
    for (double& v : s.c) v = dist(rng());
    return s;
}

inline double max_coeff_diff(const Series2& a, const Series2& b) {
    REQUIRE(a.deg_t == b.deg_t);
    REQUIRE(a.deg_x == b.deg_x);
    double m = 0.0;
    for (size_t k = 0; k < a.c.size(); ++k) m = std::max(m, std::abs(a.c[k] - b.c[k]));
    return m;
}

inline double max_coeff_diff(const Series1& a, const Series1& b) {
    REQUIRE(a.deg == b.deg);
    double m = 0.0;
    for (size_t k = 0; k < a.c.size(); ++k) m = std::max(m, std::abs(a.c[k] - b.c[k]));
    return m;
}

}  // namespace picard::testing
