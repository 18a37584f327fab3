#pragma once

#include <cmath>
#include <vector>

#include "gossipmf/model.hpp"
#include "gossipmf/rng.hpp"

namespace testhelp {

/// Uniform point on the simplex (normalized exponential spacings).
inline std::vector<double> random_simplex_point(int n, gossipmf::SplitMix64& rng) {
    std::vector<double> v(n);
    double sum = 0.0;
    for (double& x : v) {
        x = -std::log(1.0 - rng.uniform01());
        sum += x;
    }
    for (double& x : v) x /= sum;
    return v;
}

inline gossipmf::OccupancyVector random_occupancy(int n, gossipmf::SplitMix64& rng) {
    return gossipmf::validate_occupancy(random_simplex_point(n, rng));
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace testhelp
