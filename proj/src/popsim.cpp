#include "gossipmf/popsim.hpp"

#include <cmath>

#include "gossipmf/parallel.hpp"

namespace gossipmf {

double SimStats::std_error(long t) const {
    return stddev[t] / std::sqrt(static_cast<double>(runs));
}

namespace {

/// Multinomial draw by sequential binomial decomposition of one kernel row.
void multinomial_row(std::span<const double> probs, long long trials, SplitMix64& rng,
                     std::span<long long> out) {
    const int n = static_cast<int>(probs.size());
    long long remaining = trials;
    double prob_left = 1.0;
    for (int j = 0; j < n - 1 && remaining > 0; ++j) {
        const double p = prob_left <= 0.0 ? 0.0 : std::min(1.0, probs[j] / prob_left);
        const long long x = rng.binomial(remaining, p);
        out[j] += x;
        remaining -= x;
        prob_left -= probs[j];
    }
    out[n - 1] += remaining;
}

}  // namespace

std::vector<CountVector> simulate_counts(const PopulationModel& model,
                                         const CountVector& counts0, long t_max,
                                         std::uint64_t seed) {
    const int n = model.n_states();
    const long long population = counts0.population();
    SplitMix64 rng(seed);

    std::vector<CountVector> path;
    path.reserve(t_max + 1);
    path.push_back(counts0);

    std::vector<long long> cur(counts0.counts().begin(), counts0.counts().end());
    std::vector<long long> next(n);
    for (long t = 0; t < t_max; ++t) {
        const Matrix k = model.kernel(path.back().occupancy().entries());
        std::fill(next.begin(), next.end(), 0);
        for (int i = 0; i < n; ++i) {
            if (cur[i] == 0) continue;
            multinomial_row(k.row(i), cur[i], rng, next);
        }
        cur = next;
        path.push_back(CountVector::validated(cur, population));
    }
    return path;
}

SimStats simulate_measure(const PopulationModel& model, const CountVector& counts0, long t_max,
                          int runs, std::uint64_t base_seed, const Measure& h) {
    if (runs < 1) throw Error("simulate_measure requires at least one run");

    std::vector<std::vector<double>> series(runs);
    parallel_runs(runs, [&](int r) {
        const std::vector<CountVector> path =
            simulate_counts(model, counts0, t_max, derive_seed(base_seed, r));
        std::vector<double>& s = series[r];
        s.reserve(path.size());
        for (const CountVector& c : path) s.push_back(h.value(c.occupancy().entries()));
    });

    SimStats stats;
    stats.runs = runs;
    stats.base_seed = base_seed;
    stats.mean.assign(t_max + 1, 0.0);
    stats.stddev.assign(t_max + 1, 0.0);
    // two-pass moments, merged in run index order for bit-stable output
    for (long t = 0; t <= t_max; ++t) {
        double sum = 0.0;
        for (int r = 0; r < runs; ++r) sum += series[r][t];
        const double mean = sum / runs;
        double sq = 0.0;
        for (int r = 0; r < runs; ++r) {
            const double d = series[r][t] - mean;
            sq += d * d;
        }
        stats.mean[t] = mean;
        stats.stddev[t] = std::sqrt(sq / runs);
    }
    return stats;
}

}  // namespace gossipmf
