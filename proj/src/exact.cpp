#include "gossipmf/exact.hpp"

#include <algorithm>
#include <cmath>

#include "gossipmf/refined.hpp"

namespace gossipmf {

CountDistribution::CountDistribution(int n_states, long long population)
    : n_states_(n_states), population_(population) {
    // packing needs (N+1)^n to fit 64 bits
    long double span = 1.0L;
    for (int i = 0; i < n_states; ++i) span *= static_cast<long double>(population + 1);
    if (span > static_cast<long double>(UINT64_MAX))
        throw StateSpaceTooLarge("count vectors of this size cannot be packed into 64 bits");
}

CountDistribution CountDistribution::point_mass(const CountVector& counts) {
    CountDistribution d(counts.size(), counts.population());
    d.prob_[d.pack(counts.counts())] = 1.0;
    return d;
}

std::uint64_t CountDistribution::pack(std::span<const long long> counts) const {
    const std::uint64_t base = static_cast<std::uint64_t>(population_) + 1;
    std::uint64_t key = 0;
    for (int i = n_states_ - 1; i >= 0; --i) key = key * base + static_cast<std::uint64_t>(counts[i]);
    return key;
}

std::vector<long long> CountDistribution::unpack(std::uint64_t key) const {
    const std::uint64_t base = static_cast<std::uint64_t>(population_) + 1;
    std::vector<long long> counts(n_states_);
    for (int i = 0; i < n_states_; ++i) {
        counts[i] = static_cast<long long>(key % base);
        key /= base;
    }
    return counts;
}

double CountDistribution::total_probability() const {
    std::vector<std::uint64_t> keys = sorted_keys();
    double sum = 0.0;
    for (std::uint64_t k : keys) sum += prob_.at(k);
    return sum;
}

std::vector<std::uint64_t> CountDistribution::sorted_keys() const {
    std::vector<std::uint64_t> keys;
    keys.reserve(prob_.size());
    for (const auto& [k, p] : prob_) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    return keys;
}

namespace {

/// log k! table, grown on demand (single-threaded use).
double log_factorial(long long k) {
    static std::vector<double> table{0.0, 0.0};
    while (static_cast<long long>(table.size()) <= k)
        table.push_back(table.back() + std::log(static_cast<double>(table.size())));
    return table[k];
}

/// Enumerates the multinomial law of `trials` objects over the destination
/// probabilities `row`, calling sink(counts, probability) for every outcome
/// with nonzero probability. Coefficients are assembled in log space.
void enumerate_multinomial(std::span<const double> row, long long trials,
                           std::vector<long long>& counts, int state, long long left,
                           double log_p,
                           const std::function<void(const std::vector<long long>&, double)>& sink) {
    const int n = static_cast<int>(row.size());
    if (state == n - 1) {
        if (row[state] == 0.0 && left > 0) return;
        double lp = log_p;
        if (left > 0) lp += static_cast<double>(left) * std::log(row[state]);
        lp -= log_factorial(left);
        counts[state] = left;
        sink(counts, std::exp(lp + log_factorial(trials)));
        counts[state] = 0;
        return;
    }
    if (row[state] == 0.0) {
        counts[state] = 0;
        enumerate_multinomial(row, trials, counts, state + 1, left, log_p, sink);
        return;
    }
    const double log_pj = std::log(row[state]);
    for (long long r = 0; r <= left; ++r) {
        counts[state] = r;
        enumerate_multinomial(row, trials, counts, state + 1, left - r,
                              log_p + static_cast<double>(r) * log_pj - log_factorial(r), sink);
    }
    counts[state] = 0;
}

}  // namespace

CountDistribution exact_step(const PopulationModel& model, const CountDistribution& dist,
                             std::size_t support_cap) {
    const int n = model.n_states();
    CountDistribution next(n, dist.population());

    // partial convolution state: packed destination-so-far -> probability
    std::vector<std::pair<std::uint64_t, double>> partial, scratch;

    for (std::uint64_t origin_key : dist.sorted_keys()) {
        const double origin_p = dist.table().at(origin_key);
        const std::vector<long long> origin = dist.unpack(origin_key);
        const OccupancyVector m = CountVector::validated(origin, dist.population()).occupancy();
        const Matrix k = model.kernel(m.entries());

        partial.clear();
        partial.emplace_back(0, 1.0);
        std::vector<long long> outcome(n, 0);
        for (int i = 0; i < n; ++i) {
            if (origin[i] == 0) continue;
            scratch.clear();
            enumerate_multinomial(
                k.row(i), origin[i], outcome, 0, origin[i], 0.0,
                [&](const std::vector<long long>& dest, double p) {
                    const std::uint64_t dest_key = next.pack(dest);
                    for (const auto& [key, q] : partial) scratch.emplace_back(key + dest_key, q * p);
                });
            // merge duplicates to keep the partial support tight
            std::sort(scratch.begin(), scratch.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            partial.clear();
            for (const auto& [key, q] : scratch) {
                if (!partial.empty() && partial.back().first == key)
                    partial.back().second += q;
                else
                    partial.emplace_back(key, q);
            }
        }
        for (const auto& [key, q] : partial) next.add(key, origin_p * q);
        if (next.table().size() > support_cap)
            throw StateSpaceTooLarge("exact support exceeded " + std::to_string(support_cap) +
                                     " count vectors");
    }
    return next;
}

std::vector<double> exact_expected_occupancy(const PopulationModel& model,
                                             const CountVector& counts0, long t,
                                             std::size_t support_cap) {
    CountDistribution dist = CountDistribution::point_mass(counts0);
    for (long i = 0; i < t; ++i) dist = exact_step(model, dist, support_cap);

    const int n = model.n_states();
    const double population = static_cast<double>(counts0.population());
    std::vector<double> expected(n, 0.0);
    for (std::uint64_t key : dist.sorted_keys()) {
        const double p = dist.table().at(key);
        const std::vector<long long> counts = dist.unpack(key);
        for (int i = 0; i < n; ++i)
            expected[i] += p * static_cast<double>(counts[i]) / population;
    }
    return expected;
}

std::vector<ConvergenceRow> corollary_convergence_table(
    const PopulationModel& model, const OccupancyVector& occupancy0, long t,
    std::span<const long long> n_list, std::size_t support_cap) {
    const int n = model.n_states();
    const RefinedTrajectory refined = refined_trajectory(model, occupancy0, t);
    const std::vector<double>& v_t = refined.at(t).v;
    const OccupancyVector& mu_t = refined.at(t).mu;

    std::vector<ConvergenceRow> rows;
    rows.reserve(n_list.size());
    for (long long population : n_list) {
        std::vector<long long> counts(n);
        for (int i = 0; i < n; ++i) {
            const double scaled = occupancy0[i] * static_cast<double>(population);
            counts[i] = std::llround(scaled);
            if (std::abs(scaled - static_cast<double>(counts[i])) > 1e-9)
                throw InvalidParams("initial occupancy is not integral at N = " +
                                    std::to_string(population));
        }
        const std::vector<double> expected = exact_expected_occupancy(
            model, CountVector::validated(counts, population), t, support_cap);
        double residual = 0.0;
        for (int i = 0; i < n; ++i) {
            const double diff =
                static_cast<double>(population) * (expected[i] - mu_t[i]) - v_t[i];
            residual = std::max(residual, std::abs(diff));
        }
        rows.push_back({population, residual});
    }
    return rows;
}

}  // namespace gossipmf
