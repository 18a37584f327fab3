#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "gossipmf/model.hpp"

namespace gossipmf {

/// Exact law of the count-level chain at one time step: probability per
/// count vector, keyed by the packed base-(N+1) digits of the counts.
/// Feasible only for tiny N and few states; guarded by a support cap.
class CountDistribution {
public:
    CountDistribution(int n_states, long long population);

    static CountDistribution point_mass(const CountVector& counts);

    int n_states() const { return n_states_; }
    long long population() const { return population_; }
    const std::unordered_map<std::uint64_t, double>& table() const { return prob_; }

    std::uint64_t pack(std::span<const long long> counts) const;
    std::vector<long long> unpack(std::uint64_t key) const;

    void add(std::uint64_t key, double p) { prob_[key] += p; }
    double total_probability() const;

    /// Keys in ascending order; fixes every accumulation order downstream.
    std::vector<std::uint64_t> sorted_keys() const;

private:
    int n_states_;
    long long population_;
    std::unordered_map<std::uint64_t, double> prob_;
};

inline constexpr std::size_t kDefaultSupportCap = 1'000'000;

/// One exact step: expands every support point into the joint multinomial
/// law of its per-state destination counts under K(counts/N) and
/// accumulates. Throws StateSpaceTooLarge past the support cap.
CountDistribution exact_step(const PopulationModel& model, const CountDistribution& dist,
                             std::size_t support_cap = kDefaultSupportCap);

/// E[M(t)] under the exact law started from counts0.
std::vector<double> exact_expected_occupancy(const PopulationModel& model,
                                             const CountVector& counts0, long t,
                                             std::size_t support_cap = kDefaultSupportCap);

/// One row of the convergence table for the 1/N correction: the residual
/// ||N (E[M(t)] - mu(t)) - V_t||_inf at a population size.
struct ConvergenceRow {
    long long n_population;
    double residual_inf;
};

/// Evaluates the residual for each N in n_list (N * occupancy0 must be
/// integral). The residual shrinking with N is the content of the 1/N
/// expansion at desk scale.
std::vector<ConvergenceRow> corollary_convergence_table(
    const PopulationModel& model, const OccupancyVector& occupancy0, long t,
    std::span<const long long> n_list, std::size_t support_cap = kDefaultSupportCap);

}  // namespace gossipmf
