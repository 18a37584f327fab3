#pragma once

#include <cstdint>
#include <vector>

#include "gossipmf/model.hpp"
#include "gossipmf/rng.hpp"

namespace gossipmf {

/// Per-time-step statistics of a measure across simulation runs. stddev is
/// the population standard deviation (zero for a single run).
struct SimStats {
    std::vector<double> mean;
    std::vector<double> stddev;
    int runs = 0;
    std::uint64_t base_seed = 0;

    double std_error(long t) const;
};

/// Simulates the count-level chain: at each step every object in state i
/// moves independently according to row i of K(counts/N). Destination counts
/// are drawn multinomially via sequential binomial decomposition, so the
/// population is conserved exactly and the draw is reproducible from the
/// generator stream alone.
std::vector<CountVector> simulate_counts(const PopulationModel& model,
                                         const CountVector& counts0, long t_max,
                                         std::uint64_t seed);

/// Runs `runs` independent trajectories (run r seeded with
/// derive_seed(base_seed, r)) and aggregates the measure per time step.
/// Runs execute in parallel but merge in index order, so results are
/// bit-identical regardless of thread schedule.
SimStats simulate_measure(const PopulationModel& model, const CountVector& counts0, long t_max,
                          int runs, std::uint64_t base_seed, const Measure& h);

}  // namespace gossipmf
