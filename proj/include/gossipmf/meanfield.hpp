#pragma once

#include <vector>

#include "gossipmf/model.hpp"

namespace gossipmf {

/// Deterministic mean-field trajectory, stored densely: points[t] = mu(t).
struct Trajectory {
    std::vector<OccupancyVector> points;

    long t_max() const { return static_cast<long>(points.size()) - 1; }
    const OccupancyVector& at(long t) const { return points[t]; }
};

/// Iterates mu(t+1) = mu(t) K(mu(t)) for t_max steps. No early termination:
/// the transient is the object of study.
Trajectory classic_trajectory(const PopulationModel& model, const OccupancyVector& mu0,
                              long t_max);

/// Pointwise application of a measure along a trajectory.
std::vector<double> measure_series(const Trajectory& traj, const Measure& h);

}  // namespace gossipmf
