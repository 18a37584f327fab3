#include "gossipmf/meanfield.hpp"

namespace gossipmf {

Trajectory classic_trajectory(const PopulationModel& model, const OccupancyVector& mu0,
                              long t_max) {
    Trajectory traj;
    traj.points.reserve(t_max + 1);
    traj.points.push_back(mu0);
    for (long t = 0; t < t_max; ++t) traj.points.push_back(step(model, traj.points.back()));
    return traj;
}

std::vector<double> measure_series(const Trajectory& traj, const Measure& h) {
    std::vector<double> series;
    series.reserve(traj.points.size());
    for (const OccupancyVector& m : traj.points) series.push_back(h.value(m.entries()));
    return series;
}

}  // namespace gossipmf
