#pragma once

#include <vector>

#include "gossipmf/matrix.hpp"
#include "gossipmf/meanfield.hpp"
#include "gossipmf/model.hpp"

namespace gossipmf {

/// State of the 1/N expansion at one time step: the mean-field point mu,
/// the correction vector V (sums to zero) and the covariance-like matrix W
/// (symmetric, zero row sums, positive semidefinite up to rounding).
struct RefinedState {
    OccupancyVector mu;
    std::vector<double> v;
    Matrix w;
};

struct RefinedTrajectory {
    std::vector<RefinedState> states;

    long t_max() const { return static_cast<long>(states.size()) - 1; }
    const RefinedState& at(long t) const { return states[t]; }
};

/// Noise matrix of the one-step transition at occupancy m:
///   Gamma_jj = sum_i m_i K_ij (1 - K_ij),  Gamma_jk = -sum_i m_i K_ij K_ik.
/// Symmetric with zero row sums for any row-stochastic kernel.
Matrix gamma_matrix(const PopulationModel& model, const OccupancyVector& m);

/// Runs the coupled recursions from V_0 = 0, W_0 = 0:
///   V_{t+1} = A_t V_t + (1/2) B_t . W_t
///   W_{t+1} = Gamma(mu(t)) + A_t W_t A_t^T
/// with A_t, B_t the first/second derivatives of the one-step map at mu(t)
/// and (B.W)_i = sum_{j,k} B_ijk W_jk contracted j-then-k for bit-stable
/// output. The recursions do not involve N; population size enters only in
/// the estimate helpers below.
RefinedTrajectory refined_trajectory(const PopulationModel& model, const OccupancyVector& mu0,
                                     long t_max);

/// mu + V/N per coordinate. Entries may transiently leave [0,1] at very
/// small N; they are returned as-is and flagged, never clipped.
struct RefinedOccupancy {
    std::vector<double> value;
    bool out_of_range = false;
};
RefinedOccupancy refined_occupancy(const RefinedState& state, long long n_population);

/// Refined estimate of E[h(M(t))]:
///   h(mu) + (Dh(mu) V + (1/2) sum_jk (D2h(mu))_jk W_jk) / N.
/// For linear h this equals h applied to refined_occupancy.
double refined_measure(const RefinedState& state, const Measure& h, long long n_population);

}  // namespace gossipmf
