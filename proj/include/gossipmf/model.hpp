#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gossipmf/autodiff.hpp"
#include "gossipmf/errors.hpp"
#include "gossipmf/jet.hpp"
#include "gossipmf/matrix.hpp"

namespace gossipmf {

inline constexpr double kSimplexTol = 1e-12;

/// Point on the unit simplex: per-state population fractions.
class OccupancyVector {
public:
    OccupancyVector() = default;

    /// Validates entries in [0,1] and sum == 1 within tol (default 1e-12).
    /// Throws NegativeEntry / SumNotOne. Trajectory code passes a looser tol
    /// for accumulated rounding; user input is held to the default.
    static OccupancyVector validated(std::vector<double> entries, double tol = kSimplexTol);

    int size() const { return static_cast<int>(m_.size()); }
    double operator[](int i) const { return m_[i]; }
    std::span<const double> entries() const { return m_; }

private:
    std::vector<double> m_;
};

/// Integer state counts for a finite population of size N.
class CountVector {
public:
    CountVector() = default;

    /// counts must be non-negative and sum exactly to population.
    static CountVector validated(std::vector<long long> counts, long long population);

    int size() const { return static_cast<int>(counts_.size()); }
    long long operator[](int i) const { return counts_[i]; }
    long long population() const { return population_; }
    std::span<const long long> counts() const { return counts_; }

    OccupancyVector occupancy() const;

private:
    std::vector<long long> counts_;
    long long population_ = 0;
};

/// Population model: n local states and an occupancy-dependent row-stochastic
/// kernel K(m). The kernel callable is instantiated once over doubles and once
/// over Jet2, so the same definition drives the trajectory iteration and the
/// derivative passes of the refined analysis.
class PopulationModel {
public:
    template <typename KernelFn>
    static PopulationModel make(std::vector<std::string> state_names, KernelFn kernel) {
        PopulationModel pm;
        pm.n_ = static_cast<int>(state_names.size());
        pm.names_ = std::move(state_names);
        pm.kernel_plain_ = [kernel](std::span<const double> m, std::span<double> out) {
            kernel(m, out);
        };
        pm.kernel_jet_ = [kernel](std::span<const Jet2> m, std::span<Jet2> out) {
            kernel(m, out);
        };
        return pm;
    }

    int n_states() const { return n_; }
    const std::vector<std::string>& state_names() const { return names_; }
    int state_index(const std::string& name) const;

    /// Evaluates K(m) as a dense n x n matrix.
    Matrix kernel(std::span<const double> m) const;
    void kernel(std::span<const Jet2> m, std::span<Jet2> out) const;

    /// The one-step map Phi_1(m) = m K(m) as a differentiable function.
    VectorFn phi1() const;

private:
    int n_ = 0;
    std::vector<std::string> names_;
    std::function<void(std::span<const double>, std::span<double>)> kernel_plain_;
    std::function<void(std::span<const Jet2>, std::span<Jet2>)> kernel_jet_;
};

/// Measure of interest h over occupancy vectors. Linear measures carry their
/// weight vector (constant gradient, zero Hessian); general measures are
/// expressed over the Jet2 algebra and differentiated on demand.
class Measure {
public:
    using ScalarFn = std::function<Jet2(std::span<const Jet2>)>;

    static Measure linear(std::string name, std::vector<double> weights);
    static Measure general(std::string name, int n_states, ScalarFn fn);

    const std::string& name() const { return name_; }
    int n_states() const { return n_; }
    bool is_linear() const { return linear_; }
    std::span<const double> weights() const { return weights_; }

    double value(std::span<const double> m) const;
    std::vector<double> gradient(std::span<const double> m) const;
    Matrix hessian_at(std::span<const double> m) const;

private:
    std::string name_;
    int n_ = 0;
    bool linear_ = false;
    std::vector<double> weights_;
    ScalarFn fn_;
};

/// Validates a raw vector as an occupancy vector.
OccupancyVector validate_occupancy(std::span<const double> v);

/// One application of Phi_1: returns m K(m), checked to still lie on the
/// simplex (no renormalization; drift beyond tolerance is an error).
OccupancyVector step(const PopulationModel& model, const OccupancyVector& m);

/// t-fold composition of step; iterate(model, m0, 0) == m0.
OccupancyVector iterate(const PopulationModel& model, OccupancyVector m0, long t);

}  // namespace gossipmf
