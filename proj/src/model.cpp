#include "gossipmf/model.hpp"

#include <algorithm>
#include <cmath>

namespace gossipmf {

OccupancyVector OccupancyVector::validated(std::vector<double> entries, double tol) {
    OccupancyVector v;
    double sum = 0.0;
    for (double e : entries) {
        if (!(e >= 0.0)) throw NegativeEntry("occupancy entry " + std::to_string(e) + " < 0");
        if (e > 1.0 + tol) throw NegativeEntry("occupancy entry " + std::to_string(e) + " > 1");
        sum += e;
    }
    if (std::abs(sum - 1.0) > tol) throw SumNotOne(sum - 1.0);
    v.m_ = std::move(entries);
    return v;
}

OccupancyVector validate_occupancy(std::span<const double> v) {
    return OccupancyVector::validated(std::vector<double>(v.begin(), v.end()));
}

CountVector CountVector::validated(std::vector<long long> counts, long long population) {
    if (population <= 0) throw InvalidParams("population must be positive");
    long long sum = 0;
    for (long long c : counts) {
        if (c < 0) throw NegativeEntry("count " + std::to_string(c) + " < 0");
        sum += c;
    }
    if (sum != population)
        throw SumNotOne(static_cast<double>(sum - population) / static_cast<double>(population));
    CountVector cv;
    cv.counts_ = std::move(counts);
    cv.population_ = population;
    return cv;
}

OccupancyVector CountVector::occupancy() const {
    std::vector<double> m(counts_.size());
    for (std::size_t i = 0; i < counts_.size(); ++i)
        m[i] = static_cast<double>(counts_[i]) / static_cast<double>(population_);
    return OccupancyVector::validated(std::move(m));
}

int PopulationModel::state_index(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw Error("unknown state name: " + name);
    return static_cast<int>(it - names_.begin());
}

Matrix PopulationModel::kernel(std::span<const double> m) const {
    Matrix k(n_, n_);
    kernel_plain_(m, k.data());
    return k;
}

void PopulationModel::kernel(std::span<const Jet2> m, std::span<Jet2> out) const {
    kernel_jet_(m, out);
}

VectorFn PopulationModel::phi1() const {
    const int n = n_;
    auto kernel = kernel_jet_;
    return [n, kernel](std::span<const Jet2> m, std::span<Jet2> out) {
        std::vector<Jet2> k(static_cast<std::size_t>(n) * n);
        kernel(m, k);
        for (int j = 0; j < n; ++j) {
            Jet2 acc;
            for (int i = 0; i < n; ++i) acc += m[i] * k[static_cast<std::size_t>(i) * n + j];
            out[j] = acc;
        }
    };
}

Measure Measure::linear(std::string name, std::vector<double> weights) {
    Measure h;
    h.name_ = std::move(name);
    h.n_ = static_cast<int>(weights.size());
    h.linear_ = true;
    h.weights_ = std::move(weights);
    return h;
}

Measure Measure::general(std::string name, int n_states, ScalarFn fn) {
    Measure h;
    h.name_ = std::move(name);
    h.n_ = n_states;
    h.linear_ = false;
    h.fn_ = std::move(fn);
    return h;
}

double Measure::value(std::span<const double> m) const {
    if (linear_) {
        double s = 0.0;
        for (int i = 0; i < n_; ++i) s += weights_[i] * m[i];
        return s;
    }
    std::vector<Jet2> jm(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) jm[i] = Jet2(m[i]);
    return fn_(jm).v;
}

std::vector<double> Measure::gradient(std::span<const double> m) const {
    if (linear_) return weights_;
    auto fn = fn_;
    VectorFn wrapped = [fn](std::span<const Jet2> x, std::span<Jet2> out) { out[0] = fn(x); };
    Matrix jac = jacobian(wrapped, m, 1);
    std::vector<double> g(n_);
    for (int j = 0; j < n_; ++j) g[j] = jac(0, j);
    return g;
}

Matrix Measure::hessian_at(std::span<const double> m) const {
    if (linear_) return Matrix(n_, n_);
    auto fn = fn_;
    VectorFn wrapped = [fn](std::span<const Jet2> x, std::span<Jet2> out) { out[0] = fn(x); };
    HessianTensor h = hessian(wrapped, m, 1);
    Matrix out(n_, n_);
    for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) out(j, k) = h(0, j, k);
    return out;
}

OccupancyVector step(const PopulationModel& model, const OccupancyVector& m) {
    const int n = model.n_states();
    const Matrix k = model.kernel(m.entries());
    std::vector<double> next(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += m[i] * k(i, j);
        next[j] = acc;
    }
    // 1e-8 catches gross kernel bugs without tripping on the rounding a long
    // trajectory accumulates; per-step drift bounds live in the test suite.
    return OccupancyVector::validated(std::move(next), 1e-8);
}

OccupancyVector iterate(const PopulationModel& model, OccupancyVector m0, long t) {
    for (long i = 0; i < t; ++i) m0 = step(model, m0);
    return m0;
}

}  // namespace gossipmf
