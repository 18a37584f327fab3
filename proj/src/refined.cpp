#include "gossipmf/refined.hpp"

#include <cmath>

#include "gossipmf/autodiff.hpp"

namespace gossipmf {

Matrix gamma_matrix(const PopulationModel& model, const OccupancyVector& m) {
    const int n = model.n_states();
    const Matrix k = model.kernel(m.entries());
    Matrix g(n, n);
    for (int j = 0; j < n; ++j) {
        for (int l = j; l < n; ++l) {
            double acc = 0.0;
            if (j == l) {
                for (int i = 0; i < n; ++i) acc += m[i] * k(i, j) * (1.0 - k(i, j));
            } else {
                for (int i = 0; i < n; ++i) acc -= m[i] * k(i, j) * k(i, l);
            }
            g(j, l) = acc;
            g(l, j) = acc;
        }
    }
    return g;
}

RefinedTrajectory refined_trajectory(const PopulationModel& model, const OccupancyVector& mu0,
                                     long t_max) {
    const int n = model.n_states();
    const VectorFn phi1 = model.phi1();

    RefinedTrajectory traj;
    traj.states.reserve(t_max + 1);
    traj.states.push_back({mu0, std::vector<double>(n, 0.0), Matrix(n, n)});

    for (long t = 0; t < t_max; ++t) {
        const RefinedState& cur = traj.states.back();
        const Matrix a = jacobian(phi1, cur.mu.entries(), n);
        const HessianTensor b = hessian(phi1, cur.mu.entries(), n);
        const Matrix g = gamma_matrix(model, cur.mu);

        std::vector<double> v_next(n, 0.0);
        for (int i = 0; i < n; ++i) {
            double av = 0.0;
            for (int j = 0; j < n; ++j) av += a(i, j) * cur.v[j];
            double bw = 0.0;
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) bw += b(i, j, k) * cur.w(j, k);
            v_next[i] = av + 0.5 * bw;
        }

        Matrix w_next = sandwich(a, cur.w);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w_next(i, j) += g(i, j);

        traj.states.push_back({step(model, cur.mu), std::move(v_next), std::move(w_next)});
    }
    return traj;
}

RefinedOccupancy refined_occupancy(const RefinedState& state, long long n_population) {
    const int n = state.mu.size();
    RefinedOccupancy out;
    out.value.resize(n);
    for (int i = 0; i < n; ++i) {
        out.value[i] = state.mu[i] + state.v[i] / static_cast<double>(n_population);
        if (out.value[i] < 0.0 || out.value[i] > 1.0) out.out_of_range = true;
    }
    return out;
}

double refined_measure(const RefinedState& state, const Measure& h, long long n_population) {
    const std::span<const double> mu = state.mu.entries();
    const int n = state.mu.size();
    const double base = h.value(mu);

    if (h.is_linear()) {
        // same floating-point expression as h(refined_occupancy) would use
        double corr = 0.0;
        for (int i = 0; i < n; ++i) corr += h.weights()[i] * state.v[i];
        return base + corr / static_cast<double>(n_population);
    }

    const std::vector<double> grad = h.gradient(mu);
    const Matrix hess = h.hessian_at(mu);
    double corr = 0.0;
    for (int i = 0; i < n; ++i) corr += grad[i] * state.v[i];
    double quad = 0.0;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) quad += hess(j, k) * state.w(j, k);
    return base + (corr + 0.5 * quad) / static_cast<double>(n_population);
}

}  // namespace gossipmf
