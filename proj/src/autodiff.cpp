#include "gossipmf/autodiff.hpp"

#include <cmath>

#include "gossipmf/errors.hpp"

namespace gossipmf {

namespace {

std::vector<Jet2> lift(std::span<const double> x) {
    std::vector<Jet2> jx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) jx[i] = Jet2(x[i]);
    return jx;
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw NonFiniteDerivative(what);
}

/// Tracks the worst absolute discrepancy and the overall magnitude of the
/// compared derivative arrays; the reported relative error is their ratio
/// with the denominator floored at 1e-8. Scaling by the array magnitude
/// keeps structurally-zero entries from amplifying stencil rounding noise.
struct RelDiscrepancy {
    double worst_abs = 0.0;
    double scale = 0.0;

    void add(double got, double want) {
        worst_abs = std::max(worst_abs, std::abs(got - want));
        scale = std::max({scale, std::abs(got), std::abs(want)});
    }
    double value() const { return worst_abs / std::max(scale, 1e-8); }
};

}  // namespace

std::vector<double> eval(const VectorFn& f, std::span<const double> x, int n_out) {
    std::vector<Jet2> jx = lift(x);
    std::vector<Jet2> out(n_out);
    f(jx, out);
    std::vector<double> v(n_out);
    for (int i = 0; i < n_out; ++i) v[i] = out[i].v;
    return v;
}

Matrix jacobian(const VectorFn& f, std::span<const double> x, int n_out) {
    const int n = static_cast<int>(x.size());
    Matrix jac(n_out, n);
    std::vector<Jet2> jx = lift(x);
    std::vector<Jet2> out(n_out);
    for (int j = 0; j < n; ++j) {
        jx[j].da = 1.0;
        f(jx, out);
        jx[j].da = 0.0;
        for (int i = 0; i < n_out; ++i) {
            require_finite(out[i].da, "jacobian entry is not finite");
            jac(i, j) = out[i].da;
        }
    }
    return jac;
}

HessianTensor hessian(const VectorFn& f, std::span<const double> x, int n_out) {
    const int n = static_cast<int>(x.size());
    HessianTensor hess(n_out, n);
    std::vector<Jet2> jx = lift(x);
    std::vector<Jet2> out(n_out);
    for (int j = 0; j < n; ++j) {
        for (int k = j; k < n; ++k) {
            jx[j].da = 1.0;
            jx[k].db = 1.0;
            f(jx, out);
            jx[j].da = 0.0;
            jx[k].db = 0.0;
            for (int i = 0; i < n_out; ++i) {
                require_finite(out[i].dab, "hessian entry is not finite");
                hess(i, j, k) = out[i].dab;
                hess(i, k, j) = out[i].dab;
            }
        }
    }
    return hess;
}

double fd_check_jacobian(const VectorFn& f, std::span<const double> x, int n_out, double h) {
    const int n = static_cast<int>(x.size());
    const Matrix jac = jacobian(f, x, n_out);
    std::vector<double> xp(x.begin(), x.end());
    RelDiscrepancy rel;
    for (int j = 0; j < n; ++j) {
        xp[j] = x[j] + h;
        const std::vector<double> fp = eval(f, xp, n_out);
        xp[j] = x[j] - h;
        const std::vector<double> fm = eval(f, xp, n_out);
        xp[j] = x[j];
        for (int i = 0; i < n_out; ++i) rel.add(jac(i, j), (fp[i] - fm[i]) / (2.0 * h));
    }
    return rel.value();
}

double fd_check_hessian(const VectorFn& f, std::span<const double> x, int n_out, double h) {
    const int n = static_cast<int>(x.size());
    const HessianTensor hess = hessian(f, x, n_out);
    std::vector<double> xp(x.begin(), x.end());
    RelDiscrepancy rel;
    auto eval_at = [&](int j, double sj, int k, double sk) {
        xp[j] += sj;
        xp[k] += sk;
        std::vector<double> v = eval(f, xp, n_out);
        xp[j] = x[j];
        xp[k] = x[k];
        return v;
    };
    for (int j = 0; j < n; ++j) {
        for (int k = j; k < n; ++k) {
            const std::vector<double> fpp = eval_at(j, h, k, h);
            const std::vector<double> fpm = eval_at(j, h, k, -h);
            const std::vector<double> fmp = eval_at(j, -h, k, h);
            const std::vector<double> fmm = eval_at(j, -h, k, -h);
            for (int i = 0; i < n_out; ++i)
                rel.add(hess(i, j, k), (fpp[i] - fpm[i] - fmp[i] + fmm[i]) / (4.0 * h * h));
        }
    }
    return rel.value();
}

double fd_check(const VectorFn& f, std::span<const double> x, int n_out) {
    return std::max(fd_check_jacobian(f, x, n_out), fd_check_hessian(f, x, n_out));
}

}  // namespace gossipmf
