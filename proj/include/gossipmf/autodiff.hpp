#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gossipmf/jet.hpp"
#include "gossipmf/matrix.hpp"

namespace gossipmf {

/// A differentiable map R^n -> R^p expressed over the Jet2 algebra. The same
/// callable serves plain evaluation (zero seeds) and derivative passes.
using VectorFn = std::function<void(std::span<const Jet2>, std::span<Jet2>)>;

/// Plain-value evaluation of f at x.
std::vector<double> eval(const VectorFn& f, std::span<const double> x, int n_out);

/// First derivative (Df(x))_ij = df_i/dx_j by n single-direction forward
/// passes. Exact up to rounding; throws NonFiniteDerivative on NaN/inf.
Matrix jacobian(const VectorFn& f, std::span<const double> x, int n_out);

/// Second derivative tensor by n(n+1)/2 paired-direction passes; symmetric
/// in the last two indices by construction.
HessianTensor hessian(const VectorFn& f, std::span<const double> x, int n_out);

/// Max relative discrepancy between the forward-mode Jacobian and central
/// finite differences with step h. Denominators are floored at 1e-8.
double fd_check_jacobian(const VectorFn& f, std::span<const double> x, int n_out,
                         double h = 1e-5);

/// Same for the Hessian tensor against the 4-point mixed-difference stencil.
double fd_check_hessian(const VectorFn& f, std::span<const double> x, int n_out,
                        double h = 1e-4);

/// Combined check at the default steps (1e-5 first order, 1e-4 second order);
/// returns the larger of the two discrepancies.
double fd_check(const VectorFn& f, std::span<const double> x, int n_out);

}  // namespace gossipmf
