#pragma once

#include "hardy/params.hpp"
#include "hardy/profile.hpp"

namespace hardy {

/// Which operator family a reduced parameter set belongs to.
enum class ReductionBranch { Forward, Adjoint };

const char* reduction_branch_name(ReductionBranch b);

/// One-dimensional parameters produced by the power-law change of variables
/// that removes the input weight. alpha_red is always zero, and the exponent
/// balance (gamma_red+1)/q + beta_red = 1/p carries over exactly.
struct ReducedParams {
    double gamma_red = 0.0;
    double alpha_red = 0.0;
    double beta_red = 0.0;
    ReductionBranch branch = ReductionBranch::Forward;
};

/// Strictly increasing substitution s(x) for the averaging operator,
/// s = x^m / m with m = (n(p-1) - alpha)/(p-1). Undefined at p = 1
/// (DegenerateSubstitutionError: the exponent collapses).
double substitute_forward(double x, const SpaceParams& sp);
double substitute_forward_inverse(double s, const SpaceParams& sp);

/// Substitution for the adjoint branch, s = x^m / m with
/// m = n(alpha + n - p beta)/(n - beta); defined for every admissible
/// parameter set including p = 1.
double substitute_adjoint(double x, const SpaceParams& sp);
double substitute_adjoint_inverse(double s, const SpaceParams& sp);

ReducedParams reduced_params_forward(const SpaceParams& sp);
ReducedParams reduced_params_adjoint(const SpaceParams& sp);

/// The validated one-dimensional parameter set (n = 1, alpha = 0) in which
/// the transported profile lives; p and q are inherited.
SpaceParams reduced_space(const SpaceParams& sp, const ReducedParams& red);

/// Transported profile g with g(s(x)) = f(x) x^shift, where the shift is the
/// exponent that makes the input norm weight drop out. Exact on the closed
/// family: power pieces map to power pieces, log factors rescale (k <= 1).
RadialProfile transform_profile_forward(const RadialProfile& f, const SpaceParams& sp);
RadialProfile transform_profile_adjoint(const RadialProfile& f, const SpaceParams& sp);

/// Inverse transports: reconstruct the n-dimensional profile a reduced
/// profile came from. Used to push one-dimensional extremizing families
/// into problems with a nontrivial input weight.
RadialProfile pull_back_profile_forward(const RadialProfile& g, const SpaceParams& sp);
RadialProfile pull_back_profile_adjoint(const RadialProfile& g, const SpaceParams& sp);

/// Multiplicative constants relating the weak quantity of the original
/// problem to the weak quantity of the reduced one.
double reduction_prefactor_forward(const SpaceParams& sp);
double reduction_prefactor_adjoint(const SpaceParams& sp);

/// Relative mismatch between the sphere-normalized weighted L^p norm of f
/// and the plain L^p norm of the transported profile; zero in exact
/// arithmetic for every profile in the closed family.
double norm_preservation_residual(const RadialProfile& f, const SpaceParams& sp,
                                  ReductionBranch branch);

/// Relative mismatch, at one level, between
///   lambda * (weighted superlevel integral of the constant-free operator)^{1/q}
/// and the prefactor times the same quantity for the reduced problem at the
/// mapped level. Zero in exact arithmetic.
double commutation_residual(const RadialProfile& f, const SpaceParams& sp,
                            ReductionBranch branch, double lambda);

/// Sharp constants of the weighted problem rebuilt from the reduced
/// one-dimensional bound; independent of the direct closed forms.
double reconstructed_constant_forward(const SpaceParams& sp);
double reconstructed_constant_adjoint(const SpaceParams& sp);

} // namespace hardy
