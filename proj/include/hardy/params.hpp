#pragma once

#include <optional>
#include <string>

#include "hardy/errors.hpp"

namespace hardy {

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// Surface area of the unit sphere in R^n (n times the ball volume).
double sphere_area(int n);

/// Hoelder conjugate p' = p/(p-1); +inf when p = 1.
double conjugate_exponent(double p);

/// 1/p' = 1 - 1/p; zero when p = 1.
double inv_conjugate(double p);

/// pow with the limiting convention used throughout: base^0 == 1 for every
/// base (including 0^0 and inf^0), so p = 1 formulas degrade gracefully.
double pow_conv(double base, double expo);

/// Fully determined exponent tuple for the weighted weak-type problem.
/// Invariant, maintained by the validators: (gamma+n)/q + beta = (alpha+n)/p.
struct SpaceParams {
    int n = 1;
    double p = 1.0;
    double q = 2.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;

    double pprime() const { return conjugate_exponent(p); }
    double ball_volume() const { return unit_ball_volume(n); }
    double sphere() const { return sphere_area(n); }
};

/// Input tuple; exactly one of {q, alpha, gamma} may be left unset and is
/// then solved from the exponent balance relation.
struct RawParams {
    int n = 1;
    double p = 1.0;
    double beta = 0.0;
    std::optional<double> q;
    std::optional<double> alpha;
    std::optional<double> gamma;
};

/// Non-throwing validation outcome; `error_kind` matches the exception class
/// name that the throwing validators would raise.
struct Validation {
    std::optional<SpaceParams> params;
    std::string error_kind;
    std::string message;
    bool ok() const { return params.has_value(); }
};

/// Residual of the exponent balance relation (gamma+n)/q + beta - (alpha+n)/p.
double scaling_residual(const SpaceParams& sp);

Validation try_validate_forward(const RawParams& raw);
Validation try_validate_adjoint(const RawParams& raw);

/// Throwing validators. Check order: dimension and plain ranges first, then
/// the branch constraint (alpha <= beta(p-1) forward, (alpha+n)/p - beta > 0
/// adjoint), then the balance relation at absolute tolerance 1e-12, then the
/// range of any solved member.
SpaceParams validate_forward(const RawParams& raw);
SpaceParams validate_adjoint(const RawParams& raw);

} // namespace hardy
