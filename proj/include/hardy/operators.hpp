#pragma once

#include "hardy/params.hpp"
#include "hardy/profile.hpp"

namespace hardy {

enum class OperatorKind { Forward, Adjoint, ForwardP };

const char* operator_kind_name(OperatorKind k);

/// Averaging operator (ball_volume r^n)^{beta/n - 1} * sphere_area *
/// int_0^r f(t) t^{n-1} dt, the radial form of averaging |f| over the ball
/// through |x| with a power of the ball volume in front.
RadialProfile hardy_forward(const RadialProfile& f, const SpaceParams& sp);

/// Adjoint: sphere_area * ball_volume^{beta/n-1} * int_r^inf f(t) t^{beta-1} dt.
RadialProfile hardy_adjoint(const RadialProfile& f, const SpaceParams& sp);

/// Auxiliary variant with exponent beta/n - 1/p in front of the cumulative
/// integral. It minorizes the forward operator inside the ball of unit
/// volume and majorizes it outside; it is defined for all radii.
RadialProfile hardy_forward_p(const RadialProfile& f, const SpaceParams& sp);

RadialProfile apply_operator(const RadialProfile& f, const SpaceParams& sp, OperatorKind kind);

/// Constant-free radial forms used by the dimension-reduction identities:
/// r^{beta-n} int_0^r f t^{n-1} dt, and int_r^inf f t^{beta-1} dt.
RadialProfile bare_forward(const RadialProfile& f, int n, double beta);
RadialProfile bare_adjoint(const RadialProfile& f, double beta);

/// L1-normalized dilation t^{-n} f(r/t); requires t > 0.
RadialProfile dilate(const RadialProfile& f, double t, int n);

/// <H f, g> and <f, H* g> with the full-space pairing
/// sphere_area * int u v r^{n-1} dr. Equal by Fubini for admissible pairs.
double pair_forward(const RadialProfile& f, const RadialProfile& g, const SpaceParams& sp);
double pair_adjoint(const RadialProfile& f, const RadialProfile& g, const SpaceParams& sp);

/// |<Hf,g> - <f,H*g>| / max(|<Hf,g>|, tiny).
double adjointness_residual(const RadialProfile& f, const RadialProfile& g,
                            const SpaceParams& sp);

} // namespace hardy
