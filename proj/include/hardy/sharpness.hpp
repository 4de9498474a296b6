#pragma once

#include <limits>
#include <string>
#include <vector>

#include "hardy/operators.hpp"
#include "hardy/params.hpp"
#include "hardy/profile.hpp"
#include "hardy/rng.hpp"
#include "hardy/weaknorm.hpp"

namespace hardy {

/// One ratio experiment: a test function, the operator applied to it, the
/// weak-to-strong norm ratio it achieves, and the closed-form constant it is
/// measured against.
struct SharpnessReport {
    SpaceParams params;
    OperatorKind kind = OperatorKind::Forward;
    double formula_constant = 0.0;
    std::string test_function;
    RadialProfile profile;
    double ratio = 0.0;
    double gap = 0.0;            // formula_constant - ratio
    double witness_lambda = 0.0; // 0 / inf when the sup lives at a level-set end
    double family_param = std::numeric_limits<double>::quiet_NaN(); // sweep knob
};

/// Short human-readable summary of a profile, used in reports and CLI tables.
std::string describe_profile(const RadialProfile& f);

/// Closed-form operator norm of the averaging operator from the weighted
/// strong space to the weighted weak space; p = 1 uses the convention that
/// every (.)^{1/p'} factor equals one.
double c_sharp(const SpaceParams& sp);

/// Closed-form operator norm for the adjoint operator.
double c_sharp_adjoint(const SpaceParams& sp);

/// Ball indicator family for the unweighted-input problem: the indicator of
/// (0, r0 - delta) where r0^n ball_volume = 1. Requires alpha = 0
/// (DomainError) and 0 < delta < r0 (RangeError).
RadialProfile extremizer_forward(double delta, const SpaceParams& sp);

/// Exact maximizer of the adjoint ratio for alpha = 0:
/// r^{(beta-n)/(p-1)} outside the unit ball. Requires p > 1 (DomainError);
/// at p = 1 the role is played by thin shells, see sharpness_sweep.
RadialProfile extremizer_adjoint(const SpaceParams& sp);

/// Weak/strong norm ratio of one test function under one operator, packaged
/// with the matching closed-form constant.
SharpnessReport ratio(const RadialProfile& f, const SpaceParams& sp, OperatorKind kind);

/// Right endpoint X0 of the forward family's support at delta = 0; sweep
/// schedules must stay strictly inside (0, X0). Throws
/// DegenerateSubstitutionError for p = 1 with a nonzero input power.
double forward_family_end(const SpaceParams& sp);

/// Family sweep approaching the sharp constant.
///
/// Forward branch: the weight-matched ball family x^{-alpha/(p-1)} on
/// (0, X0 - delta) with X0 = ball_volume^{-1/m}, m the substitution exponent;
/// this is the pull-back of the one-dimensional ball family and its ratio is
/// c_sharp (1 - delta/X0)^{m/p'} exactly, so gaps shrink to zero with delta.
/// Undefined for p = 1 with alpha < 0 (DegenerateSubstitutionError).
///
/// Adjoint branch: for p > 1 a single exact report (the maximizer for
/// alpha = 0, its pull-back otherwise); for p = 1 thin shells with widths
/// taken from the schedule.
std::vector<SharpnessReport> sharpness_sweep(const SpaceParams& sp, OperatorKind kind,
                                             const std::vector<double>& schedule);

/// Random profile with 1..max_pieces plain power pieces and support bounded
/// away from 0 and infinity, so every norm the library takes is finite.
RadialProfile random_admissible_profile(Rng& rng, int max_pieces = 5);

} // namespace hardy
