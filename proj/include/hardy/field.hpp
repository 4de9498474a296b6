#pragma once

#include <functional>
#include <span>

#include "hardy/profile.hpp"

namespace hardy {

/// A nonnegative function on R^n given by point evaluation, for brute-force
/// cross-checks against the closed-form radial machinery. The evaluator
/// vanishes outside the ball of `support_radius` (infinite when unbounded).
struct ScalarField {
    std::function<double(std::span<const double>)> evaluator;
    double support_radius = kInfRadius;
};

/// The radial field f(|y|).
ScalarField field_from_profile(RadialProfile f);

/// Indicator of the centered ball of radius R.
ScalarField field_ball(double radius);

/// exp(-|y - e1|^2), a smooth bump centered on the first unit vector; cut
/// off at |y| = 7, far below double precision of its values there.
ScalarField field_offset_gaussian(int n);

/// |y_1| restricted to the ball |y| <= cut; its spherical average in n = 2
/// is (2/pi) r exactly, which makes it a sharp oracle case.
ScalarField field_abs_first_coordinate(double cut);

} // namespace hardy
