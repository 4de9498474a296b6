#include "hardy/field.hpp"

#include <cmath>
#include <utility>

#include "hardy/errors.hpp"

namespace hardy {

namespace {

double radius_of(std::span<const double> y) {
    double s = 0.0;
    for (double c : y) s += c * c;
    return std::sqrt(s);
}

} // namespace

ScalarField field_from_profile(RadialProfile f) {
    const auto hi = f.support().second;
    ScalarField F;
    F.support_radius = hi;
    F.evaluator = [f = std::move(f)](std::span<const double> y) {
        return std::abs(f(std::max(radius_of(y), 1e-300)));
    };
    return F;
}

ScalarField field_ball(double radius) {
    if (!(radius > 0.0) || std::isinf(radius))
        throw RangeError("ball radius must be positive and finite");
    ScalarField F;
    F.support_radius = radius;
    F.evaluator = [radius](std::span<const double> y) {
        return radius_of(y) < radius ? 1.0 : 0.0;
    };
    return F;
}

ScalarField field_offset_gaussian(int n) {
    if (n < 1) throw DimensionError("dimension must be a positive integer");
    ScalarField F;
    F.support_radius = 7.0;
    F.evaluator = [](std::span<const double> y) {
        const double r = radius_of(y);
        if (r > 7.0) return 0.0;
        double d2 = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double d = y[i] - (i == 0 ? 1.0 : 0.0);
            d2 += d * d;
        }
        return std::exp(-d2);
    };
    return F;
}

ScalarField field_abs_first_coordinate(double cut) {
    if (!(cut > 0.0) || std::isinf(cut))
        throw RangeError("cutoff radius must be positive and finite");
    ScalarField F;
    F.support_radius = cut;
    F.evaluator = [cut](std::span<const double> y) {
        return radius_of(y) <= cut ? std::abs(y[0]) : 0.0;
    };
    return F;
}

} // namespace hardy
