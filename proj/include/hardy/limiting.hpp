#pragma once

#include <string>
#include <vector>

#include "hardy/params.hpp"
#include "hardy/profile.hpp"

namespace hardy {

/// Level-by-level record of lambda * |{H f > lambda}|^{1/q} for the
/// averaging operator against plain Lebesgue measure (both weights zero).
/// As the level drops, the score approaches the L^1 mass of f when p = 1
/// and zero when p > 1.
struct LimitTrace {
    SpaceParams params;
    std::vector<double> lambdas; // strictly decreasing, positive
    std::vector<double> scores;
    double extrapolated_limit = 0.0;
    double target = 0.0; // L^1 mass for p = 1, zero for p > 1
};

/// Runs the level schedule for one profile. Requires alpha = gamma = 0
/// (DomainError), a strictly decreasing positive schedule (RangeError), a
/// nonnegative profile (DomainError; checked at sample points) and a finite
/// input norm (DivergenceError). The extrapolated limit is a three-point
/// difference-ratio estimate from the last scores, exact for corrections of
/// the form c * lambda^k sampled on a geometric schedule.
LimitTrace limiting_weak(const RadialProfile& f, const SpaceParams& sp,
                         const std::vector<double>& lambda_schedule);

/// Relative residual of the dilation identity at p = 1:
/// lambda |{H f_t > lambda}|^{(n-beta)/n} equals
/// t^{n-beta} lambda |{H f > t^{n-beta} lambda}|^{(n-beta)/n},
/// where f_t = t^{-n} f(r/t). Zero in exact arithmetic for the closed
/// profile family. Requires p = 1 and alpha = gamma = 0 (DomainError),
/// t > 0 and lambda > 0 (RangeError).
double scaling_identity_check(const RadialProfile& f, double t, double lambda,
                              const SpaceParams& sp);

/// Where the mass of the shrinking dilates f_t lives: the core radius R is
/// the smallest radius holding all but epsilon of the L^1 mass of f, and the
/// dilate f_t holds the same mass inside radius R * t.
struct MassConcentrationReport {
    bool applicable = true; // false when the L^1 mass is infinite
    std::string note;
    double total_mass = 0.0;
    double epsilon = 0.0;
    double core_radius = 0.0;          // R; zero when epsilon >= total mass
    std::vector<double> ts;
    std::vector<double> radii;         // R * t per schedule entry
    bool radii_vanishing = false;      // strictly decreasing, or all zero
};

MassConcentrationReport mass_concentration_check(const RadialProfile& f, double epsilon,
                                                 const std::vector<double>& t_schedule, int n);

} // namespace hardy
