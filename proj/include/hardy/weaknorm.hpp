#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hardy/params.hpp"
#include "hardy/profile.hpp"

namespace hardy {

/// How the supremum defining the weak norm is realized.
///  - SupAttained: some positive level achieves it (witness holds that level).
///  - SupLimitZero: approached only as the level tends to zero.
///  - SupLimitInf: approached only as the level tends to infinity.
///  - ConstantInLambda: the score is the same at every level (critical power).
enum class WeakNormFlag { SupAttained, SupLimitZero, SupLimitInf, ConstantInLambda };

const char* weak_norm_flag_name(WeakNormFlag flag);

struct WeakNormResult {
    double value = 0.0;
    std::optional<double> witness;
    WeakNormFlag flag = WeakNormFlag::SupAttained;
    /// Decimated (level, score) samples, for diagnostics and reports.
    std::vector<std::pair<double, double>> probes;
};

/// Weighted length of {r > 0 : |g(r)| > level} against r^wexp dr (>= when
/// strict is false). Returns +inf when that set has infinite weighted length.
/// Requires level > 0 and wexp > -1.
double superlevel_weighted_length(const RadialProfile& g, double level, double wexp,
                                  bool strict = true);

/// Measure of {x : |g(|x|)| > level} against |x|^gamma dx in n dimensions.
/// Throws DivergenceError when infinite.
double superlevel_measure(const RadialProfile& g, double level, double gamma, int n,
                          bool strict = true);
double superlevel_measure(const RadialProfile& g, double level, const SpaceParams& sp,
                          bool strict = true);

/// level * superlevel_measure(g, level)^(1/q).
double level_score(const RadialProfile& g, double level, const SpaceParams& sp,
                   bool strict = true);

/// sup over level > 0 of level_score. Throws DivergenceError when the
/// supremum is infinite (slow tails, strong origin blowup, or a critical
/// power carrying a log factor).
WeakNormResult weak_norm(const RadialProfile& g, const SpaceParams& sp);

/// ||g|| in L^q with weight |x|^gamma, and ||f|| in L^p with weight |x|^alpha.
double strong_norm(const RadialProfile& g, double q, double gamma, int n);
double strong_norm(const RadialProfile& g, const SpaceParams& sp);
double input_norm(const RadialProfile& f, const SpaceParams& sp);

} // namespace hardy
