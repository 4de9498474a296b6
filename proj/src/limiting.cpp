#include "hardy/limiting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>

#include "hardy/errors.hpp"
#include "hardy/operators.hpp"
#include "hardy/weaknorm.hpp"

namespace hardy {

namespace {

void require_unweighted(const SpaceParams& sp) {
    if (sp.alpha != 0.0 || sp.gamma != 0.0)
        throw DomainError("the limiting experiment is stated for unweighted spaces only");
}

void require_sampled_nonnegative(const RadialProfile& f) {
    for (const Segment& seg : f.segments()) {
        const double hi = std::isinf(seg.hi) ? seg.lo * 1024.0 + 1024.0 : seg.hi;
        const double lo = std::max(seg.lo, hi * 1e-12);
        for (int i = 0; i < 8; ++i) {
            const double r = lo * std::pow(hi / lo, (i + 0.5) / 8.0);
            if (segment_value(seg, r) < 0.0)
                throw DomainError("profile must be nonnegative for the limiting experiment");
        }
    }
}

/// Three-point difference-ratio extrapolation; exact when the tail of the
/// sequence is L + c * rho^i, which is what a c * lambda^k correction looks
/// like on a geometric level schedule.
double extrapolate(const std::vector<double>& s) {
    const std::size_t k = s.size();
    if (k == 0) return 0.0;
    if (k < 3) return s.back();
    const double s0 = s[k - 3], s1 = s[k - 2], s2 = s[k - 1];
    const double d1 = s1 - s0;
    const double d2 = s2 - s1;
    const double denom = d2 - d1;
    const double scale = std::max({std::abs(s0), std::abs(s1), std::abs(s2), 1e-300});
    if (std::abs(denom) <= 1e-14 * scale) return s2;   // already converged
    if (std::abs(d2) >= std::abs(d1)) return s2;       // not contracting
    return s2 - d2 * d2 / denom;
}

} // namespace

LimitTrace limiting_weak(const RadialProfile& f, const SpaceParams& sp,
                         const std::vector<double>& lambda_schedule) {
    require_unweighted(sp);
    if (lambda_schedule.empty())
        throw RangeError("level schedule must contain at least one level");
    for (std::size_t i = 0; i < lambda_schedule.size(); ++i) {
        if (!(lambda_schedule[i] > 0.0) || !std::isfinite(lambda_schedule[i]))
            throw RangeError("levels must be positive and finite");
        if (i > 0 && !(lambda_schedule[i] < lambda_schedule[i - 1]))
            throw RangeError("level schedule must be strictly decreasing");
    }
    require_sampled_nonnegative(f);

    const double fnorm = input_norm(f, sp);
    if (!std::isfinite(fnorm))
        throw DivergenceError("input norm must be finite for the limiting experiment");

    LimitTrace trace;
    trace.params = sp;
    trace.lambdas = lambda_schedule;
    trace.scores.assign(lambda_schedule.size(), 0.0);
    trace.target = sp.p == 1.0 ? lp_weighted_norm(f, 1.0, 0.0, sp.n) : 0.0;

    const RadialProfile field = hardy_forward(f, sp);
    std::exception_ptr first_error = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(lambda_schedule.size()); ++i) {
        try {
            const auto idx = static_cast<std::size_t>(i);
            trace.scores[idx] = level_score(field, lambda_schedule[idx], sp);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(hardy_limit_error)
#endif
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);

    trace.extrapolated_limit = extrapolate(trace.scores);
    return trace;
}

double scaling_identity_check(const RadialProfile& f, double t, double lambda,
                              const SpaceParams& sp) {
    if (sp.p != 1.0)
        throw DomainError("the dilation identity is stated at p = 1");
    require_unweighted(sp);
    if (!(t > 0.0) || !std::isfinite(t)) throw RangeError("dilation factor must be positive");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw RangeError("level must be positive");

    const double power = (sp.n - sp.beta) / sp.n; // equals 1/q here
    const RadialProfile dilated_field = hardy_forward(dilate(f, t, sp.n), sp);
    const RadialProfile field = hardy_forward(f, sp);

    const double lhs =
        lambda * std::pow(superlevel_measure(dilated_field, lambda, 0.0, sp.n), power);
    const double mapped = std::pow(t, sp.n - sp.beta) * lambda;
    const double rhs =
        mapped * std::pow(superlevel_measure(field, mapped, 0.0, sp.n), power);

    const double denom = std::max(std::abs(lhs), std::abs(rhs));
    if (denom == 0.0) return 0.0;
    return std::abs(lhs - rhs) / denom;
}

MassConcentrationReport mass_concentration_check(const RadialProfile& f, double epsilon,
                                                 const std::vector<double>& t_schedule, int n) {
    if (!(epsilon > 0.0)) throw RangeError("mass tolerance must be positive");

    MassConcentrationReport rep;
    rep.epsilon = epsilon;
    rep.ts = t_schedule;
    rep.total_mass = lp_weighted_norm(f, 1.0, 0.0, n);
    if (!std::isfinite(rep.total_mass)) {
        rep.applicable = false;
        rep.note = "infinite mass, no concentration radius exists";
        return rep;
    }

    if (epsilon >= rep.total_mass) {
        rep.core_radius = 0.0;
    } else {
        // The cumulative mass sphere_area * int_0^r f t^{n-1} dt is continuous
        // and nondecreasing; bisect it against total - epsilon.
        const RadialProfile cum = cumulative_profile(f, n);
        const double w = sphere_area(n);
        const double want = rep.total_mass - epsilon;
        double hi = std::max(f.support().second, 1.0);
        if (std::isinf(hi)) {
            hi = std::max(f.support().first, 1.0);
            while (w * cum(hi) <= want && hi < 1e300) hi *= 2.0;
        }
        double lo = 0.0;
        for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (w * cum(mid) >= want ? hi : lo) = mid;
        }
        rep.core_radius = hi;
    }

    rep.radii.reserve(t_schedule.size());
    for (double t : t_schedule) rep.radii.push_back(rep.core_radius * t);
    rep.radii_vanishing = true;
    for (std::size_t i = 0; i < rep.radii.size(); ++i) {
        const bool zero = rep.radii[i] == 0.0;
        const bool below_prev = i == 0 || rep.radii[i] < rep.radii[i - 1];
        if (!zero && !below_prev) rep.radii_vanishing = false;
    }
    return rep;
}

} // namespace hardy
