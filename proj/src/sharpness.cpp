#include "hardy/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <utility>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/reduction.hpp"

namespace hardy {

namespace {

std::string format_radius(double r) {
    if (std::isinf(r)) return "inf";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", r);
    return buf;
}

double witness_from(const WeakNormResult& wn) {
    if (wn.witness) return *wn.witness;
    switch (wn.flag) {
        case WeakNormFlag::SupLimitZero: return 0.0;
        case WeakNormFlag::SupLimitInf: return std::numeric_limits<double>::infinity();
        default: return std::numeric_limits<double>::quiet_NaN();
    }
}

double checked_input_norm(const RadialProfile& f, const SpaceParams& sp) {
    if (f.is_zero()) throw DomainError("ratio of the zero profile is undefined");
    const double fnorm = input_norm(f, sp);
    if (!std::isfinite(fnorm) || fnorm <= 0.0)
        throw DivergenceError("input norm of the test function is not finite and positive");
    return fnorm;
}

/// Exponent of the substitution that removes the input weight from the
/// averaging operator; its p = 1, alpha = 0 limit is n.
double averaging_substitution_exponent(const SpaceParams& sp) {
    if (sp.p == 1.0) return static_cast<double>(sp.n);
    return (sp.n * (sp.p - 1.0) - sp.alpha) / (sp.p - 1.0);
}

SharpnessReport forward_family_report(const SpaceParams& sp, double delta, double top_radius) {
    const double fam_expo = sp.p == 1.0 ? 0.0 : -sp.alpha / (sp.p - 1.0);
    RadialProfile f = RadialProfile::power(1.0, fam_expo, 0.0, top_radius - delta);

    // Score of the ball-average field with the p-dependent volume power,
    // compensated by the input weight so that its decay is exactly critical.
    RadialProfile field = hardy_forward_p(f, sp);
    field.shift_exponent(-sp.alpha / sp.p);

    const double fnorm = checked_input_norm(f, sp);
    const WeakNormResult wn = weak_norm(field, sp);

    SharpnessReport rep;
    rep.params = sp;
    rep.kind = OperatorKind::ForwardP;
    rep.formula_constant = c_sharp(sp);
    rep.test_function = describe_profile(f);
    if (sp.alpha != 0.0) rep.test_function += ", score taken with the r^{-alpha/p} compensated field";
    rep.profile = std::move(f);
    rep.ratio = wn.value / fnorm;
    rep.gap = rep.formula_constant - rep.ratio;
    rep.witness_lambda = witness_from(wn);
    rep.family_param = delta;
    return rep;
}

SharpnessReport adjoint_shell_report(const SpaceParams& sp, double eps) {
    RadialProfile shell = RadialProfile::indicator(1.0, 1.0 + eps);
    RadialProfile f = sp.alpha == 0.0 ? std::move(shell)
                                      : pull_back_profile_adjoint(shell, sp);
    SharpnessReport rep = ratio(f, sp, OperatorKind::Adjoint);
    rep.family_param = eps;
    return rep;
}

template <class Fn>
std::vector<SharpnessReport> parallel_reports(const std::vector<double>& schedule, Fn fn) {
    std::vector<SharpnessReport> out(schedule.size());
    std::exception_ptr first_error = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(schedule.size()); ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(schedule[static_cast<std::size_t>(i)]);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(hardy_sweep_error)
#endif
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

} // namespace

std::string describe_profile(const RadialProfile& f) {
    const auto& segs = f.segments();
    if (segs.empty()) return "zero profile";
    char buf[192];
    if (segs.size() == 1 && segs[0].terms.size() == 1) {
        const Segment& s = segs[0];
        const Term& t = s.terms[0];
        const std::string lo = format_radius(s.lo);
        const std::string hi = format_radius(s.hi);
        if (t.k == 0 && t.a == 0.0 && t.c == 1.0) {
            std::snprintf(buf, sizeof buf, "indicator of (%s, %s)", lo.c_str(), hi.c_str());
        } else if (t.k == 0 && t.c == 1.0) {
            std::snprintf(buf, sizeof buf, "r^%.6g on (%s, %s)", t.a, lo.c_str(), hi.c_str());
        } else if (t.k == 0) {
            std::snprintf(buf, sizeof buf, "%.6g r^%.6g on (%s, %s)", t.c, t.a, lo.c_str(),
                          hi.c_str());
        } else {
            std::snprintf(buf, sizeof buf, "%.6g r^%.6g ln(r)^%d on (%s, %s)", t.c, t.a, t.k,
                          lo.c_str(), hi.c_str());
        }
        return buf;
    }
    const auto [lo, hi] = f.support();
    std::snprintf(buf, sizeof buf, "piecewise profile, %zu pieces on (%s, %s)", segs.size(),
                  format_radius(lo).c_str(), format_radius(hi).c_str());
    return buf;
}

double c_sharp(const SpaceParams& sp) {
    const double ipp = inv_conjugate(sp.p);
    const double bracket = sp.n * (sp.p - 1.0) / (sp.n * (sp.p - 1.0) - sp.alpha);
    return pow_conv(bracket, ipp) * std::pow(sp.n / (sp.n + sp.gamma), 1.0 / sp.q) *
           std::pow(sp.ball_volume(), sp.beta / sp.n + 1.0 / sp.q - 1.0 / sp.p);
}

double c_sharp_adjoint(const SpaceParams& sp) {
    const double ipp = inv_conjugate(sp.p);
    return pow_conv(sp.q * ipp, ipp) * std::pow(sp.n / (sp.n + sp.gamma), ipp + 1.0 / sp.q) *
           std::pow(sp.ball_volume(), sp.beta / sp.n + 1.0 / sp.q - 1.0 / sp.p);
}

RadialProfile extremizer_forward(double delta, const SpaceParams& sp) {
    if (sp.alpha != 0.0)
        throw DomainError("the ball indicator family applies to an unweighted input space only");
    const double r0 = std::pow(sp.ball_volume(), -1.0 / sp.n);
    if (!(delta > 0.0) || !(delta < r0))
        throw RangeError("family parameter must lie strictly between 0 and the unit-volume radius");
    return RadialProfile::indicator(0.0, r0 - delta);
}

RadialProfile extremizer_adjoint(const SpaceParams& sp) {
    if (!(sp.p > 1.0))
        throw DomainError("the adjoint maximizer needs p > 1; use thin shells at p = 1");
    return RadialProfile::power(1.0, (sp.beta - sp.n) / (sp.p - 1.0), 1.0, kInfRadius);
}

SharpnessReport ratio(const RadialProfile& f, const SpaceParams& sp, OperatorKind kind) {
    const double fnorm = checked_input_norm(f, sp);
    const RadialProfile field = apply_operator(f, sp, kind);
    const WeakNormResult wn = weak_norm(field, sp);

    SharpnessReport rep;
    rep.params = sp;
    rep.kind = kind;
    rep.formula_constant = kind == OperatorKind::Adjoint ? c_sharp_adjoint(sp) : c_sharp(sp);
    rep.test_function = describe_profile(f);
    rep.profile = f;
    rep.ratio = wn.value / fnorm;
    rep.gap = rep.formula_constant - rep.ratio;
    rep.witness_lambda = witness_from(wn);
    return rep;
}

double forward_family_end(const SpaceParams& sp) {
    if (sp.p == 1.0 && sp.alpha != 0.0)
        throw DegenerateSubstitutionError(
            "no approximating family is available at p = 1 with a nonzero input weight");
    const double m = averaging_substitution_exponent(sp);
    return std::pow(sp.ball_volume(), -1.0 / m);
}

std::vector<SharpnessReport> sharpness_sweep(const SpaceParams& sp, OperatorKind kind,
                                             const std::vector<double>& schedule) {
    if (kind == OperatorKind::Forward || kind == OperatorKind::ForwardP) {
        const double top_radius = forward_family_end(sp);
        for (double delta : schedule)
            if (!(delta > 0.0) || !(delta < top_radius))
                throw RangeError(
                    "family parameter must lie strictly between 0 and the family end radius");
        return parallel_reports(schedule, [&](double delta) {
            return forward_family_report(sp, delta, top_radius);
        });
    }

    // Adjoint branch. For p > 1 a single test function already achieves the
    // constant, so the schedule is not consulted.
    if (sp.p > 1.0) {
        RadialProfile f =
            sp.alpha == 0.0
                ? extremizer_adjoint(sp)
                : pull_back_profile_adjoint(
                      extremizer_adjoint(reduced_space(sp, reduced_params_adjoint(sp))), sp);
        return {ratio(f, sp, OperatorKind::Adjoint)};
    }

    for (double eps : schedule)
        if (!(eps > 0.0) || std::isinf(eps))
            throw RangeError("shell width must be positive and finite");
    return parallel_reports(schedule, [&](double eps) { return adjoint_shell_report(sp, eps); });
}

RadialProfile random_admissible_profile(Rng& rng, int max_pieces) {
    if (max_pieces < 1) throw RangeError("a profile needs at least one piece");
    const int pieces = 1 + static_cast<int>(rng.uniform() * max_pieces) % max_pieces;
    std::vector<double> cuts(static_cast<std::size_t>(pieces) + 1);
    for (double& c : cuts) c = 0.05 * std::pow(400.0, rng.uniform());
    std::sort(cuts.begin(), cuts.end());
    std::vector<Segment> segs;
    for (int i = 0; i < pieces; ++i) {
        if (cuts[i + 1] <= cuts[i] * 1.05) continue;
        Segment s;
        s.lo = cuts[i];
        s.hi = cuts[i + 1];
        s.terms.push_back({0.2 + 1.8 * rng.uniform(), -1.5 + 3.0 * rng.uniform(), 0});
        segs.push_back(std::move(s));
    }
    if (segs.empty()) return RadialProfile::power(1.0, 0.0, 0.5, 2.0);
    return RadialProfile::from_segments(std::move(segs));
}

} // namespace hardy
