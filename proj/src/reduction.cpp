#include "hardy/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hardy/operators.hpp"
#include "hardy/weaknorm.hpp"

namespace hardy {

namespace {

void require_p_above_one(const SpaceParams& sp) {
    if (sp.p <= 1.0)
        throw DegenerateSubstitutionError(
            "input-weight substitution collapses at p = 1");
}

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError(std::string(what) + " must be positive and finite");
}

// Substitution exponent m in s = x^m / m; both branches keep m > 0 for every
// validated parameter set (forward additionally needs p > 1).
double forward_expo(const SpaceParams& sp) {
    return (sp.n * (sp.p - 1.0) - sp.alpha) / (sp.p - 1.0);
}

double adjoint_expo(const SpaceParams& sp) {
    return sp.n * (sp.alpha + sp.n - sp.p * sp.beta) / (sp.n - sp.beta);
}

// Exponent shift in g(s(x)) = f(x) x^shift.
double forward_shift(const SpaceParams& sp) {
    return sp.alpha / (sp.p - 1.0);
}

double adjoint_shift(const SpaceParams& sp) {
    return sp.beta * (sp.n * sp.p - sp.alpha - sp.n) / ((sp.n - sp.beta) * sp.p);
}

// Profile with value h(x) at s = A x^B (A, B > 0): each term is rewritten at
// x = (s/A)^{1/B} and breakpoints move forward through the map. A log factor
// becomes (ln s - ln A)/B, so k = 1 terms split into a k = 1 and a k = 0 part.
RadialProfile push_through(const RadialProfile& h, double A, double B) {
    const double log_a = std::log(A);
    std::vector<Segment> out;
    out.reserve(h.segments().size());
    for (const Segment& seg : h.segments()) {
        Segment ns;
        ns.lo = seg.lo <= 0.0 ? 0.0 : A * std::pow(seg.lo, B);
        ns.hi = std::isinf(seg.hi) ? kInfRadius : A * std::pow(seg.hi, B);
        for (const Term& t : seg.terms) {
            if (t.k > 1)
                throw UnsupportedExponentError(
                    "substitution would need a log power above 1");
            const double c0 = t.c * std::pow(A, -t.a / B);
            const double a0 = t.a / B;
            if (t.k == 0) {
                ns.terms.push_back({c0, a0, 0});
            } else {
                ns.terms.push_back({c0 / B, a0, 1});
                if (log_a != 0.0) ns.terms.push_back({-c0 * log_a / B, a0, 0});
            }
        }
        out.push_back(std::move(ns));
    }
    return RadialProfile::from_segments(std::move(out));
}

void check_reduced_invariants(const ReducedParams& red, const SpaceParams& sp) {
    const double residual =
        std::abs((red.gamma_red + 1.0) / sp.q + red.beta_red - 1.0 / sp.p);
    if (residual > 1e-12)
        throw ScalingError("reduced exponents violate the balance relation");
    if (!(red.beta_red >= 0.0 && red.beta_red < 1.0))
        throw RangeError("reduced beta outside [0, 1)");
}

} // namespace

const char* reduction_branch_name(ReductionBranch b) {
    return b == ReductionBranch::Forward ? "FORWARD" : "ADJOINT";
}

double substitute_forward(double x, const SpaceParams& sp) {
    require_p_above_one(sp);
    require_positive(x, "radius");
    const double m = forward_expo(sp);
    return std::pow(x, m) / m;
}

double substitute_forward_inverse(double s, const SpaceParams& sp) {
    require_p_above_one(sp);
    require_positive(s, "radius");
    const double m = forward_expo(sp);
    return std::pow(m * s, 1.0 / m);
}

double substitute_adjoint(double x, const SpaceParams& sp) {
    require_positive(x, "radius");
    const double m = adjoint_expo(sp);
    return std::pow(x, m) / m;
}

double substitute_adjoint_inverse(double s, const SpaceParams& sp) {
    require_positive(s, "radius");
    const double m = adjoint_expo(sp);
    return std::pow(m * s, 1.0 / m);
}

ReducedParams reduced_params_forward(const SpaceParams& sp) {
    require_p_above_one(sp);
    ReducedParams red;
    red.branch = ReductionBranch::Forward;
    red.gamma_red = (sp.alpha + sp.n - sp.beta * sp.p) * sp.q * (sp.p - 1.0) /
                        (sp.p * (sp.n * (sp.p - 1.0) - sp.alpha)) -
                    1.0;
    red.beta_red = (sp.beta * (sp.p - 1.0) - sp.alpha) /
                   (sp.n * (sp.p - 1.0) - sp.alpha);
    check_reduced_invariants(red, sp);
    return red;
}

ReducedParams reduced_params_adjoint(const SpaceParams& sp) {
    ReducedParams red;
    red.branch = ReductionBranch::Adjoint;
    red.gamma_red = sp.q * (sp.n - sp.beta) / (sp.p * sp.n) - 1.0;
    red.beta_red = sp.beta / (sp.p * sp.n);
    check_reduced_invariants(red, sp);
    return red;
}

SpaceParams reduced_space(const SpaceParams& sp, const ReducedParams& red) {
    RawParams raw;
    raw.n = 1;
    raw.p = sp.p;
    raw.beta = red.beta_red;
    raw.q = sp.q;
    raw.alpha = red.alpha_red;
    raw.gamma = red.gamma_red;
    return red.branch == ReductionBranch::Forward ? validate_forward(raw)
                                                  : validate_adjoint(raw);
}

RadialProfile transform_profile_forward(const RadialProfile& f, const SpaceParams& sp) {
    require_p_above_one(sp);
    const double m = forward_expo(sp);
    RadialProfile fx = f;
    fx.shift_exponent(forward_shift(sp));
    return push_through(fx, 1.0 / m, m);
}

RadialProfile transform_profile_adjoint(const RadialProfile& f, const SpaceParams& sp) {
    const double m = adjoint_expo(sp);
    RadialProfile fx = f;
    fx.shift_exponent(adjoint_shift(sp));
    return push_through(fx, 1.0 / m, m);
}

RadialProfile pull_back_profile_forward(const RadialProfile& g, const SpaceParams& sp) {
    require_p_above_one(sp);
    const double m = forward_expo(sp);
    RadialProfile f = push_through(g, std::pow(m, 1.0 / m), 1.0 / m);
    f.shift_exponent(-forward_shift(sp));
    return f;
}

RadialProfile pull_back_profile_adjoint(const RadialProfile& g, const SpaceParams& sp) {
    const double m = adjoint_expo(sp);
    RadialProfile f = push_through(g, std::pow(m, 1.0 / m), 1.0 / m);
    f.shift_exponent(-adjoint_shift(sp));
    return f;
}

double reduction_prefactor_forward(const SpaceParams& sp) {
    require_p_above_one(sp);
    const double kappa = 1.0 / forward_expo(sp);
    return std::pow(kappa, inv_conjugate(sp.p) + 1.0 / sp.q);
}

double reduction_prefactor_adjoint(const SpaceParams& sp) {
    const double kappa = 1.0 / adjoint_expo(sp);
    return std::pow(kappa, 1.0 + 1.0 / sp.q - 1.0 / sp.p);
}

double norm_preservation_residual(const RadialProfile& f, const SpaceParams& sp,
                                  ReductionBranch branch) {
    const bool fwd = branch == ReductionBranch::Forward;
    const RadialProfile g = fwd ? transform_profile_forward(f, sp)
                                : transform_profile_adjoint(f, sp);
    const double lhs =
        lp_weighted_norm(f, sp.p, sp.alpha, sp.n) / std::pow(sp.sphere(), 1.0 / sp.p);
    const double rhs =
        lp_weighted_norm(g, sp.p, 0.0, 1) / std::pow(2.0, 1.0 / sp.p);
    const double scale = std::max({lhs, rhs, 1e-300});
    return std::abs(lhs - rhs) / scale;
}

double commutation_residual(const RadialProfile& f, const SpaceParams& sp,
                            ReductionBranch branch, double lambda) {
    require_positive(lambda, "level");
    const bool fwd = branch == ReductionBranch::Forward;
    const double kappa =
        fwd ? 1.0 / forward_expo(sp) : 1.0 / adjoint_expo(sp);
    const ReducedParams red =
        fwd ? reduced_params_forward(sp) : reduced_params_adjoint(sp);
    const RadialProfile g = fwd ? transform_profile_forward(f, sp)
                                : transform_profile_adjoint(f, sp);
    const RadialProfile field = fwd ? bare_forward(f, sp.n, sp.beta)
                                    : bare_adjoint(f, sp.beta);
    const RadialProfile field_red = fwd ? bare_forward(g, 1, red.beta_red)
                                        : bare_adjoint(g, red.beta_red);
    // The constant-free operators differ by the factor kappa^{1-beta_red}
    // along the substitution, so the level maps accordingly.
    const double lambda_red = lambda * std::pow(kappa, red.beta_red - 1.0);
    const double len =
        superlevel_weighted_length(field, lambda, sp.gamma + sp.n - 1.0);
    const double len_red =
        superlevel_weighted_length(field_red, lambda_red, red.gamma_red);
    if (std::isinf(len) || std::isinf(len_red))
        return (std::isinf(len) && std::isinf(len_red))
                   ? 0.0
                   : std::numeric_limits<double>::infinity();
    const double inv_q = 1.0 / sp.q;
    const double lhs = lambda * std::pow(len, inv_q);
    const double pref = fwd ? reduction_prefactor_forward(sp)
                            : reduction_prefactor_adjoint(sp);
    const double rhs = pref * lambda_red * std::pow(len_red, inv_q);
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return std::abs(lhs - rhs) / scale;
}

double reconstructed_constant_forward(const SpaceParams& sp) {
    const ReducedParams red = reduced_params_forward(sp);
    const double ipp = inv_conjugate(sp.p);
    const double red_bound = std::pow(1.0 + red.gamma_red, -1.0 / sp.q);
    return reduction_prefactor_forward(sp) * red_bound *
           std::pow(sp.ball_volume(), sp.beta / sp.n + 1.0 / sp.q - 1.0 / sp.p) *
           std::pow(static_cast<double>(sp.n), ipp + 1.0 / sp.q);
}

double reconstructed_constant_adjoint(const SpaceParams& sp) {
    const ReducedParams red = reduced_params_adjoint(sp);
    const double ipp = inv_conjugate(sp.p);
    const double red_bound =
        pow_conv(sp.q / conjugate_exponent(sp.p), ipp) *
        std::pow(1.0 + red.gamma_red, -(ipp + 1.0 / sp.q));
    return reduction_prefactor_adjoint(sp) * red_bound *
           std::pow(sp.ball_volume(), sp.beta / sp.n + 1.0 / sp.q - 1.0 / sp.p) *
           std::pow(static_cast<double>(sp.n), ipp + 1.0 / sp.q);
}

} // namespace hardy
