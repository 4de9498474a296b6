#include "hardy/operators.hpp"

#include <cmath>

namespace hardy {

const char* operator_kind_name(OperatorKind k) {
    switch (k) {
        case OperatorKind::Forward: return "forward";
        case OperatorKind::Adjoint: return "adjoint";
        case OperatorKind::ForwardP: return "forward-p";
    }
    return "?";
}

RadialProfile hardy_forward(const RadialProfile& f, const SpaceParams& sp) {
    auto out = cumulative_profile(f, sp.n);
    out.shift_exponent(sp.beta - sp.n);
    out.scale(sphere_area(sp.n) * std::pow(unit_ball_volume(sp.n), sp.beta / sp.n - 1.0));
    return out;
}

RadialProfile hardy_adjoint(const RadialProfile& f, const SpaceParams& sp) {
    auto out = tail_profile(f, sp.beta);
    out.scale(sphere_area(sp.n) * std::pow(unit_ball_volume(sp.n), sp.beta / sp.n - 1.0));
    return out;
}

RadialProfile hardy_forward_p(const RadialProfile& f, const SpaceParams& sp) {
    auto out = cumulative_profile(f, sp.n);
    out.shift_exponent(sp.beta - sp.n / sp.p);
    out.scale(sphere_area(sp.n) * std::pow(unit_ball_volume(sp.n), sp.beta / sp.n - 1.0 / sp.p));
    return out;
}

RadialProfile apply_operator(const RadialProfile& f, const SpaceParams& sp, OperatorKind kind) {
    switch (kind) {
        case OperatorKind::Forward: return hardy_forward(f, sp);
        case OperatorKind::Adjoint: return hardy_adjoint(f, sp);
        case OperatorKind::ForwardP: return hardy_forward_p(f, sp);
    }
    throw DomainError("unknown operator kind");
}

RadialProfile bare_forward(const RadialProfile& f, int n, double beta) {
    auto out = cumulative_profile(f, n);
    out.shift_exponent(beta - n);
    return out;
}

RadialProfile bare_adjoint(const RadialProfile& f, double beta) {
    return tail_profile(f, beta);
}

RadialProfile dilate(const RadialProfile& f, double t, int n) {
    if (!(t > 0.0) || !std::isfinite(t)) throw RangeError("dilation parameter must be positive");
    if (n < 1) throw DimensionError("dimension must be positive");
    return profile_rescale(f, std::pow(t, -static_cast<double>(n)), t);
}

double pair_forward(const RadialProfile& f, const RadialProfile& g, const SpaceParams& sp) {
    const auto hf = hardy_forward(f, sp);
    return sphere_area(sp.n) * integrate_product(hf, g, sp.n - 1.0);
}

double pair_adjoint(const RadialProfile& f, const RadialProfile& g, const SpaceParams& sp) {
    const auto hg = hardy_adjoint(g, sp);
    return sphere_area(sp.n) * integrate_product(f, hg, sp.n - 1.0);
}

double adjointness_residual(const RadialProfile& f, const RadialProfile& g,
                            const SpaceParams& sp) {
    const double a = pair_forward(f, g, sp);
    const double b = pair_adjoint(f, g, sp);
    const double scale = std::max(std::abs(a), 1e-300);
    return std::abs(a - b) / scale;
}

} // namespace hardy
