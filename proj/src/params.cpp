#include "hardy/params.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace hardy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kScalingTol = 1e-12;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

} // namespace

double unit_ball_volume(int n) {
    if (n < 1) throw DimensionError("dimension must be a positive integer, got " + std::to_string(n));
    switch (n) {
        case 1: return 2.0;
        case 2: return std::numbers::pi;
        case 3: return 4.0 * std::numbers::pi / 3.0;
        default:
            return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
    }
}

double sphere_area(int n) { return n * unit_ball_volume(n); }

double conjugate_exponent(double p) {
    if (p < 1.0 || !std::isfinite(p)) throw RangeError("p must lie in [1, inf), got " + fmt(p));
    if (p == 1.0) return kInf;
    return p / (p - 1.0);
}

double inv_conjugate(double p) {
    if (p < 1.0 || !std::isfinite(p)) throw RangeError("p must lie in [1, inf), got " + fmt(p));
    return 1.0 - 1.0 / p;
}

double pow_conv(double base, double expo) {
    if (expo == 0.0) return 1.0;
    return std::pow(base, expo);
}

double scaling_residual(const SpaceParams& sp) {
    return (sp.gamma + sp.n) / sp.q + sp.beta - (sp.alpha + sp.n) / sp.p;
}

namespace {

enum class Branch { Forward, Adjoint };

Validation fail(const std::string& kind, const std::string& msg) {
    return Validation{std::nullopt, kind, msg};
}

Validation validate_impl(const RawParams& raw, Branch branch) {
    if (raw.n < 1)
        return fail("DimensionError", "dimension must be a positive integer, got " + std::to_string(raw.n));
    if (!std::isfinite(raw.p) || raw.p < 1.0)
        return fail("RangeError", "p must lie in [1, inf), got " + fmt(raw.p));
    if (!std::isfinite(raw.beta) || raw.beta < 0.0 || raw.beta >= raw.n)
        return fail("RangeError", "beta must lie in [0, n), got " + fmt(raw.beta));
    if (raw.q && (!std::isfinite(*raw.q) || *raw.q <= 1.0))
        return fail("RangeError", "q must lie in (1, inf), got " + fmt(*raw.q));
    if (raw.alpha && !std::isfinite(*raw.alpha))
        return fail("RangeError", "alpha must be finite");
    if (raw.gamma && (!std::isfinite(*raw.gamma) || *raw.gamma <= -static_cast<double>(raw.n)))
        return fail("RangeError", "gamma must exceed -n, got " + fmt(*raw.gamma));

    const int unknowns = (raw.q ? 0 : 1) + (raw.alpha ? 0 : 1) + (raw.gamma ? 0 : 1);
    if (unknowns > 1)
        return fail("DomainError", "at most one of {q, alpha, gamma} may be left unspecified");

    // Branch constraints involve only members that are always present once
    // alpha is given or solvable; when alpha itself is the unknown the
    // constraint is checked after solving.
    const double n = raw.n;
    const double p = raw.p;
    const double beta = raw.beta;

    auto check_branch = [&](double alpha) -> std::optional<Validation> {
        if (branch == Branch::Forward) {
            const double bound = beta * (p - 1.0);
            if (alpha > bound + kScalingTol)
                return fail("ForwardConstraintError",
                            "alpha = " + fmt(alpha) + " exceeds beta*(p-1) = " + fmt(bound));
        } else {
            const double margin = (alpha + n) / p - beta;
            if (margin <= kScalingTol)
                return fail("AdjointConstraintError",
                            "(alpha+n)/p - beta = " + fmt(margin) + " must be positive");
        }
        return std::nullopt;
    };

    SpaceParams sp;
    sp.n = raw.n;
    sp.p = p;
    sp.beta = beta;

    if (raw.alpha) {
        sp.alpha = *raw.alpha;
        if (auto bad = check_branch(sp.alpha)) return *bad;
    }

    if (!raw.q) {
        sp.alpha = *raw.alpha;
        sp.gamma = *raw.gamma;
        const double inv_q = ((sp.alpha + n) / p - beta) / (sp.gamma + n);
        if (!(inv_q > 0.0) || !(inv_q < 1.0))
            return fail("RangeError",
                        "solved q = " + fmt(1.0 / inv_q) + " falls outside (1, inf)");
        sp.q = 1.0 / inv_q;
    } else if (!raw.gamma) {
        sp.alpha = *raw.alpha;
        sp.q = *raw.q;
        sp.gamma = sp.q * ((sp.alpha + n) / p - beta) - n;
        if (sp.gamma <= -n)
            return fail("RangeError", "solved gamma = " + fmt(sp.gamma) + " must exceed -n");
    } else if (!raw.alpha) {
        sp.q = *raw.q;
        sp.gamma = *raw.gamma;
        sp.alpha = p * ((sp.gamma + n) / sp.q + beta) - n;
        if (auto bad = check_branch(sp.alpha)) return *bad;
    } else {
        sp.q = *raw.q;
        sp.gamma = *raw.gamma;
        sp.alpha = *raw.alpha;
        const double res = scaling_residual(sp);
        if (std::abs(res) > kScalingTol)
            return fail("ScalingError",
                        "exponent balance (gamma+n)/q + beta = (alpha+n)/p violated, residual " + fmt(res));
    }

    return Validation{sp, "", ""};
}

SpaceParams unwrap(const Validation& v) {
    if (v.ok()) return *v.params;
    const std::string& k = v.error_kind;
    if (k == "DimensionError") throw DimensionError(v.message);
    if (k == "RangeError") throw RangeError(v.message);
    if (k == "ScalingError") throw ScalingError(v.message);
    if (k == "ForwardConstraintError") throw ForwardConstraintError(v.message);
    if (k == "AdjointConstraintError") throw AdjointConstraintError(v.message);
    if (k == "DomainError") throw DomainError(v.message);
    throw Error("Error", v.message);
}

} // namespace

Validation try_validate_forward(const RawParams& raw) { return validate_impl(raw, Branch::Forward); }
Validation try_validate_adjoint(const RawParams& raw) { return validate_impl(raw, Branch::Adjoint); }

SpaceParams validate_forward(const RawParams& raw) { return unwrap(try_validate_forward(raw)); }
SpaceParams validate_adjoint(const RawParams& raw) { return unwrap(try_validate_adjoint(raw)); }

} // namespace hardy
