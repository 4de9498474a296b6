#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/params.hpp"

namespace hardy {

constexpr double kInfRadius = std::numeric_limits<double>::infinity();

/// One power-log summand c * r^a * (ln r)^k. Stored profiles keep k in {0,1};
/// k = 2 appears transiently inside integrals of products only.
struct Term {
    double c = 0.0;
    double a = 0.0;
    int k = 0;
};

/// Half-open radial interval [lo, hi) carrying the sum of its terms.
/// Radii not covered by any segment carry the value zero.
struct Segment {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<Term> terms;
};

/// Exact piecewise representation of a radial function on (0, inf).
/// Closed under the averaging operators, their adjoints, dilation and sums;
/// every integral the library needs evaluates in closed form.
class RadialProfile {
public:
    RadialProfile() = default;

    static RadialProfile zero() { return RadialProfile(); }
    static RadialProfile indicator(double lo, double hi);
    static RadialProfile power(double c, double a, double lo, double hi);
    static RadialProfile power_log(double c, double a, int k, double lo, double hi);
    static RadialProfile from_segments(std::vector<Segment> segs);

    /// Point evaluation; r must be positive and finite.
    double operator()(double r) const;

    bool is_zero() const { return segs_.empty(); }
    const std::vector<Segment>& segments() const { return segs_; }

    /// Largest log power appearing in any stored term.
    int max_logpow() const;

    /// Support bounds: {lo of first segment, hi of last segment};
    /// {0, 0} for the zero profile.
    std::pair<double, double> support() const;

    RadialProfile& scale(double s);
    RadialProfile& shift_exponent(double da);   // multiply by r^da
    RadialProfile plus(const RadialProfile& other) const;
    RadialProfile truncated(double lo, double hi) const;

private:
    std::vector<Segment> segs_;   // sorted, disjoint, only nonzero cells
    void canonicalize();
    friend RadialProfile profile_rescale(const RadialProfile&, double, double);
};

/// s * f(r / t) as an exact profile (t > 0). Dilation and covariance checks
/// are built from this.
RadialProfile profile_rescale(const RadialProfile& f, double s, double t);

double term_value(const Term& t, double r);
double segment_value(const Segment& s, double r);

/// Terms of d/dr applied to the sum of `ts` (log powers may drop by one).
std::vector<Term> derivative_terms(const std::vector<Term>& ts);

// ---------------------------------------------------------------------------
// closed-form integration

struct IntegralValue {
    bool finite = true;
    double value = 0.0;
};

/// Integral of r^m (ln r)^K dr over [lo, hi], 0 <= lo < hi <= inf, K >= 0.
/// Exponents within 1e-12 of -1 are treated as the logarithmic case; the
/// guard exists because 1/(m+1) is catastrophically ill-conditioned there.
IntegralValue integral_power_log(double m, int K, double lo, double hi);

/// Integral of f(r) r^e dr over (0, inf); {finite=false} when divergent.
IntegralValue integrate_weighted(const RadialProfile& f, double e);

/// Integral of f(r) g(r) r^e dr over (0, inf). Throws DivergenceError when
/// infinite (log powers up to 2 are handled).
double integrate_product(const RadialProfile& f, const RadialProfile& g, double e);

/// Weighted Lebesgue norm (sphere_area(n) * int |f|^p r^{alpha+n-1} dr)^{1/p}.
/// Returns +inf on divergence. Throws UnsupportedExponentError when |f|^p is
/// not elementary (non-integer p over a multi-term or logarithmic segment).
double lp_weighted_norm(const RadialProfile& f, double p, double alpha, int n);
double lp_weighted_norm(const RadialProfile& f, const SpaceParams& sp);

// ---------------------------------------------------------------------------
// profile calculus used by the operators

/// r -> int_0^r f(t) t^{n-1} dt. Throws DivergenceError when the integral is
/// infinite for finite r, UnsupportedExponentError when a log collision lands
/// on a segment that already carries a log factor.
RadialProfile cumulative_profile(const RadialProfile& f, int n);

/// r -> int_r^inf f(t) t^{beta-1} dt. Same error contract at the far end.
RadialProfile tail_profile(const RadialProfile& f, double beta);

// ---------------------------------------------------------------------------
// endpoint behavior (drives weak-norm asymptotics and root bracketing)

struct EndBehavior {
    enum class Kind { Zero, FiniteLimit, PlusInfinity, MinusInfinity };
    Kind kind = Kind::Zero;
    double limit = 0.0;   // meaningful for FiniteLimit
    Term dominant;        // meaningful when has_terms
    bool has_terms = false;
};

EndBehavior behavior_at_zero(const RadialProfile& g);
EndBehavior behavior_at_infinity(const RadialProfile& g);

} // namespace hardy
