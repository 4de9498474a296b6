#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hardy/profile.hpp"
#include "hardy/rng.hpp"
#include "oracle_utils.hpp"

using namespace hardy;

namespace {

RadialProfile random_power_profile(Rng& rng, int pieces) {
    std::vector<Segment> segs;
    double lo = 0.05 + 0.2 * rng.uniform();
    for (int i = 0; i < pieces; ++i) {
        const double hi = lo + 0.2 + 2.0 * rng.uniform();
        const double c = 0.2 + 2.0 * rng.uniform();
        const double a = -2.0 + 4.0 * rng.uniform();
        segs.push_back({lo, hi, {{c, a, 0}}});
        lo = hi + (rng.uniform() < 0.3 ? 0.3 * rng.uniform() : 0.0);
    }
    return RadialProfile::from_segments(std::move(segs));
}

std::vector<double> breaks_of(const RadialProfile& f) {
    std::vector<double> b;
    for (const auto& s : f.segments()) {
        b.push_back(s.lo);
        if (s.hi != kInfRadius) b.push_back(s.hi);
    }
    return b;
}

} // namespace

TEST_CASE("indicator evaluation honors half-open intervals and gaps") {
    const auto f = RadialProfile::indicator(0.0, 1.0);
    CHECK(f(0.5) == 1.0);
    CHECK(f(0.999999) == 1.0);
    CHECK(f(1.0) == 0.0);
    CHECK(f(2.0) == 0.0);
    CHECK_THROWS_AS(f(0.0), DomainError);
    CHECK_THROWS_AS(f(-1.0), DomainError);

    const auto g = RadialProfile::indicator(1.0, 2.0);
    CHECK(g(0.5) == 0.0);
    CHECK(g(1.0) == 1.0);
    CHECK(g(1.5) == 1.0);
    CHECK(g(2.0) == 0.0);
}

TEST_CASE("canonical form merges touching identical pieces and drops zeros") {
    const auto f = RadialProfile::indicator(0.0, 1.0).plus(RadialProfile::indicator(1.0, 2.0));
    CHECK(f.segments().size() == 1);
    CHECK(f.segments()[0].lo == 0.0);
    CHECK(f.segments()[0].hi == 2.0);

    const auto g = RadialProfile::indicator(0.0, 1.0)
                       .plus(RadialProfile::power(-1.0, 0.0, 0.0, 1.0));
    CHECK(g.is_zero());
}

TEST_CASE("sum splits intervals where term sets differ") {
    const auto f = RadialProfile::indicator(0.0, 2.0).plus(RadialProfile::indicator(1.0, 3.0));
    REQUIRE(f.segments().size() == 3);
    CHECK(f(0.5) == 1.0);
    CHECK(f(1.5) == 2.0);
    CHECK(f(2.5) == 1.0);
}

TEST_CASE("power-log integral matches quadrature, including the log cases") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const double m = trial % 5 == 0 ? -1.0 : -2.5 + 4.0 * rng.uniform();
        const int K = trial % 3;
        const double lo = 0.2 + rng.uniform();
        const double hi = lo + 0.3 + 2.0 * rng.uniform();
        const auto got = integral_power_log(m, K, lo, hi);
        REQUIRE(got.finite);
        const double want = testutil::integrate(
            [&](double r) {
                double v = std::pow(r, m);
                for (int j = 0; j < K; ++j) v *= std::log(r);
                return v;
            },
            lo, hi, {});
        CHECK(got.value == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("power-log integral flags endpoint divergence") {
    CHECK_FALSE(integral_power_log(-1.0, 0, 0.0, 1.0).finite);
    CHECK_FALSE(integral_power_log(-1.5, 0, 0.0, 1.0).finite);
    CHECK_FALSE(integral_power_log(-1.0, 1, 1.0, kInfRadius).finite);
    CHECK_FALSE(integral_power_log(0.5, 0, 1.0, kInfRadius).finite);
    CHECK(integral_power_log(-0.5, 0, 0.0, 1.0).finite);
    CHECK(integral_power_log(-1.5, 1, 1.0, kInfRadius).finite);
}

TEST_CASE("weighted L2 norm of the unit ball indicator in the plane") {
    const auto f = RadialProfile::indicator(0.0, 1.0);
    CHECK(lp_weighted_norm(f, 2.0, 0.0, 2) ==
          doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("norm of the decaying power tail used by the adjoint extremizer") {
    // r^{(beta-n)/(p-1)} on (1, inf): norm^p = sphere_area * (p-1)/(n - p beta)
    const int n = 2;
    const double p = 2.0, beta = 0.5;
    const auto f = RadialProfile::power(1.0, (beta - n) / (p - 1.0), 1.0, kInfRadius);
    const double want = std::pow((p - 1.0) / (n - p * beta) * sphere_area(n), 1.0 / p);
    CHECK(lp_weighted_norm(f, p, 0.0, n) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("norms diverge to +inf rather than throwing") {
    const auto f = RadialProfile::power(1.0, -1.0, 0.0, 1.0);
    CHECK(std::isinf(lp_weighted_norm(f, 2.0, 0.0, 1)));
    const auto g = RadialProfile::power(1.0, 0.0, 1.0, kInfRadius);
    CHECK(std::isinf(lp_weighted_norm(g, 2.0, 0.0, 1)));
}

TEST_CASE("integer-p norms of multi-term segments match quadrature") {
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_power_profile(rng, 2);
        f = f.plus(random_power_profile(rng, 2));   // overlaps make multi-term cells
        for (double p : {1.0, 2.0, 3.0}) {
            const double got = lp_weighted_norm(f, p, 0.3, 2);
            const double want = std::pow(
                sphere_area(2) * testutil::integrate(
                                     [&](double r) { return std::pow(f(r), p) * std::pow(r, 0.3 + 1.0); },
                                     f.support().first, f.support().second, breaks_of(f)),
                1.0 / p);
            CHECK(got == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("non-integer p over a multi-term segment is rejected") {
    const auto f = RadialProfile::power(1.0, 1.0, 1.0, 2.0)
                       .plus(RadialProfile::power(1.0, 0.0, 1.0, 2.0));
    CHECK_THROWS_AS(lp_weighted_norm(f, 2.5, 0.0, 1), UnsupportedExponentError);
    CHECK_NOTHROW(lp_weighted_norm(f, 3.0, 0.0, 1));
}

TEST_CASE("log-bearing segments integrate exactly for integer p") {
    const auto f = RadialProfile::power_log(-1.0, 0.0, 1, 0.1, 1.0);   // ln(1/r), positive
    const double got = lp_weighted_norm(f, 2.0, 0.0, 1);
    const double want = std::pow(
        2.0 * testutil::integrate([&](double r) { return std::pow(std::log(1.0 / r), 2.0); },
                                  0.1, 1.0, {}),
        0.5);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("product integrals match quadrature") {
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = random_power_profile(rng, 2);
        const auto g = random_power_profile(rng, 3);
        const double got = integrate_product(f, g, 1.3);
        auto breaks = breaks_of(f);
        for (double b : breaks_of(g)) breaks.push_back(b);
        const double lo = std::min(f.support().first, g.support().first);
        const double hi = std::max(f.support().second, g.support().second);
        const double want = testutil::integrate(
            [&](double r) { return f(r) * g(r) * std::pow(r, 1.3); }, lo, hi, breaks);
        CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("cumulative transform of the ball indicator") {
    const auto f = RadialProfile::indicator(0.0, 1.0);
    const auto C = cumulative_profile(f, 2);   // r^2/2 then 1/2
    CHECK(C(0.5) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(C(1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(C(10.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("cumulative transform matches quadrature on random profiles") {
    Rng rng(21);
    for (int trial = 0; trial < 12; ++trial) {
        const auto f = random_power_profile(rng, 3);
        const int n = 1 + trial % 3;
        const auto C = cumulative_profile(f, n);
        for (double r : {0.3, 0.9, 1.7, 3.4, 6.0}) {
            const double want = testutil::integrate(
                [&](double t) { return f(t) * std::pow(t, n - 1.0); }, f.support().first,
                std::min(r, f.support().second), breaks_of(f));
            CHECK(C(r) == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("cumulative transform grows a log exactly at the critical exponent") {
    const auto f = RadialProfile::power(1.0, -2.0, 1.0, 2.0);   // a + n == 0 for n == 2
    const auto C = cumulative_profile(f, 2);
    CHECK(C(1.5) == doctest::Approx(std::log(1.5)).epsilon(1e-14));
    CHECK(C.max_logpow() == 1);
    // the same collision on a piece that already carries a log cannot be stored
    const auto g = RadialProfile::power_log(1.0, -2.0, 1, 1.0, 2.0);
    CHECK_THROWS_AS(cumulative_profile(g, 2), UnsupportedExponentError);
}

TEST_CASE("cumulative transform rejects profiles not integrable at the origin") {
    CHECK_THROWS_AS(cumulative_profile(RadialProfile::power(1.0, -1.0, 0.0, 1.0), 1),
                    DivergenceError);
    CHECK_THROWS_AS(cumulative_profile(RadialProfile::power(1.0, -3.5, 0.0, 1.0), 2),
                    DivergenceError);
}

TEST_CASE("tail transform of the ball indicator at exponent zero is a log") {
    const auto f = RadialProfile::indicator(0.0, 1.0);
    const auto T = tail_profile(f, 0.0);   // int_r^1 dt/t = -ln r
    CHECK(T(0.25) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
    CHECK(T(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(T(2.0) == 0.0);
}

TEST_CASE("tail transform matches quadrature on random profiles") {
    Rng rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        const auto f = random_power_profile(rng, 3);
        const double beta = 0.8 * rng.uniform();
        const auto T = tail_profile(f, beta);
        for (double r : {0.1, 0.4, 1.1, 2.5, 5.0}) {
            const double want = testutil::integrate(
                [&](double t) { return f(t) * std::pow(t, beta - 1.0); },
                std::max(r, f.support().first), f.support().second, breaks_of(f));
            CHECK(T(r) == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("tail transform rejects non-integrable tails") {
    CHECK_THROWS_AS(tail_profile(RadialProfile::power(1.0, 0.0, 1.0, kInfRadius), 0.5),
                    DivergenceError);
    CHECK_THROWS_AS(tail_profile(RadialProfile::power(1.0, -0.5, 1.0, kInfRadius), 0.5),
                    DivergenceError);
    CHECK_NOTHROW(tail_profile(RadialProfile::power(1.0, -1.5, 1.0, kInfRadius), 0.5));
}

TEST_CASE("rescale reproduces pointwise dilation values") {
    Rng rng(41);
    const auto f = random_power_profile(rng, 3).plus(
        RadialProfile::power_log(-0.7, 0.5, 1, 0.3, 0.9));
    for (double t : {0.25, 0.5, 2.0, 8.0}) {
        const auto ft = profile_rescale(f, std::pow(t, -2.0), t);
        for (double r : {0.2, 0.7, 1.9, 4.2}) {
            const double want = std::pow(t, -2.0) * f(r / t);
            CHECK(ft(r) == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("endpoint behavior classification") {
    using K = EndBehavior::Kind;
    CHECK(behavior_at_zero(RadialProfile::indicator(1.0, 2.0)).kind == K::Zero);
    CHECK(behavior_at_zero(RadialProfile::indicator(0.0, 2.0)).kind == K::FiniteLimit);
    CHECK(behavior_at_zero(RadialProfile::power(1.0, -1.0, 0.0, 1.0)).kind == K::PlusInfinity);
    CHECK(behavior_at_zero(RadialProfile::power_log(-1.0, 0.0, 1, 0.0, 1.0)).kind ==
          K::PlusInfinity);   // -ln r blows up positively
    CHECK(behavior_at_infinity(RadialProfile::indicator(0.0, 2.0)).kind == K::Zero);
    CHECK(behavior_at_infinity(RadialProfile::power(1.0, -1.0, 1.0, kInfRadius)).kind == K::Zero);
    CHECK(behavior_at_infinity(RadialProfile::power(3.0, 0.0, 1.0, kInfRadius)).kind ==
          K::FiniteLimit);
    CHECK(behavior_at_infinity(RadialProfile::power(3.0, 0.0, 1.0, kInfRadius)).limit == 3.0);
    CHECK(behavior_at_infinity(RadialProfile::power(1.0, 0.5, 1.0, kInfRadius)).kind ==
          K::PlusInfinity);
}

TEST_CASE("truncation clips supports") {
    const auto f = RadialProfile::indicator(0.0, 4.0).truncated(1.0, 2.0);
    CHECK(f(0.5) == 0.0);
    CHECK(f(1.5) == 1.0);
    CHECK(f(2.5) == 0.0);
    CHECK(f.support().first == 1.0);
    CHECK(f.support().second == 2.0);
}
