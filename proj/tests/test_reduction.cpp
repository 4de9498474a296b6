#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "hardy/operators.hpp"
#include "hardy/reduction.hpp"
#include "hardy/rng.hpp"
#include "hardy/weaknorm.hpp"
#include "oracle_utils.hpp"

using namespace hardy;

namespace {

SpaceParams forward_tuple(int n, double p, double q, double alpha, double beta) {
    RawParams raw;
    raw.n = n;
    raw.p = p;
    raw.beta = beta;
    raw.q = q;
    raw.alpha = alpha;
    return validate_forward(raw);
}

SpaceParams adjoint_tuple(int n, double p, double q, double alpha, double beta) {
    RawParams raw;
    raw.n = n;
    raw.p = p;
    raw.beta = beta;
    raw.q = q;
    raw.alpha = alpha;
    return validate_adjoint(raw);
}

// Independent copies of the closed-form constants, written out directly.
double closed_form_forward(const SpaceParams& sp) {
    const double base = sp.n * (sp.p - 1.0) / (sp.n * (sp.p - 1.0) - sp.alpha);
    const double lead = sp.p > 1.0 ? std::pow(base, 1.0 - 1.0 / sp.p) : 1.0;
    return lead * std::pow(sp.n / (sp.n + sp.gamma), 1.0 / sp.q) *
           std::pow(sp.ball_volume(), sp.beta / sp.n + 1.0 / sp.q - 1.0 / sp.p);
}

double closed_form_adjoint(const SpaceParams& sp) {
    const double vpow =
        std::pow(sp.ball_volume(), sp.beta / sp.n + 1.0 / sp.q - 1.0 / sp.p);
    if (sp.p == 1.0)
        return std::pow(sp.n / (sp.n + sp.gamma), 1.0 / sp.q) * vpow;
    const double pp = sp.p / (sp.p - 1.0);
    return std::pow(sp.q / pp, 1.0 / pp) *
           std::pow(sp.n / (sp.n + sp.gamma), 1.0 / pp + 1.0 / sp.q) * vpow;
}

// Geometric sample points strictly inside (lo, hi), away from the endpoints.
std::vector<double> interior_points(double lo, double hi, int count) {
    std::vector<double> xs;
    const double l0 = std::log(lo), l1 = std::log(hi);
    for (int i = 0; i < count; ++i) {
        const double t = (i + 0.617) / count;
        xs.push_back(std::exp(l0 + (l1 - l0) * t));
    }
    return xs;
}

} // namespace

TEST_CASE("forward substitution closed forms and round trip") {
    const auto sp = forward_tuple(2, 2.0, 2.0, 0.0, 0.5);
    for (double x : {0.3, 1.0, 2.5})
        CHECK(substitute_forward(x, sp) == doctest::Approx(x * x / 2.0).epsilon(1e-14));

    const auto sp2 = forward_tuple(1, 2.0, 4.0, -0.5, 0.0);
    CHECK(substitute_forward(1.0, sp2) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(substitute_forward(4.0, sp2) == doctest::Approx(16.0 / 3.0).epsilon(1e-14));

    double prev = 0.0;
    for (double x = 1e-3; x < 1e3; x *= 3.7) {
        const double s = substitute_forward(x, sp2);
        CHECK(s > prev);
        prev = s;
        CHECK(substitute_forward_inverse(s, sp2) == doctest::Approx(x).epsilon(1e-12));
    }
}

TEST_CASE("forward substitution collapses at p = 1") {
    const auto sp = forward_tuple(2, 1.0, 4.0 / 3.0, 0.0, 0.5);
    CHECK_THROWS_AS((void)substitute_forward(1.0, sp), DegenerateSubstitutionError);
    CHECK_THROWS_AS((void)substitute_forward_inverse(1.0, sp), DegenerateSubstitutionError);
    CHECK_THROWS_AS((void)reduced_params_forward(sp), DegenerateSubstitutionError);
    CHECK_THROWS_AS((void)transform_profile_forward(RadialProfile::indicator(0.0, 1.0), sp),
                    DegenerateSubstitutionError);
    CHECK_THROWS_AS((void)reduction_prefactor_forward(sp), DegenerateSubstitutionError);
    CHECK_THROWS_AS((void)reconstructed_constant_forward(sp), DegenerateSubstitutionError);
}

TEST_CASE("adjoint substitution closed forms and round trip") {
    const auto sp = adjoint_tuple(3, 2.0, 2.0, 0.0, 0.0);
    for (double x : {0.4, 1.0, 1.9})
        CHECK(substitute_adjoint(x, sp) == doctest::Approx(x * x * x / 3.0).epsilon(1e-14));

    const auto sp2 = adjoint_tuple(1, 2.0, 2.0, 0.0, 0.25);
    CHECK(substitute_adjoint(1.0, sp2) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(substitute_adjoint(8.0, sp2) == doctest::Approx(6.0).epsilon(1e-14));

    for (double x = 2e-3; x < 500.0; x *= 4.1)
        CHECK(substitute_adjoint_inverse(substitute_adjoint(x, sp2), sp2) ==
              doctest::Approx(x).epsilon(1e-12));
}

TEST_CASE("reduced parameters, forward branch") {
    const auto red = reduced_params_forward(forward_tuple(2, 2.0, 2.0, 0.0, 0.5));
    CHECK(red.gamma_red == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(red.beta_red == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(red.alpha_red == 0.0);
    CHECK(std::string(reduction_branch_name(red.branch)) == "FORWARD");

    // boundary alpha = beta (p-1) kills the reduced exponent
    const auto red_b = reduced_params_forward(forward_tuple(2, 2.0, 2.0, 0.5, 0.5));
    CHECK(red_b.beta_red == doctest::Approx(0.0).epsilon(1e-14));

    // alpha = 0 divides the exponent by the dimension
    for (int n : {1, 2, 3}) {
        const auto sp = forward_tuple(n, 1.7, 2.4, 0.0, 0.3 * n);
        CHECK(reduced_params_forward(sp).beta_red ==
              doctest::Approx(sp.beta / n).epsilon(1e-13));
    }

    Rng rng(2026202601ull);
    for (int i = 0; i < 50; ++i) {
        const auto sp = testutil::random_forward_params(rng);
        const auto r = reduced_params_forward(sp);
        CHECK(std::abs((r.gamma_red + 1.0) / sp.q + r.beta_red - 1.0 / sp.p) <= 1e-12);
        CHECK(r.beta_red >= 0.0);
        CHECK(r.beta_red < 1.0);
    }
}

TEST_CASE("reduced parameters, adjoint branch") {
    const auto red = reduced_params_adjoint(adjoint_tuple(2, 2.0, 2.0, 0.0, 0.5));
    CHECK(red.gamma_red == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(red.beta_red == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(std::string(reduction_branch_name(red.branch)) == "ADJOINT");

    const auto red_b = reduced_params_adjoint(adjoint_tuple(2, 1.5, 2.5, 0.3, 0.0));
    CHECK(red_b.beta_red == 0.0);
    CHECK(red_b.gamma_red == doctest::Approx(2.5 / 1.5 - 1.0).epsilon(1e-14));

    Rng rng(2026202602ull);
    for (int i = 0; i < 50; ++i) {
        const auto sp = testutil::random_adjoint_params(rng, true);
        const auto r = reduced_params_adjoint(sp);
        CHECK(std::abs((r.gamma_red + 1.0) / sp.q + r.beta_red - 1.0 / sp.p) <= 1e-12);
        CHECK(r.beta_red >= 0.0);
        CHECK(r.beta_red < 1.0);
    }
}

TEST_CASE("reduced space is a validated one-dimensional parameter set") {
    const auto sp = forward_tuple(2, 2.0, 2.0, 0.0, 0.5);
    const auto spr = reduced_space(sp, reduced_params_forward(sp));
    CHECK(spr.n == 1);
    CHECK(spr.alpha == 0.0);
    CHECK(spr.p == sp.p);
    CHECK(spr.q == sp.q);
    CHECK(spr.beta == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(spr.gamma == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(std::abs(scaling_residual(spr)) <= 1e-12);

    const auto spa = adjoint_tuple(2, 1.0, 2.0, 0.0, 0.5);
    const auto spar = reduced_space(spa, reduced_params_adjoint(spa));
    CHECK(spar.n == 1);
    CHECK(spar.beta == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(std::abs(scaling_residual(spar)) <= 1e-12);
}

TEST_CASE("profile transport, forward branch examples") {
    // unit ball indicator in the plane becomes the indicator of (0, 1/2)
    const auto sp = forward_tuple(2, 2.0, 2.0, 0.0, 0.5);
    const auto g = transform_profile_forward(RadialProfile::indicator(0.0, 1.0), sp);
    REQUIRE(g.segments().size() == 1);
    CHECK(g.segments()[0].lo == 0.0);
    CHECK(g.segments()[0].hi == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(g(0.3) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g(0.7) == 0.0);

    // the power that cancels the input weight becomes a plain indicator
    const auto sp2 = forward_tuple(1, 2.0, 4.0, -0.5, 0.0);
    const auto f2 = RadialProfile::power(1.0, 0.5, 1.0, 2.0);
    const auto g2 = transform_profile_forward(f2, sp2);
    REQUIRE(g2.segments().size() == 1);
    CHECK(g2.segments()[0].lo == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(g2.segments()[0].hi ==
          doctest::Approx(2.0 / 3.0 * std::pow(2.0, 1.5)).epsilon(1e-13));
    CHECK(g2(1.0) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("profile transport, adjoint branch examples") {
    // beta = 0: values carry over unchanged, only the radius is remapped
    const auto sp = adjoint_tuple(2, 2.0, 2.0, 0.4, 0.0);
    const auto f = RadialProfile::power(1.3, -0.7, 0.5, 3.0);
    const auto g = transform_profile_adjoint(f, sp);
    for (double x : interior_points(0.5, 3.0, 7)) {
        const double s = substitute_adjoint(x, sp);
        CHECK(g(s) == doctest::Approx(f(x)).epsilon(1e-13));
    }

    // the exact adjoint extremizer becomes a pure power cutoff
    const auto spa = adjoint_tuple(2, 2.0, 2.0, 0.0, 0.5);
    const auto f0 = RadialProfile::power(1.0, (spa.beta - spa.n) / (spa.p - 1.0), 1.0,
                                         kInfRadius);
    const auto g0 = transform_profile_adjoint(f0, spa);
    REQUIRE(g0.segments().size() == 1);
    REQUIRE(g0.segments()[0].terms.size() == 1);
    const Term t = g0.segments()[0].terms[0];
    CHECK(t.k == 0);
    CHECK(t.a == doctest::Approx(-0.875).epsilon(1e-13));
    CHECK(g0.segments()[0].lo == doctest::Approx(0.75).epsilon(1e-13));
    CHECK(std::isinf(g0.segments()[0].hi));
}

TEST_CASE("profile transport keeps single log factors exact") {
    const auto sp = forward_tuple(2, 2.0, 2.0, 0.0, 0.5);
    const auto f = RadialProfile::power_log(1.0, 0.0, 1, 1.0, 2.0);
    const auto g = transform_profile_forward(f, sp);
    for (double s : {0.6, 1.1, 1.7})
        CHECK(g(s) == doctest::Approx(0.5 * std::log(2.0 * s)).epsilon(1e-13));
}

TEST_CASE("transport round trips") {
    Rng rng(2026202603ull);
    for (int i = 0; i < 12; ++i) {
        const auto sp = testutil::random_forward_params(rng);
        const auto f = testutil::random_piecewise_profile(rng);
        const auto back = pull_back_profile_forward(transform_profile_forward(f, sp), sp);
        const auto [lo, hi] = f.support();
        for (double x : interior_points(lo, hi, 9))
            CHECK(back(x) == doctest::Approx(f(x)).epsilon(1e-11));
    }
    for (int i = 0; i < 12; ++i) {
        const auto sp = testutil::random_adjoint_params(rng, true);
        const auto f = testutil::random_piecewise_profile(rng);
        const auto back = pull_back_profile_adjoint(transform_profile_adjoint(f, sp), sp);
        const auto [lo, hi] = f.support();
        for (double x : interior_points(lo, hi, 9))
            CHECK(back(x) == doctest::Approx(f(x)).epsilon(1e-11));
    }
}

TEST_CASE("transport preserves the input norm") {
    Rng rng(2026202604ull);
    for (int i = 0; i < 40; ++i) {
        const auto sp = testutil::random_forward_params(rng);
        const auto f = testutil::random_piecewise_profile(rng);
        CHECK(norm_preservation_residual(f, sp, ReductionBranch::Forward) <= 1e-10);
    }
    for (int i = 0; i < 40; ++i) {
        const auto sp = testutil::random_adjoint_params(rng, true);
        const auto f = testutil::random_piecewise_profile(rng);
        CHECK(norm_preservation_residual(f, sp, ReductionBranch::Adjoint) <= 1e-10);
    }
}

TEST_CASE("operators commute with the substitution pointwise") {
    Rng rng(2026202605ull);
    for (int i = 0; i < 10; ++i) {
        const auto sp = testutil::random_forward_params(rng);
        const auto f = testutil::random_piecewise_profile(rng);
        const auto red = reduced_params_forward(sp);
        const auto g = transform_profile_forward(f, sp);
        const double kappa = (sp.p - 1.0) / (sp.n * (sp.p - 1.0) - sp.alpha);
        const double factor = std::pow(kappa, 1.0 - red.beta_red);
        const auto lhs = bare_forward(f, sp.n, sp.beta);
        const auto rhs = bare_forward(g, 1, red.beta_red);
        const auto [lo, hi] = f.support();
        for (double x : interior_points(0.7 * lo, 1.9 * hi, 9)) {
            const double want = factor * rhs(substitute_forward(x, sp));
            CHECK(lhs(x) == doctest::Approx(want).epsilon(1e-11));
        }
    }
    for (int i = 0; i < 10; ++i) {
        const auto sp = testutil::random_adjoint_params(rng, true);
        const auto f = testutil::random_piecewise_profile(rng);
        const auto red = reduced_params_adjoint(sp);
        const auto g = transform_profile_adjoint(f, sp);
        const double kappa = (sp.n - sp.beta) / (sp.n * (sp.alpha + sp.n - sp.p * sp.beta));
        const double factor = std::pow(kappa, 1.0 - red.beta_red);
        const auto lhs = bare_adjoint(f, sp.beta);
        const auto rhs = bare_adjoint(g, red.beta_red);
        const auto [lo, hi] = f.support();
        for (double x : interior_points(0.6 * lo, 0.9 * hi, 9)) {
            const double want = factor * rhs(substitute_adjoint(x, sp));
            CHECK(lhs(x) == doctest::Approx(want).epsilon(1e-11));
        }
    }
}

TEST_CASE("weak quantity identity across levels") {
    Rng rng(2026202606ull);
    for (int i = 0; i < 8; ++i) {
        const auto sp = testutil::random_forward_params(rng);
        const auto f = testutil::random_piecewise_profile(rng);
        const auto field = bare_forward(f, sp.n, sp.beta);
        const auto [lo, hi] = f.support();
        double top = 0.0;
        for (double x : interior_points(lo, 3.0 * hi, 40))
            top = std::max(top, field(x));
        REQUIRE(top > 0.0);
        for (int j = 0; j < 20; ++j) {
            const double lambda = 0.93 * top * std::pow(10.0, -3.0 * j / 19.0);
            CHECK(commutation_residual(f, sp, ReductionBranch::Forward, lambda) <= 1e-9);
        }
    }
    for (int i = 0; i < 8; ++i) {
        const auto sp = testutil::random_adjoint_params(rng, true);
        const auto f = testutil::random_piecewise_profile(rng);
        const auto field = bare_adjoint(f, sp.beta);
        const auto [lo, hi] = f.support();
        const double top = field(0.5 * lo);
        REQUIRE(top > 0.0);
        for (int j = 0; j < 20; ++j) {
            const double lambda = 0.93 * top * std::pow(10.0, -3.0 * j / 19.0);
            CHECK(commutation_residual(f, sp, ReductionBranch::Adjoint, lambda) <= 1e-9);
        }
    }
}

TEST_CASE("prefactor closed forms") {
    const auto sp = forward_tuple(1, 2.0, 4.0, -0.5, 0.0);
    CHECK(reduction_prefactor_forward(sp) ==
          doctest::Approx(std::pow(2.0 / 3.0, 0.75)).epsilon(1e-14));
    const auto spa = adjoint_tuple(2, 2.0, 2.0, 0.0, 0.5);
    CHECK(reduction_prefactor_adjoint(spa) == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("constants rebuilt from the reduced problem match the closed forms") {
    const double pi = std::numbers::pi;

    const auto sp = forward_tuple(1, 2.0, 4.0, -0.5, 0.0);
    CHECK(reconstructed_constant_forward(sp) ==
          doctest::Approx(std::sqrt(2.0 / 3.0) * std::pow(2.0, -0.25)).epsilon(1e-13));
    CHECK(reconstructed_constant_forward(sp) ==
          doctest::Approx(closed_form_forward(sp)).epsilon(1e-13));

    const auto spa = adjoint_tuple(2, 2.0, 2.0, 0.0, 0.5);
    CHECK(reconstructed_constant_adjoint(spa) ==
          doctest::Approx(2.0 * std::pow(pi, 0.25)).epsilon(1e-13));
    CHECK(reconstructed_constant_adjoint(spa) ==
          doctest::Approx(closed_form_adjoint(spa)).epsilon(1e-13));

    Rng rng(2026202607ull);
    for (int i = 0; i < 30; ++i) {
        const auto s = testutil::random_forward_params(rng);
        CHECK(reconstructed_constant_forward(s) ==
              doctest::Approx(closed_form_forward(s)).epsilon(1e-12));
    }
    for (int i = 0; i < 30; ++i) {
        const auto s = testutil::random_adjoint_params(rng, true);
        CHECK(reconstructed_constant_adjoint(s) ==
              doctest::Approx(closed_form_adjoint(s)).epsilon(1e-12));
    }
}

TEST_CASE("substitution domain guards") {
    const auto sp = forward_tuple(2, 2.0, 2.0, 0.0, 0.5);
    CHECK_THROWS_AS((void)substitute_forward(0.0, sp), DomainError);
    CHECK_THROWS_AS((void)substitute_forward(-1.0, sp), DomainError);
    CHECK_THROWS_AS((void)substitute_adjoint(0.0, adjoint_tuple(2, 2.0, 2.0, 0.0, 0.5)),
                    DomainError);
    CHECK_THROWS_AS(
        (void)commutation_residual(RadialProfile::indicator(1.0, 2.0), sp,
                                   ReductionBranch::Forward, 0.0),
        DomainError);
}
