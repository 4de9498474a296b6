#pragma once

#include <cstdint>
#include <vector>

#include "hardy/field.hpp"
#include "hardy/params.hpp"
#include "hardy/profile.hpp"

namespace hardy {

/// One Monte Carlo estimate. Deterministic: the same (seed, samples) pair
/// reproduces the mean bit for bit (fixed batch split, ordered reduction).
struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long samples = 0;
    std::uint64_t seed = 0;
};

/// Sampled spherical averages with their uncertainties; `values` and
/// `sigmas` align with `radii`, and `cell_lo`/`cell_hi` give the
/// piecewise-constant cell around each radius (midpoint splits).
struct RadializedField {
    RadialProfile profile;
    std::vector<double> radii;
    std::vector<double> cell_lo;
    std::vector<double> cell_hi;
    std::vector<double> values;
    std::vector<double> sigmas;
};

/// Spherical average of |F| at each radius by uniform direction sampling,
/// one derived seed per radius, returned as a piecewise-constant profile.
/// Requires 1 <= n <= 3, strictly increasing positive radii, and at least
/// one sample per radius.
RadializedField radialize_sampled(const ScalarField& F, int n, const std::vector<double>& radii,
                                  long samples_per_radius, std::uint64_t seed);
RadialProfile radialize(const ScalarField& F, int n, const std::vector<double>& radii,
                        long samples_per_radius, std::uint64_t seed);

/// Averaging operator applied to a full field at one radius, by uniform
/// sampling in the ball: (ball_volume r^n)^{beta/n - 1} int_{|y|<r} F.
/// Requires n in {1,2,3} and at least 1e4 samples.
McEstimate mc_hardy(const ScalarField& F, double x_radius, const SpaceParams& sp, long samples,
                    std::uint64_t seed);

/// Adjoint operator at one radius by uniform sampling of the annulus between
/// x_radius and the support radius, weighting each point by
/// (ball_volume |y|^n)^{beta/n - 1}. The support must be bounded
/// (UnsupportedError otherwise); x_radius at or beyond it gives zero.
McEstimate mc_adjoint(const ScalarField& F, double x_radius, const SpaceParams& sp, long samples,
                      std::uint64_t seed);

/// Monte Carlo estimate of (int |F|^p |y|^alpha dy)^{1/p} over the support
/// ball; the std_error is propagated through the 1/p power.
McEstimate mc_weighted_norm(const ScalarField& F, double p, double alpha, int n, long samples,
                            std::uint64_t seed);

/// Serial reference paths for the three sampling kernels: same batch split,
/// same derived seeds, no worker team. The parallel kernels must reproduce
/// them bit for bit; the benchmark measures what the team buys on top.
McEstimate mc_hardy_serial(const ScalarField& F, double x_radius, const SpaceParams& sp,
                           long samples, std::uint64_t seed);
McEstimate mc_adjoint_serial(const ScalarField& F, double x_radius, const SpaceParams& sp,
                             long samples, std::uint64_t seed);
McEstimate mc_weighted_norm_serial(const ScalarField& F, double p, double alpha, int n,
                                   long samples, std::uint64_t seed);

/// One radius of the spherical-average identity check: the brute-force value
/// of the averaging operator against the closed-form operator applied to the
/// sampled spherical average, with a band of three combined standard errors.
struct SymmetrizationEntry {
    double radius = 0.0;
    double mc_value = 0.0;
    double mc_sigma = 0.0;
    double radial_value = 0.0;
    double radial_sigma = 0.0;
    int retries = 0; // extra reseeded runs taken after an initial miss
    bool pass = false;
};

struct SymmetrizationReport {
    std::vector<SymmetrizationEntry> entries;
    bool all_pass = false;
    RadializedField radialized;
};

/// Checks, per radius, that averaging the full field equals averaging its
/// spherical average (the operator only sees the radial part). A radius that
/// misses its band is retried with two fresh seeds before it may fail.
SymmetrizationReport symmetrization_check(const ScalarField& F, const SpaceParams& sp,
                                   const std::vector<double>& radii, long samples,
                                   std::uint64_t seed);

/// Norm side of the symmetrization principle: the weighted L^p norm of the
/// spherical average never exceeds the norm of the field itself.
struct ContractionReport {
    double radial_norm = 0.0;
    double radial_sigma = 0.0;
    double field_norm = 0.0;
    double field_sigma = 0.0;
    bool pass = false; // radial_norm <= field_norm + 3 combined sigma
};

ContractionReport norm_contraction_check(const ScalarField& F, double p, double alpha, int n,
                                         const std::vector<double>& radii,
                                         long samples_per_radius, long norm_samples,
                                         std::uint64_t seed);

} // namespace hardy
