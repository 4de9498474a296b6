#include "hardy/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/operators.hpp"
#include "hardy/rng.hpp"

namespace hardy {

namespace {

constexpr long kBatch = 16384;
constexpr long kMinSamples = 10000;

void require_oracle_dim(int n) {
    if (n < 1 || n > 3)
        throw UnsupportedError("the brute-force oracle covers dimensions 1 through 3");
}

void require_samples(long samples) {
    if (samples < kMinSamples)
        throw RangeError("at least 1e4 samples are needed for a meaningful estimate");
}

void fill_direction(Rng& rng, int n, double* xi) {
    if (n == 1) {
        xi[0] = rng.uniform() < 0.5 ? -1.0 : 1.0;
        return;
    }
    for (;;) {
        double norm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            xi[i] = rng.normal();
            norm2 += xi[i] * xi[i];
        }
        if (norm2 > 1e-300) {
            const double inv = 1.0 / std::sqrt(norm2);
            for (int i = 0; i < n; ++i) xi[i] *= inv;
            return;
        }
    }
}

double checked_eval(const ScalarField& F, std::span<const double> y) {
    const double v = F.evaluator(y);
    if (!std::isfinite(v)) throw SamplingError("field evaluated to a non-finite value");
    return std::abs(v);
}

/// Batched mean of draw(rng) over `samples` draws, scaled by `scale`.
/// Each batch owns a seed derived from (seed, batch index), and the batch
/// partials are reduced in index order, so the result does not depend on
/// how batches were scheduled across threads; with `parallel` false the
/// batches simply run in order on the calling thread.
template <class Draw>
McEstimate batched_mean(long samples, std::uint64_t seed, double scale, bool parallel,
                        Draw draw) {
#ifndef _OPENMP
    (void)parallel;
#endif
    const long nbatches = (samples + kBatch - 1) / kBatch;
    std::vector<double> sums(static_cast<std::size_t>(nbatches), 0.0);
    std::vector<double> sumsqs(static_cast<std::size_t>(nbatches), 0.0);
    std::exception_ptr first_error = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (long b = 0; b < nbatches; ++b) {
        try {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
            const long count = std::min(kBatch, samples - b * kBatch);
            double s = 0.0, s2 = 0.0;
            for (long i = 0; i < count; ++i) {
                const double v = draw(rng);
                s += v;
                s2 += v * v;
            }
            sums[static_cast<std::size_t>(b)] = s;
            sumsqs[static_cast<std::size_t>(b)] = s2;
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(hardy_oracle_error)
#endif
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);

    double sum = 0.0, sumsq = 0.0;
    for (long b = 0; b < nbatches; ++b) {
        sum += sums[static_cast<std::size_t>(b)];
        sumsq += sumsqs[static_cast<std::size_t>(b)];
    }
    const double mean = sum / static_cast<double>(samples);
    double var = sumsq / static_cast<double>(samples) - mean * mean;
    var = samples > 1 ? std::max(0.0, var) * static_cast<double>(samples) /
                            static_cast<double>(samples - 1)
                      : 0.0;
    McEstimate est;
    est.mean = scale * mean;
    est.std_error = scale * std::sqrt(var / static_cast<double>(samples));
    est.samples = samples;
    est.seed = seed;
    return est;
}

} // namespace

RadializedField radialize_sampled(const ScalarField& F, int n, const std::vector<double>& radii,
                                  long samples_per_radius, std::uint64_t seed) {
    require_oracle_dim(n);
    if (samples_per_radius < 1) throw RangeError("need at least one sample per radius");
    if (radii.empty()) throw RangeError("need at least one sample radius");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0) || std::isinf(radii[i]))
            throw RangeError("sample radii must be positive and finite");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw RangeError("sample radii must be strictly increasing");
    }

    RadializedField out;
    out.radii = radii;
    const std::size_t nrad = radii.size();
    out.values.assign(nrad, 0.0);
    out.sigmas.assign(nrad, 0.0);

    std::exception_ptr first_error = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(nrad); ++i) {
        try {
            const auto idx = static_cast<std::size_t>(i);
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
            // Accumulate relative to the first sample; for a radial field all
            // samples coincide and the variance then comes out exactly zero
            // instead of carrying cancellation noise.
            double shift = 0.0, s = 0.0, s2 = 0.0;
            double y[3] = {0.0, 0.0, 0.0};
            for (long j = 0; j < samples_per_radius; ++j) {
                fill_direction(rng, n, y);
                for (int d = 0; d < n; ++d) y[d] *= radii[idx];
                const double v = checked_eval(F, std::span<const double>(y, static_cast<std::size_t>(n)));
                if (j == 0) shift = v;
                const double dv = v - shift;
                s += dv;
                s2 += dv * dv;
            }
            const double off = s / static_cast<double>(samples_per_radius);
            const double mean = shift + off;
            double var = s2 / static_cast<double>(samples_per_radius) - off * off;
            var = samples_per_radius > 1
                      ? std::max(0.0, var) * static_cast<double>(samples_per_radius) /
                            static_cast<double>(samples_per_radius - 1)
                      : 0.0;
            out.values[idx] = mean;
            out.sigmas[idx] = std::sqrt(var / static_cast<double>(samples_per_radius));
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(hardy_radialize_error)
#endif
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);

    out.cell_lo.resize(nrad);
    out.cell_hi.resize(nrad);
    std::vector<Segment> segs;
    segs.reserve(nrad);
    for (std::size_t i = 0; i < nrad; ++i) {
        if (nrad == 1) {
            out.cell_lo[i] = 0.5 * radii[0];
            out.cell_hi[i] = 1.5 * radii[0];
        } else {
            out.cell_lo[i] = i == 0 ? std::max(0.0, radii[0] - 0.5 * (radii[1] - radii[0]))
                                    : 0.5 * (radii[i - 1] + radii[i]);
            out.cell_hi[i] = i + 1 == nrad
                                 ? radii[nrad - 1] + 0.5 * (radii[nrad - 1] - radii[nrad - 2])
                                 : 0.5 * (radii[i] + radii[i + 1]);
        }
        segs.push_back({out.cell_lo[i], out.cell_hi[i], {{out.values[i], 0.0, 0}}});
    }
    out.profile = RadialProfile::from_segments(std::move(segs));
    return out;
}

RadialProfile radialize(const ScalarField& F, int n, const std::vector<double>& radii,
                        long samples_per_radius, std::uint64_t seed) {
    return radialize_sampled(F, n, radii, samples_per_radius, seed).profile;
}

namespace {

McEstimate mc_hardy_impl(const ScalarField& F, double x_radius, const SpaceParams& sp,
                         long samples, std::uint64_t seed, bool parallel) {
    require_oracle_dim(sp.n);
    require_samples(samples);
    if (!(x_radius > 0.0) || std::isinf(x_radius))
        throw RangeError("evaluation radius must be positive and finite");

    const int n = sp.n;
    const double scale =
        std::pow(sp.ball_volume() * std::pow(x_radius, n), sp.beta / static_cast<double>(n));
    return batched_mean(samples, seed, scale, parallel, [&F, x_radius, n](Rng& rng) {
        double y[3] = {0.0, 0.0, 0.0};
        fill_direction(rng, n, y);
        const double rho = x_radius * std::pow(rng.uniform_pos(), 1.0 / n);
        for (int d = 0; d < n; ++d) y[d] *= rho;
        return checked_eval(F, std::span<const double>(y, static_cast<std::size_t>(n)));
    });
}

McEstimate mc_adjoint_impl(const ScalarField& F, double x_radius, const SpaceParams& sp,
                           long samples, std::uint64_t seed, bool parallel) {
    require_oracle_dim(sp.n);
    require_samples(samples);
    if (!(x_radius >= 0.0) || std::isinf(x_radius))
        throw RangeError("evaluation radius must be nonnegative and finite");
    if (std::isinf(F.support_radius))
        throw UnsupportedError("annulus sampling needs a field with bounded support");

    McEstimate zero;
    zero.samples = samples;
    zero.seed = seed;
    if (x_radius >= F.support_radius) return zero;

    const int n = sp.n;
    const double vb = sp.ball_volume();
    const double rn = std::pow(x_radius, n);
    const double outn = std::pow(F.support_radius, n);
    const double vol = vb * (outn - rn);
    const double wexp = sp.beta / static_cast<double>(n) - 1.0;
    return batched_mean(samples, seed, vol, parallel, [&F, rn, outn, vb, wexp, n](Rng& rng) {
        double y[3] = {0.0, 0.0, 0.0};
        fill_direction(rng, n, y);
        const double rho = std::pow(rn + rng.uniform_pos() * (outn - rn), 1.0 / n);
        for (int d = 0; d < n; ++d) y[d] *= rho;
        const double w = std::pow(vb * std::pow(rho, n), wexp);
        return w * checked_eval(F, std::span<const double>(y, static_cast<std::size_t>(n)));
    });
}

McEstimate mc_weighted_norm_impl(const ScalarField& F, double p, double alpha, int n,
                                 long samples, std::uint64_t seed, bool parallel) {
    require_oracle_dim(n);
    require_samples(samples);
    if (p < 1.0) throw RangeError("exponent must be at least one");
    if (std::isinf(F.support_radius))
        throw UnsupportedError("norm sampling needs a field with bounded support");

    const double R = F.support_radius;
    const double vol = unit_ball_volume(n) * std::pow(R, n);
    const McEstimate integral =
        batched_mean(samples, seed, vol, parallel, [&F, R, p, alpha, n](Rng& rng) {
            double y[3] = {0.0, 0.0, 0.0};
            fill_direction(rng, n, y);
            const double rho = R * std::pow(rng.uniform_pos(), 1.0 / n);
            for (int d = 0; d < n; ++d) y[d] *= rho;
            const double v = checked_eval(F, std::span<const double>(y, static_cast<std::size_t>(n)));
            return std::pow(v, p) * std::pow(rho, alpha);
        });

    McEstimate est;
    est.samples = samples;
    est.seed = seed;
    if (integral.mean > 0.0) {
        est.mean = std::pow(integral.mean, 1.0 / p);
        est.std_error = est.mean / (p * integral.mean) * integral.std_error;
    }
    return est;
}

} // namespace

McEstimate mc_hardy(const ScalarField& F, double x_radius, const SpaceParams& sp, long samples,
                    std::uint64_t seed) {
    return mc_hardy_impl(F, x_radius, sp, samples, seed, true);
}

McEstimate mc_hardy_serial(const ScalarField& F, double x_radius, const SpaceParams& sp,
                           long samples, std::uint64_t seed) {
    return mc_hardy_impl(F, x_radius, sp, samples, seed, false);
}

McEstimate mc_adjoint(const ScalarField& F, double x_radius, const SpaceParams& sp, long samples,
                      std::uint64_t seed) {
    return mc_adjoint_impl(F, x_radius, sp, samples, seed, true);
}

McEstimate mc_adjoint_serial(const ScalarField& F, double x_radius, const SpaceParams& sp,
                             long samples, std::uint64_t seed) {
    return mc_adjoint_impl(F, x_radius, sp, samples, seed, false);
}

McEstimate mc_weighted_norm(const ScalarField& F, double p, double alpha, int n, long samples,
                            std::uint64_t seed) {
    return mc_weighted_norm_impl(F, p, alpha, n, samples, seed, true);
}

McEstimate mc_weighted_norm_serial(const ScalarField& F, double p, double alpha, int n,
                                   long samples, std::uint64_t seed) {
    return mc_weighted_norm_impl(F, p, alpha, n, samples, seed, false);
}

namespace {

/// Standard error of the closed-form operator applied to the sampled
/// average, at one radius: the operator is linear in the cell values, so the
/// per-cell errors combine through the cell weights.
double propagated_sigma(const RadializedField& rad, const SpaceParams& sp, double r) {
    const int n = sp.n;
    const double pref = std::pow(sp.ball_volume() * std::pow(r, n),
                                 sp.beta / static_cast<double>(n) - 1.0) *
                        sp.sphere();
    double acc = 0.0;
    for (std::size_t i = 0; i < rad.values.size(); ++i) {
        const double lo = std::min(rad.cell_lo[i], r);
        const double hi = std::min(rad.cell_hi[i], r);
        if (!(hi > lo)) continue;
        const double w = pref * (std::pow(hi, n) - std::pow(lo, n)) / n;
        acc += w * w * rad.sigmas[i] * rad.sigmas[i];
    }
    return std::sqrt(acc);
}

} // namespace

SymmetrizationReport symmetrization_check(const ScalarField& F, const SpaceParams& sp,
                                   const std::vector<double>& radii, long samples,
                                   std::uint64_t seed) {
    require_oracle_dim(sp.n);
    require_samples(samples);
    if (radii.empty()) throw RangeError("need at least one check radius");
    for (double r : radii)
        if (!(r > 0.0) || std::isinf(r)) throw RangeError("check radii must be positive and finite");

    // Fine uniform grid for the sampled spherical average; the averaging
    // operator at the largest check radius only sees the profile below it.
    const double top = *std::max_element(radii.begin(), radii.end());
    const int cells = 600;
    std::vector<double> grid(cells);
    const double h = top / cells;
    for (int j = 0; j < cells; ++j) grid[static_cast<std::size_t>(j)] = (j + 0.5) * h;
    const long per_radius = std::max<long>(kMinSamples, samples / 100);

    SymmetrizationReport rep;
    rep.radialized = radialize_sampled(F, sp.n, grid, per_radius, derive_seed(seed, 0x5a17));
    const RadialProfile averaged = hardy_forward(rep.radialized.profile, sp);

    for (std::size_t i = 0; i < radii.size(); ++i) {
        SymmetrizationEntry e;
        e.radius = radii[i];
        e.radial_value = averaged(e.radius);
        e.radial_sigma = propagated_sigma(rep.radialized, sp, e.radius);

        bool confirmed_fail = true;
        for (int attempt = 0; attempt < 3; ++attempt) {
            const McEstimate mc = mc_hardy(
                F, e.radius, sp, samples,
                derive_seed(seed, 1000 + 8 * static_cast<std::uint64_t>(i) + attempt));
            if (attempt == 0) {
                e.mc_value = mc.mean;
                e.mc_sigma = mc.std_error;
            } else {
                ++e.retries;
            }
            // The floor keeps exactly-radial fields, where both sigmas
            // vanish, from failing on bare floating-point roundoff.
            const double band =
                3.0 * std::sqrt(mc.std_error * mc.std_error + e.radial_sigma * e.radial_sigma) +
                1e-12 * std::max(1.0, std::abs(e.radial_value));
            if (std::abs(mc.mean - e.radial_value) <= band) {
                confirmed_fail = false;
                break;
            }
        }
        e.pass = !confirmed_fail;
        rep.entries.push_back(std::move(e));
    }
    rep.all_pass = std::all_of(rep.entries.begin(), rep.entries.end(),
                               [](const SymmetrizationEntry& e) { return e.pass; });
    return rep;
}

ContractionReport norm_contraction_check(const ScalarField& F, double p, double alpha, int n,
                                         const std::vector<double>& radii,
                                         long samples_per_radius, long norm_samples,
                                         std::uint64_t seed) {
    const RadializedField rad =
        radialize_sampled(F, n, radii, samples_per_radius, derive_seed(seed, 0xc0de));

    ContractionReport rep;
    rep.radial_norm = lp_weighted_norm(rad.profile, p, alpha, n);

    // Delta-method error of the radial norm through the per-cell means.
    const double w = sphere_area(n);
    double base = 0.0;
    std::vector<double> masses(rad.values.size(), 0.0);
    for (std::size_t i = 0; i < rad.values.size(); ++i) {
        const IntegralValue m =
            integral_power_log(alpha + n - 1.0, 0, rad.cell_lo[i], rad.cell_hi[i]);
        masses[i] = m.finite ? m.value : 0.0;
        base += w * std::pow(rad.values[i], p) * masses[i];
    }
    if (base > 0.0) {
        const double npow = std::pow(base, 1.0 / p - 1.0) / p;
        double acc = 0.0;
        for (std::size_t i = 0; i < rad.values.size(); ++i) {
            if (rad.values[i] <= 0.0) continue;
            const double d = npow * w * p * std::pow(rad.values[i], p - 1.0) * masses[i];
            acc += d * d * rad.sigmas[i] * rad.sigmas[i];
        }
        rep.radial_sigma = std::sqrt(acc);
    }

    const McEstimate field_norm =
        mc_weighted_norm(F, p, alpha, n, norm_samples, derive_seed(seed, 0xf00d));
    rep.field_norm = field_norm.mean;
    rep.field_sigma = field_norm.std_error;

    const double slack =
        3.0 * std::sqrt(rep.field_sigma * rep.field_sigma + rep.radial_sigma * rep.radial_sigma);
    rep.pass = rep.radial_norm <= rep.field_norm + slack;
    return rep;
}

} // namespace hardy
