// Timing comparison between the OpenMP sampling kernels and their serial
// reference paths. Both share one batch layout and one seed derivation, so
// the estimates agree bit for bit; this program measures wall time only.
//
// Usage: bench_sampling [samples...]   (defaults: 1e5 2e5 1e6 4e6)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hardy/field.hpp"
#include "hardy/oracle.hpp"
#include "hardy/params.hpp"

using namespace hardy;

namespace {

double time_ms(const std::function<void()>& work) {
    const auto t0 = std::chrono::steady_clock::now();
    work();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

// Best of three runs, so one scheduler hiccup does not skew the row.
double best_ms(const std::function<void()>& work) {
    double best = time_ms(work);
    for (int i = 0; i < 2; ++i) best = std::min(best, time_ms(work));
    return best;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<long> sizes;
    for (int i = 1; i < argc; ++i) sizes.push_back(std::atol(argv[i]));
    if (sizes.empty()) sizes = {100000, 200000, 1000000, 4000000};

    RawParams raw;
    raw.n = 2;
    raw.p = 2.0;
    raw.q = 2.0;
    raw.alpha = 0.0;
    raw.beta = 0.5;
    const SpaceParams sp = validate_forward(raw);
    const ScalarField F = field_offset_gaussian(2);
    const ScalarField G = field_from_profile(RadialProfile::power(1.0, -0.5, 0.25, 2.0));

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("%-14s %12s %12s %12s %9s\n", "kernel", "samples", "serial ms", "parallel ms",
                "speedup");

    for (long s : sizes) {
        struct Row {
            const char* name;
            std::function<void()> serial;
            std::function<void()> parallel;
        };
        const std::vector<Row> rows = {
            {"averaging", [&] { mc_hardy_serial(F, 1.5, sp, s, 7); },
             [&] { mc_hardy(F, 1.5, sp, s, 7); }},
            {"adjoint", [&] { mc_adjoint_serial(G, 0.5, sp, s, 7); },
             [&] { mc_adjoint(G, 0.5, sp, s, 7); }},
            {"norm", [&] { mc_weighted_norm_serial(F, 2.0, -0.5, 2, s, 7); },
             [&] { mc_weighted_norm(F, 2.0, -0.5, 2, s, 7); }},
        };
        for (const Row& r : rows) {
            const double ts = best_ms(r.serial);
            const double tp = best_ms(r.parallel);
            std::printf("%-14s %12ld %12.2f %12.2f %8.2fx\n", r.name, s, ts, tp, ts / tp);
        }
    }
    return 0;
}
