// Serial vs OpenMP Monte Carlo kernels: wall time and bitwise agreement.
#include "stablehit/montecarlo.hpp"
#include "stablehit/sampling.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

using namespace stablehit;

namespace {

struct Case {
    std::string name;
    Sampler draw;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo backend benchmark"};
    std::size_t n = 2'000'000;
    std::size_t chunks = 64;
    std::uint64_t seed = 1;
    int repeats = 3;
    app.add_option("-n", n, "draws per run")->capture_default_str();
    app.add_option("--streams", chunks, "chunks (random streams)")->capture_default_str();
    app.add_option("--seed", seed)->capture_default_str();
    app.add_option("--repeats", repeats, "best-of repeats")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    const StableIndex idx = StableIndex::of(1.5);
    const std::vector<Case> cases = {
        {"sym-stable(1.5)", [](RandomStream& rs) { return sample_sym_stable(1.5, rs); }},
        {"t-point(1.5)", [idx](RandomStream& rs) { return sample_T_point(idx, 1.0, rs); }},
        {"alpha-rayleigh(1.5)", [](RandomStream& rs) { return sample_alpha_rayleigh(1.5, rs); }},
        {"gamma-series(1/2,1,100)", [](RandomStream& rs) { return sample_gamma_series_subordinator(0.5, 1.0, 100, rs); }},
    };

    std::printf("sampler,n,threads,serial_s,openmp_s,speedup,identical\n");
    const McPlan plan{seed, n, chunks};
    const int threads = omp_get_max_threads();
    for (const auto& c : cases) {
        {
            RandomStream warm(seed, 0);
            c.draw(warm);  // builds any cached tables outside the timed region
        }
        double best[2] = {1e300, 1e300};
        std::vector<double> out[2];
        for (int r = 0; r < repeats; ++r) {
            for (int b = 0; b < 2; ++b) {
                const auto t0 = std::chrono::steady_clock::now();
                out[b] = mc_draws(c.draw, plan, b == 0 ? Backend::serial : Backend::openmp);
                best[b] = std::min(best[b], seconds_since(t0));
            }
        }
        const bool same = std::memcmp(out[0].data(), out[1].data(), n * sizeof(double)) == 0;
        std::printf("%s,%zu,%d,%.4f,%.4f,%.2f,%s\n", c.name.c_str(), n, threads, best[0], best[1], best[0] / best[1],
                    same ? "yes" : "no");
    }
    return 0;
}
