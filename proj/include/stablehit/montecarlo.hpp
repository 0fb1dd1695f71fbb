#pragma once

#include "stablehit/numerics.hpp"
#include "stablehit/sampling.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace stablehit {

/// How a Monte Carlo batch is cut up. Chunk c of `chunks` covers a fixed,
/// contiguous index range and draws from RandomStream(seed, c), so the
/// result does not depend on how many threads execute the chunks.
struct McPlan {
    std::uint64_t seed = 1;
    std::size_t n = 1'000'000;
    std::size_t chunks = 64;

    [[nodiscard]] std::size_t chunk_begin(std::size_t c) const { return n * c / chunks; }
};

enum class Backend { serial, openmp };

using Sampler = std::function<double(RandomStream&)>;

/// All n draws, in index order.
std::vector<double> mc_draws(const Sampler& draw, const McPlan& plan, Backend backend = Backend::openmp);

/// Per-draw body that feeds any number of accumulators; the building block
/// for batches whose draws are tuples rather than single values.
using DrawBody = std::function<void(RandomStream&, std::vector<StatsAccumulator>&)>;

std::vector<SampleStats> mc_accumulate(const DrawBody& body, std::size_t n_stats, const McPlan& plan,
                                       Backend backend = Backend::openmp);

/// Statistics of g_k(X) for each k over one shared batch of draws of X.
std::vector<SampleStats> mc_means(const Sampler& draw, const std::vector<RealFn>& gs, const McPlan& plan,
                                  Backend backend = Backend::openmp);

/// f evaluated at every point of xs.
std::vector<double> evaluate_grid(const RealFn& f, const std::vector<double>& xs, Backend backend = Backend::openmp);

/// A CDF known on an increasing grid, linearly interpolated and clamped to
/// [0, 1]; used as the KS reference when the exact CDF is expensive.
class TabulatedCdf {
public:
    TabulatedCdf(const RealFn& cdf, std::vector<double> grid, Backend backend = Backend::openmp);

    double operator()(double x) const;

    /// CDF from a density: the integral over each grid cell, prefix-summed,
    /// starting from `mass_below` at grid.front().
    static TabulatedCdf from_density(const RealFn& density, std::vector<double> grid, double mass_below,
                                     Backend backend = Backend::openmp, const QuadSpec& spec = {});

private:
    TabulatedCdf() = default;

    std::vector<double> x_;
    std::vector<double> f_;
};

}  // namespace stablehit
