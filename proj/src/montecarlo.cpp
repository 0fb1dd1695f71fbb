#include "stablehit/montecarlo.hpp"

#include "stablehit/errors.hpp"

#include <algorithm>
#include <exception>

namespace stablehit {

namespace {

void check_plan(const McPlan& plan) {
    if (plan.n == 0) throw DomainError("Monte Carlo batch size must be positive");
    if (plan.chunks == 0) throw DomainError("Monte Carlo plan needs at least one chunk");
}

// Runs body(c) for every chunk. Exceptions thrown inside worker threads are
// captured and the first one (by chunk index) is rethrown afterwards.
template <class Body>
void for_each_chunk(std::size_t chunks, Backend backend, Body&& body) {
    std::vector<std::exception_ptr> errors(chunks);
    if (backend == Backend::serial) {
        for (std::size_t c = 0; c < chunks; ++c) body(c);
        return;
    }
    const auto count = static_cast<long long>(chunks);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long c = 0; c < count; ++c) {
        try {
            body(static_cast<std::size_t>(c));
        } catch (...) {
            errors[static_cast<std::size_t>(c)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<double> mc_draws(const Sampler& draw, const McPlan& plan, Backend backend) {
    check_plan(plan);
    std::vector<double> out(plan.n);
    for_each_chunk(plan.chunks, backend, [&](std::size_t c) {
        RandomStream rs(plan.seed, c);
        for (std::size_t i = plan.chunk_begin(c); i < plan.chunk_begin(c + 1); ++i) out[i] = draw(rs);
    });
    return out;
}

std::vector<SampleStats> mc_accumulate(const DrawBody& body, std::size_t n_stats, const McPlan& plan,
                                       Backend backend) {
    check_plan(plan);
    std::vector<std::vector<StatsAccumulator>> partial(plan.chunks, std::vector<StatsAccumulator>(n_stats));
    for_each_chunk(plan.chunks, backend, [&](std::size_t c) {
        RandomStream rs(plan.seed, c);
        auto& acc = partial[c];
        for (std::size_t i = plan.chunk_begin(c); i < plan.chunk_begin(c + 1); ++i) body(rs, acc);
    });
    // Merge in chunk order so the result is independent of scheduling.
    std::vector<SampleStats> out;
    out.reserve(n_stats);
    for (std::size_t k = 0; k < n_stats; ++k) {
        StatsAccumulator total;
        for (std::size_t c = 0; c < plan.chunks; ++c) total.merge(partial[c][k]);
        out.push_back(total.stats());
    }
    return out;
}

std::vector<SampleStats> mc_means(const Sampler& draw, const std::vector<RealFn>& gs, const McPlan& plan,
                                  Backend backend) {
    return mc_accumulate(
        [&](RandomStream& rs, std::vector<StatsAccumulator>& acc) {
            const double x = draw(rs);
            for (std::size_t k = 0; k < gs.size(); ++k) acc[k].add(gs[k](x));
        },
        gs.size(), plan, backend);
}

std::vector<double> evaluate_grid(const RealFn& f, const std::vector<double>& xs, Backend backend) {
    std::vector<double> out(xs.size());
    for_each_chunk(xs.size(), backend, [&](std::size_t i) { out[i] = f(xs[i]); });
    return out;
}

TabulatedCdf::TabulatedCdf(const RealFn& cdf, std::vector<double> grid, Backend backend) : x_(std::move(grid)) {
    if (x_.size() < 2) throw DomainError("tabulated CDF needs at least two grid points");
    if (!std::is_sorted(x_.begin(), x_.end())) throw DomainError("tabulated CDF grid must be increasing");
    f_ = evaluate_grid(cdf, x_, backend);
    for (std::size_t i = 1; i < f_.size(); ++i) f_[i] = std::max(f_[i], f_[i - 1]);
}

TabulatedCdf TabulatedCdf::from_density(const RealFn& density, std::vector<double> grid, double mass_below,
                                        Backend backend, const QuadSpec& spec) {
    if (grid.size() < 2) throw DomainError("tabulated CDF needs at least two grid points");
    if (!std::is_sorted(grid.begin(), grid.end())) throw DomainError("tabulated CDF grid must be increasing");
    std::vector<double> cells(grid.size() - 1);
    for_each_chunk(cells.size(), backend,
                   [&](std::size_t i) { cells[i] = integrate_adaptive(density, grid[i], grid[i + 1], spec); });
    TabulatedCdf out;
    out.x_ = std::move(grid);
    out.f_.resize(out.x_.size());
    // Neumaier summation of the cell masses.
    double sum = mass_below, comp = 0.0;
    out.f_[0] = mass_below;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const double t = sum + cells[i];
        comp += std::abs(sum) >= std::abs(cells[i]) ? (sum - t) + cells[i] : (cells[i] - t) + sum;
        sum = t;
        out.f_[i + 1] = sum + comp;
    }
    return out;
}

double TabulatedCdf::operator()(double x) const {
    if (x <= x_.front()) return std::clamp(f_.front(), 0.0, 1.0);
    if (x >= x_.back()) return std::clamp(f_.back(), 0.0, 1.0);
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin());
    const double w = (x - x_[i - 1]) / (x_[i] - x_[i - 1]);
    return std::clamp(f_[i - 1] + w * (f_[i] - f_[i - 1]), 0.0, 1.0);
}

}  // namespace stablehit
