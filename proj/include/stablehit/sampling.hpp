#pragma once

#include "stablehit/numerics.hpp"
#include "stablehit/resolvent.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace stablehit {

/// A reproducible random stream. Streams with distinct (seed, stream_id)
/// are seeded through std::seed_seq from all four 32-bit halves.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    [[nodiscard]] std::uint64_t stream_id() const { return stream_id_; }

    /// Uniform on the open interval (0, 1).
    double uniform();
    double exponential();
    double normal();
    double gamma(double shape);

    std::mt19937_64& engine() { return engine_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

struct SampleStats {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double stderr_ = 0.0;   // sqrt(variance / n)
    std::optional<double> ks;
};

/// Welford accumulator; `merge` is Chan's parallel update, so chunked
/// accumulation merged in a fixed order is reproducible.
class StatsAccumulator {
public:
    void add(double x);
    void merge(const StatsAccumulator& other);
    [[nodiscard]] SampleStats stats() const;
    [[nodiscard]] std::size_t count() const { return n_; }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

SampleStats summarize(const std::vector<double>& xs);

/// Kolmogorov-Smirnov distance between the empirical law of `xs` and `cdf`.
/// Sorts a copy of the data.
double ks_distance(std::vector<double> xs, const RealFn& cdf);

// Elementary laws.
double sample_uniform(RandomStream& rs);
double sample_exponential(RandomStream& rs);
double sample_gamma(double a, RandomStream& rs);
double sample_beta(double a, double b, RandomStream& rs);
double sample_bernoulli_sign(RandomStream& rs);

/// X_alpha(1) with E[exp(i theta X)] = exp(-|theta|^alpha), by Chambers-Mallows-Stuck.
double sample_sym_stable(double alpha, RandomStream& rs);

/// Positive stable T with E[exp(-lambda T)] = exp(-lambda^beta), by Kanter's representation.
double sample_unilateral_stable(double beta, RandomStream& rs);

/// Kanter's function A(u) on (0,1); T = (A(U)/E)^{(1-beta)/beta}.
double kanter_a(double beta, double u);

/// The t^{-1/2} size-biased positive stable variable, by inversion of a
/// tabulated tilted CDF (tables are built once per beta and cached).
double sample_size_biased_stable(double beta, RandomStream& rs);

/// P(T' <= t) by quadrature, and E[T^{-1/2}] by quadrature.
double size_biased_stable_cdf(double beta, double t, const QuadSpec& spec = {});
double size_biased_stable_norm(double beta, const QuadSpec& spec = {});

/// Exact rejection sampler for T', kept as an independent check of the table sampler.
double sample_size_biased_stable_exact(double beta, RandomStream& rs);

double sample_alpha_cauchy(double alpha, RandomStream& rs);
double sample_alpha_rayleigh(double alpha, RandomStream& rs);
double sample_linnik(double alpha, RandomStream& rs);

/// T_a(X_alpha) = |a|^alpha / (R_alpha^alpha B_{1-gamma, gamma}).
double sample_T_point(StableIndex idx, double a, RandomStream& rs);

/// Overshoot a G_{1-alpha/2} / G'_{alpha/2}; identically 0 at alpha = 2.
double sample_overshoot(double alpha, double a, RandomStream& rs);

struct AgeDuration {
    double xi = 0.0;
    double delta = 0.0;
};
struct ExpTimeTriplet {
    double g = 0.0;
    double xi = 0.0;
    double delta = 0.0;
};

/// (Xi_1, Delta_1) = (B, B / U^{1/gamma}), B ~ beta(1-gamma, gamma).
AgeDuration sample_excursion_triplet(double gamma, RandomStream& rs);

/// (G, Xi, Delta) at an independent exponential time = (G_gamma, G'_{1-gamma}, G'_{1-gamma} / U^{1/gamma}).
ExpTimeTriplet sample_excursion_exp_triplet(double gamma, RandomStream& rs);

/// (2/pi^2) sum_{j < n_terms} g_j(t) / (j+a)^2 with g_j ~ gamma(t), plus the
/// mean of the omitted tail, t (2/pi^2) psi'(n_terms + a).
double sample_gamma_series_subordinator(double a, double t, int n_terms, RandomStream& rs);

/// Bound on |E[exp(-lambda X)] - E[exp(-lambda X_n)]| from replacing the tail
/// by its mean: lambda^2 Var(tail) / 2.
double gamma_series_truncation_bound(double a, double t, int n_terms, double lambda);

/// Inverse-CDF sampler for a law known through its Laplace transform. The CDF
/// is tabulated on a log-spaced grid by Gaver-Stehfest inversion; draws are
/// approximate with error bounded by table resolution plus inversion error.
class LaplaceTableSampler {
public:
    LaplaceTableSampler(LaplaceTransform phi, int table_size = 512, int n_terms = 12);

    double operator()(RandomStream& rs) const;
    [[nodiscard]] double cdf(double t) const;
    [[nodiscard]] const std::vector<double>& grid() const { return log_t_; }
    [[nodiscard]] const std::vector<double>& values() const { return cdf_; }

private:
    std::vector<double> log_t_;
    std::vector<double> cdf_;
};

/// One draw from a freshly built table; prefer LaplaceTableSampler for batches.
double sample_from_lt(const LaplaceTransform& phi, RandomStream& rs, int table_size = 512);

}  // namespace stablehit
