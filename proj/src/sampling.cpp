#include "stablehit/sampling.hpp"

#include "stablehit/errors.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/polygamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace stablehit {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* what, double value) {
    if (!ok) {
        std::ostringstream os;
        os << what << " (got " << value << ")";
        throw DomainError(os.str());
    }
}

double log_kanter_a(double beta, double u) {
    const double c = 1.0 / (1.0 - beta);
    const double su = std::sin(kPi * std::min(u, 1.0 - u));
    return beta * c * std::log(std::sin(beta * kPi * u)) + std::log(std::sin((1.0 - beta) * kPi * u)) -
           c * std::log(su);
}

// Value at u = 0+ of A, the supremum of A^{-c/2} over (0,1).
double kanter_a_at_zero(double beta) { return std::pow(beta, beta / (1.0 - beta)) * (1.0 - beta); }

// Tilted CDF F(t) = P(T' <= t) of the t^{-1/2} size-biased positive stable law.
// With c = (1-beta)/beta and s = t^{-1/c}:
//   E[T^{-1/2}; T <= t] = int_0^1 A(u)^{-c/2} Gamma(1 + c/2, A(u) s) du.
// `upper` selects the complement, computed with the lower incomplete gamma.
double tilted_mass(double beta, double t, bool upper, const QuadSpec& spec) {
    const double c = (1.0 - beta) / beta;
    const double k = 1.0 + 0.5 * c;
    const double log_s = -std::log(t) / c;
    RealFn f = [=](double u) {
        const double la = log_kanter_a(beta, u);
        const double x = std::exp(la + log_s);
        const double w = std::exp(-0.5 * c * la);
        return w * (upper ? boost::math::gamma_p(k, x) : boost::math::gamma_q(k, x));
    };
    return integrate_adaptive(f, 0.0, 1.0, spec);
}

double tilted_weight_integral(double beta, const QuadSpec& spec) {
    const double c = (1.0 - beta) / beta;
    RealFn f = [=](double u) { return std::exp(-0.5 * c * log_kanter_a(beta, u)); };
    return integrate_adaptive(f, 0.0, 1.0, spec);
}

struct TiltedTable {
    double beta = 0.5;
    std::vector<double> log_t;
    std::vector<double> cdf;
    double tail_exponent = 1.0;

    double invert(double p) const {
        if (p <= cdf.front()) return std::exp(log_t.front());
        if (p >= cdf.back()) {
            // Pareto tail beyond the table: 1 - F(t) ~ t^{-(beta + 1/2)}.
            const double ratio = (1.0 - p) / (1.0 - cdf.back());
            return std::exp(log_t.back() - std::log(ratio) / tail_exponent);
        }
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), p);
        const std::size_t i = static_cast<std::size_t>(it - cdf.begin());
        const double f0 = cdf[i - 1], f1 = cdf[i];
        const double w = f1 > f0 ? (p - f0) / (f1 - f0) : 0.5;
        return std::exp(log_t[i - 1] + w * (log_t[i] - log_t[i - 1]));
    }
};

std::shared_ptr<const TiltedTable> build_tilted_table(double beta) {
    constexpr int kPoints = 4096;
    const QuadSpec spec = QuadSpec{}.with_tolerance(1e-13, 1e-11);
    const double norm = tilted_weight_integral(beta, spec);
    auto lower = [&](double lt) { return tilted_mass(beta, std::exp(lt), false, spec) / norm; };
    auto upper = [&](double lt) { return tilted_mass(beta, std::exp(lt), true, spec) / norm; };

    double lo = 0.0, hi = 0.0;
    while (lower(lo) > 1e-13 && lo > -200.0) lo -= 2.0;
    while (upper(hi) > 1e-10 && hi < 200.0) hi += 2.0;

    auto table = std::make_shared<TiltedTable>();
    table->beta = beta;
    table->tail_exponent = beta + 0.5;
    table->log_t.resize(kPoints);
    table->cdf.resize(kPoints);
    bool failed = false;
#pragma omp parallel for schedule(dynamic, 16)
    for (int i = 0; i < kPoints; ++i) {
        const double lt = lo + (hi - lo) * i / (kPoints - 1);
        table->log_t[i] = lt;
        try {
            // Use whichever tail is smaller to keep relative accuracy.
            const double up = upper(lt);
            table->cdf[i] = up < 0.5 ? 1.0 - up : lower(lt);
        } catch (const Error&) {
#pragma omp critical
            failed = true;
        }
    }
    if (failed) throw TableBuildError("quadrature failed while tabulating the size-biased stable CDF");
    for (int i = 1; i < kPoints; ++i) {
        if (table->cdf[i] < table->cdf[i - 1] - 1e-9) {
            std::ostringstream os;
            os << "size-biased stable CDF decreases at log t = " << table->log_t[i];
            throw TableBuildError(os.str());
        }
        table->cdf[i] = std::max(table->cdf[i], table->cdf[i - 1]);
    }
    return table;
}

std::shared_ptr<const TiltedTable> tilted_table(double beta) {
    static std::mutex mutex;
    static std::map<double, std::shared_ptr<const TiltedTable>> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(beta); it != cache.end()) return it->second;
    }
    auto built = build_tilted_table(beta);
    std::lock_guard lock(mutex);
    return cache.emplace(beta, std::move(built)).first->second;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
}

double RandomStream::uniform() {
    // 53 random bits, shifted by half an ulp so that 0 and 1 are excluded.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::exponential() { return -std::log(uniform()); }

double RandomStream::normal() { return std::normal_distribution<double>{}(engine_); }

double RandomStream::gamma(double shape) { return std::gamma_distribution<double>{shape, 1.0}(engine_); }

void StatsAccumulator::add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
}

void StatsAccumulator::merge(const StatsAccumulator& other) {
    if (other.n_ == 0) return;
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n_), nb = static_cast<double>(other.n_);
    const double n = na + nb;
    const double d = other.mean_ - mean_;
    mean_ += d * nb / n;
    m2_ += other.m2_ + d * d * na * nb / n;
    n_ += other.n_;
}

SampleStats StatsAccumulator::stats() const {
    SampleStats s;
    s.n = n_;
    s.mean = mean_;
    s.variance = n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
    s.stderr_ = n_ > 0 ? std::sqrt(s.variance / static_cast<double>(n_)) : 0.0;
    return s;
}

SampleStats summarize(const std::vector<double>& xs) {
    StatsAccumulator acc;
    for (double x : xs) acc.add(x);
    return acc.stats();
}

double ks_distance(std::vector<double> xs, const RealFn& cdf) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double sample_uniform(RandomStream& rs) { return rs.uniform(); }

double sample_exponential(RandomStream& rs) { return rs.exponential(); }

double sample_gamma(double a, RandomStream& rs) {
    require(a > 0.0, "gamma shape must be positive", a);
    return rs.gamma(a);
}

double sample_beta(double a, double b, RandomStream& rs) {
    require(a > 0.0, "beta shape a must be positive", a);
    require(b > 0.0, "beta shape b must be positive", b);
    const double x = rs.gamma(a);
    const double y = rs.gamma(b);
    return x / (x + y);
}

double sample_bernoulli_sign(RandomStream& rs) { return (rs.engine()() >> 63) ? 1.0 : -1.0; }

double sample_sym_stable(double alpha, RandomStream& rs) {
    StableIndex::of(alpha);
    if (alpha == 2.0) return std::sqrt(2.0) * rs.normal();
    const double v = kPi * (rs.uniform() - 0.5);
    if (alpha == 1.0) return std::tan(v);
    const double w = rs.exponential();
    return std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
           std::pow(std::cos(v - alpha * v) / w, (1.0 - alpha) / alpha);
}

double kanter_a(double beta, double u) {
    require(beta > 0.0 && beta < 1.0, "Kanter function needs 0 < beta < 1", beta);
    return std::exp(log_kanter_a(beta, u));
}

double sample_unilateral_stable(double beta, RandomStream& rs) {
    require(beta > 0.0 && beta < 1.0, "positive stable index must lie in (0,1)", beta);
    const double c = (1.0 - beta) / beta;
    const double la = log_kanter_a(beta, rs.uniform());
    return std::exp(c * (la - std::log(rs.exponential())));
}

double sample_size_biased_stable(double beta, RandomStream& rs) {
    require(beta > 0.0 && beta < 1.0, "positive stable index must lie in (0,1)", beta);
    return tilted_table(beta)->invert(rs.uniform());
}

double size_biased_stable_cdf(double beta, double t, const QuadSpec& spec) {
    require(beta > 0.0 && beta < 1.0, "positive stable index must lie in (0,1)", beta);
    if (t <= 0.0) return 0.0;
    return std::clamp(tilted_mass(beta, t, false, spec) / tilted_weight_integral(beta, spec), 0.0, 1.0);
}

double size_biased_stable_norm(double beta, const QuadSpec& spec) {
    require(beta > 0.0 && beta < 1.0, "positive stable index must lie in (0,1)", beta);
    const double c = (1.0 - beta) / beta;
    return std::tgamma(1.0 + 0.5 * c) * tilted_weight_integral(beta, spec);
}

double sample_size_biased_stable_exact(double beta, RandomStream& rs) {
    require(beta > 0.0 && beta < 1.0, "positive stable index must lie in (0,1)", beta);
    // Tilting (U, E) by (E/A(U))^{c/2} makes them independent with
    // U' ~ A^{-c/2} du (normalised) and E' ~ gamma(1 + c/2).
    const double c = (1.0 - beta) / beta;
    const double log_a0 = std::log(kanter_a_at_zero(beta));
    double la = 0.0;
    for (;;) {
        const double u = rs.uniform();
        la = log_kanter_a(beta, u);
        if (std::log(rs.uniform()) <= -0.5 * c * (la - log_a0)) break;
    }
    return std::exp(c * (la - std::log(rs.gamma(1.0 + 0.5 * c))));
}

double sample_alpha_cauchy(double alpha, RandomStream& rs) {
    require(alpha > 1.0, "alpha-Cauchy needs alpha > 1", alpha);
    const double g = 1.0 / alpha;
    const double ratio = rs.gamma(g) / rs.gamma(1.0 - g);
    return sample_bernoulli_sign(rs) * std::pow(ratio, g);
}

double sample_alpha_rayleigh(double alpha, RandomStream& rs) {
    StableIndex::of(alpha);
    const double e = rs.exponential();
    if (alpha == 2.0) return 2.0 * std::sqrt(e);
    return 2.0 * std::sqrt(e * sample_size_biased_stable(0.5 * alpha, rs));
}

double sample_linnik(double alpha, RandomStream& rs) {
    StableIndex::of(alpha);
    const double e = rs.exponential();
    return std::pow(e, 1.0 / alpha) * sample_sym_stable(alpha, rs);
}

double sample_T_point(StableIndex idx, double a, RandomStream& rs) {
    idx.require_hitting();
    require(a != 0.0, "target level must be nonzero", a);
    const double r = sample_alpha_rayleigh(idx.alpha, rs);
    const double b = sample_beta(1.0 - idx.gamma, idx.gamma, rs);
    return std::pow(std::abs(a) / r, idx.alpha) / b;
}

double sample_overshoot(double alpha, double a, RandomStream& rs) {
    StableIndex::of(alpha);
    require(a > 0.0, "overshoot level must be positive", a);
    if (alpha == 2.0) return 0.0;
    return a * rs.gamma(1.0 - 0.5 * alpha) / rs.gamma(0.5 * alpha);
}

AgeDuration sample_excursion_triplet(double gamma, RandomStream& rs) {
    require(gamma > 0.0 && gamma < 1.0, "excursion index must lie in (0,1)", gamma);
    const double b = sample_beta(1.0 - gamma, gamma, rs);
    const double u = rs.uniform();
    return {b, b / std::pow(u, 1.0 / gamma)};
}

ExpTimeTriplet sample_excursion_exp_triplet(double gamma, RandomStream& rs) {
    require(gamma > 0.0 && gamma < 1.0, "excursion index must lie in (0,1)", gamma);
    const double g = rs.gamma(gamma);
    const double xi = rs.gamma(1.0 - gamma);
    const double u = rs.uniform();
    return {g, xi, xi / std::pow(u, 1.0 / gamma)};
}

double sample_gamma_series_subordinator(double a, double t, int n_terms, RandomStream& rs) {
    require(a > 0.0, "series shift a must be positive", a);
    require(t > 0.0, "time t must be positive", t);
    require(n_terms >= 1, "n_terms must be >= 1", n_terms);
    const double scale = 2.0 / (kPi * kPi);
    double sum = 0.0;
    if (t == 1.0) {
        for (int j = 0; j < n_terms; ++j) {
            const double d = j + a;
            sum += rs.exponential() / (d * d);
        }
    } else {
        std::gamma_distribution<double> g(t, 1.0);
        for (int j = 0; j < n_terms; ++j) {
            const double d = j + a;
            sum += g(rs.engine()) / (d * d);
        }
    }
    return scale * (sum + t * boost::math::trigamma(n_terms + a));
}

double gamma_series_truncation_bound(double a, double t, int n_terms, double lambda) {
    const double scale = 2.0 / (kPi * kPi);
    // sum_{j >= n} (j+a)^{-4} = psi'''(n+a) / 6.
    const double tail4 = boost::math::polygamma(3, n_terms + a) / 6.0;
    return 0.5 * lambda * lambda * t * scale * scale * tail4;
}

LaplaceTableSampler::LaplaceTableSampler(LaplaceTransform phi, int table_size, int n_terms) {
    if (table_size < 8) throw DomainError("Laplace table needs at least 8 points");
    auto F = [&](double t) {
        try {
            return laplace_invert_cdf(phi, t, n_terms);
        } catch (const NumericInstability& e) {
            throw TableBuildError(std::string("Laplace inversion unstable while tabulating: ") + e.what());
        }
    };
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < 60 && F(std::exp(lo)) > 1e-5; ++i) lo -= 1.0;
    for (int i = 0; i < 60 && F(std::exp(hi)) < 1.0 - 1e-5; ++i) hi += 1.0;

    log_t_.resize(static_cast<std::size_t>(table_size));
    cdf_.resize(static_cast<std::size_t>(table_size));
    for (int i = 0; i < table_size; ++i) {
        const double lt = lo + (hi - lo) * i / (table_size - 1);
        log_t_[static_cast<std::size_t>(i)] = lt;
        cdf_[static_cast<std::size_t>(i)] = F(std::exp(lt));
    }
    for (std::size_t i = 1; i < cdf_.size(); ++i) {
        if (cdf_[i] < cdf_[i - 1] - 5e-4) {
            std::ostringstream os;
            os << "inverted CDF for '" << phi.label << "' decreases by " << cdf_[i - 1] - cdf_[i] << " at t = "
               << std::exp(log_t_[i]);
            throw TableBuildError(os.str());
        }
        cdf_[i] = std::max(cdf_[i], cdf_[i - 1]);
    }
}

double LaplaceTableSampler::operator()(RandomStream& rs) const {
    const double p = rs.uniform();
    if (p <= cdf_.front()) return std::exp(log_t_.front());
    if (p >= cdf_.back()) return std::exp(log_t_.back());
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), p);
    const std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
    const double f0 = cdf_[i - 1], f1 = cdf_[i];
    const double w = f1 > f0 ? (p - f0) / (f1 - f0) : 0.5;
    return std::exp(log_t_[i - 1] + w * (log_t_[i] - log_t_[i - 1]));
}

double LaplaceTableSampler::cdf(double t) const {
    if (t <= 0.0) return 0.0;
    const double lt = std::log(t);
    if (lt <= log_t_.front()) return cdf_.front();
    if (lt >= log_t_.back()) return cdf_.back();
    const auto it = std::upper_bound(log_t_.begin(), log_t_.end(), lt);
    const std::size_t i = static_cast<std::size_t>(it - log_t_.begin());
    const double w = (lt - log_t_[i - 1]) / (log_t_[i] - log_t_[i - 1]);
    return cdf_[i - 1] + w * (cdf_[i] - cdf_[i - 1]);
}

double sample_from_lt(const LaplaceTransform& phi, RandomStream& rs, int table_size) {
    return LaplaceTableSampler(phi, table_size)(rs);
}

}  // namespace stablehit
