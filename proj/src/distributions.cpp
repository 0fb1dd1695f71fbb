#include "stablehit/distributions.hpp"

#include "stablehit/errors.hpp"
#include "stablehit/resolvent.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
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

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// log(2 cosh y) without overflow.
double log_two_cosh(double y) {
    y = std::abs(y);
    return y + std::log1p(std::exp(-2.0 * y));
}

}  // namespace

double beta_prime_density(double a, double b, double x) {
    require(a > 0.0, "beta prime shape a must be positive", a);
    require(b > 0.0, "beta prime shape b must be positive", b);
    require(x > 0.0, "beta prime argument must be positive", x);
    return std::exp((a - 1.0) * std::log(x) - (a + b) * std::log1p(x) - log_beta(a, b));
}

double alpha_cauchy_density(double alpha, double x) {
    require(alpha > 1.0, "alpha-Cauchy density needs alpha > 1", alpha);
    const double c = std::sin(kPi / alpha) / (2.0 * kPi / alpha);
    return c / (1.0 + std::pow(std::abs(x), alpha));
}

double linnik_density(double alpha, double x, const QuadSpec& spec) {
    const StableIndex idx = StableIndex::of(alpha);
    x = std::abs(x);
    if (idx.brownian()) return 0.5 * std::exp(-x);
    // With q = 1 the Linnik density is the resolvent density.
    if (alpha > 1.0) return resolvent_u(idx, 1.0, x, spec);
    require(x != 0.0, "Linnik density is infinite at 0 for alpha <= 1", x);
    RealFn env = [alpha](double th) { return 1.0 / (1.0 + std::pow(th, alpha)); };
    return integrate_oscillatory_cos(env, x, spec) / kPi;
}

double alpha_cauchy_charfn(double alpha, double theta, const QuadSpec& spec) {
    require(alpha > 1.0 && alpha <= 2.0, "alpha-Cauchy characteristic function needs 1 < alpha <= 2", alpha);
    if (theta == 0.0) return 1.0;
    RealFn density = [alpha](double x) { return alpha_cauchy_density(alpha, x); };
    return 2.0 * integrate_oscillatory_cos(density, theta, spec, 0.0, TailHint::power(alpha));
}

double z_density(double a, double x) {
    require(a > 0.0, "z-law shape must be positive", a);
    return std::exp(std::log(kPi) - log_beta(a, a) - 2.0 * a * log_two_cosh(0.5 * kPi * x));
}

double phi_exponent(double a, double theta, const QuadSpec& spec) {
    require(a > 0.0, "Phi_a needs a > 0", a);
    theta = std::abs(theta);
    if (theta == 0.0) return 0.0;
    // Weight e^{-a pi u} / (u (1 - e^{-pi u})), decreasing on (0, inf).
    auto weight = [a](double u) { return std::exp(-a * kPi * u) / (u * -std::expm1(-kPi * u)); };
    RealFn head = [&](double u) {
        if (u < 1e-4) {
            const double base = theta * theta / (2.0 * kPi);
            return base * (1.0 + (0.5 - a) * kPi * u - theta * theta * u * u / 12.0);
        }
        const double s = std::sin(0.5 * theta * u);
        return 2.0 * s * s * weight(u);
    };
    RealFn tail = [&](double u) { return weight(u); };
    const QuadSpec part = spec.with_tolerance(spec.abs_tol / 3.0, spec.rel_tol / 3.0);
    const double near = integrate_adaptive(head, 0.0, 1.0, part);
    const double flat = integrate_adaptive(tail, 1.0, kInf, part);
    const double osc = integrate_oscillatory_cos(tail, theta, part, 1.0);
    return 2.0 * (near + flat - osc);
}

double meixner_density(double beta, double t, double x, const QuadSpec& spec) {
    require(std::abs(beta) < kPi, "Meixner parameter needs |beta| < pi", beta);
    require(t > 0.0, "Meixner time must be positive", t);
    const double d = 0.5 * t;
    const double log_pref = t * std::log(2.0 * std::cos(0.5 * beta)) + log_beta(d, d) - std::log(2.0 * kPi);
    return std::exp(log_pref + beta * x - phi_exponent(d, kPi * x, spec));
}

double rayleigh_survival(double alpha, double x, const QuadSpec& spec) {
    const StableIndex idx = StableIndex::of(alpha);
    require(x >= 0.0, "Rayleigh survival needs x >= 0", x);
    if (x == 0.0) return 1.0;
    const double s = density_p(idx, 1.0, x, spec) / density_p(idx, 1.0, 0.0, spec);
    return std::clamp(s, 0.0, 1.0);
}

double age_duration_transform(double gamma, double p, double q, double r, const QuadSpec& spec) {
    require(gamma > 0.0 && gamma < 1.0, "excursion index gamma must lie in (0,1)", gamma);
    require(p > 0.0, "p must be positive", p);
    require(q >= 0.0 && r >= 0.0, "q and r must be nonnegative", std::min(q, r));
    const double k = 1.0 / gamma;
    const double log_norm = -log_beta(1.0 - gamma, gamma);
    const QuadSpec inner_spec = spec.with_tolerance(0.1 * spec.abs_tol, 0.1 * spec.rel_tol);
    // Inner: int_0^1 du / (p + q b + r b u^{-k}) = int_0^1 u^k / ((p + q b) u^k + r b) du.
    RealFn outer = [&](double b) {
        const double c = p + q * b;
        const double d = r * b;
        RealFn inner = [c, d, k](double u) {
            const double uk = std::pow(u, k);
            return uk / (c * uk + d);
        };
        const double mean_u = d == 0.0 ? 1.0 / c : integrate_adaptive(inner, 0.0, 1.0, inner_spec);
        return std::exp(log_norm - gamma * std::log(b) + (gamma - 1.0) * std::log1p(-b)) * mean_u;
    };
    return integrate_singular(outer, 0.0, 1.0, -gamma, gamma - 1.0, spec);
}

}  // namespace stablehit
