#include "stablehit/resolvent.hpp"

#include "stablehit/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

namespace stablehit {

namespace {

constexpr double kPi = std::numbers::pi;

// Large-argument expansion shared by p_1 and u_1:
//   (1/pi) sum_{k>=1} (-1)^{k+1} Gamma(alpha k + 1) sin(pi alpha k / 2) y^{-alpha k - 1} / c_k
// with c_k = k! for the density and c_k = 1 for the resolvent. Convergent for
// alpha < 1 in the density case, otherwise asymptotic; we accept the partial sum
// only once a term falls below double resolution.
std::optional<double> tail_series(double alpha, double y, bool divide_factorial) {
    const double log_y = std::log(y);
    double sum = 0.0;
    double previous = kInf;
    for (int k = 1; k <= 400; ++k) {
        double log_mag = std::lgamma(alpha * k + 1.0) - (alpha * k + 1.0) * log_y;
        if (divide_factorial) log_mag -= std::lgamma(k + 1.0);
        const double mag = std::exp(log_mag);
        if (mag > previous) return std::nullopt;  // terms started growing
        previous = mag;
        const double s = std::sin(kPi * alpha * k / 2.0);
        const double term = (k % 2 == 1 ? 1.0 : -1.0) * s * mag;
        sum += term;
        if (mag < 1e-17 * std::abs(sum)) return sum / kPi;
    }
    return std::nullopt;
}

// Density at t = 1.
double p1(double alpha, double y, const QuadSpec& spec) {
    y = std::abs(y);
    if (y == 0.0) return std::tgamma(1.0 / alpha) / (alpha * kPi);
    if (y >= 6.0) {
        if (auto s = tail_series(alpha, y, true)) return *s;
    }
    RealFn env = [alpha](double xi) { return std::exp(-std::pow(xi, alpha)); };
    return integrate_oscillatory_cos(env, y, spec) / kPi;
}

// int_0^inf (1 - cos s) / (c + s^alpha) ds with c > 0, 1 < alpha < 3.
double one_minus_cos_integral(double alpha, double c, const QuadSpec& spec) {
    const double cut = kPi / 2.0;
    const QuadSpec part = spec.with_tolerance(spec.abs_tol / 3.0, spec.rel_tol / 3.0);
    RealFn head = [alpha, c](double s) {
        const double sh = std::sin(0.5 * s);
        return 2.0 * sh * sh / (c + std::pow(s, alpha));
    };
    RealFn env = [alpha, c](double s) { return 1.0 / (c + std::pow(s, alpha)); };
    const double near = integrate_adaptive(head, 0.0, cut, part);
    const double flat = integrate_power_tail(env, cut, alpha, part);
    const double osc = integrate_oscillatory_cos(env, 1.0, part, cut);
    return near + flat - osc;
}

// h_1(y) for 0 < y, via s = y xi:
//   h_1(y) = (y^{alpha-1}/pi) int_0^inf (1 - cos s) / (y^alpha + s^alpha) ds.
double h1_small(double alpha, double y, const QuadSpec& spec) {
    return std::pow(y, alpha - 1.0) / kPi * one_minus_cos_integral(alpha, std::pow(y, alpha), spec);
}

double u1(double alpha, double y, const QuadSpec& spec) {
    y = std::abs(y);
    const double u0 = resolvent_u1_at_zero(alpha);
    if (y == 0.0) return u0;
    if (y <= 1.0) return u0 - h1_small(alpha, y, spec);
    if (y >= 8.0) {
        if (auto s = tail_series(alpha, y, false)) return *s;
    }
    RealFn env = [alpha](double xi) { return 1.0 / (1.0 + std::pow(xi, alpha)); };
    return integrate_oscillatory_cos(env, y, spec) / kPi;
}

double h1(double alpha, double y, const QuadSpec& spec) {
    y = std::abs(y);
    if (y == 0.0) return 0.0;
    if (y <= 1.0) return h1_small(alpha, y, spec);
    return resolvent_u1_at_zero(alpha) - u1(alpha, y, spec);
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << what << " must be positive and finite, got " << v;
        throw DomainError(os.str());
    }
}

}  // namespace

StableIndex StableIndex::of(double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0)) {
        std::ostringstream os;
        os << "stability index must lie in (0, 2], got " << alpha;
        throw DomainError(os.str());
    }
    return {alpha, 1.0 / alpha};
}

void StableIndex::require_hitting() const {
    if (!(alpha > 1.0 && alpha <= 2.0)) {
        std::ostringstream os;
        os << "points are polar for alpha <= 1; need 1 < alpha <= 2, got " << alpha;
        throw DomainError(os.str());
    }
}

double density_p(StableIndex idx, double t, double x, const QuadSpec& spec) {
    require_positive(t, "time t");
    x = std::abs(x);
    if (idx.brownian()) return std::exp(-x * x / (4.0 * t)) / (2.0 * std::sqrt(kPi * t));
    const double scale = std::pow(t, -idx.gamma);
    return scale * p1(idx.alpha, x * scale, spec);
}

double resolvent_u(StableIndex idx, double q, double x, const QuadSpec& spec) {
    idx.require_hitting();
    require_positive(q, "rate q");
    x = std::abs(x);
    if (idx.brownian()) return std::exp(-std::sqrt(q) * x) / (2.0 * std::sqrt(q));
    const double qg = std::pow(q, idx.gamma);
    return qg / q * u1(idx.alpha, x * qg, spec);
}

double h_q(StableIndex idx, double q, double x, const QuadSpec& spec) {
    idx.require_hitting();
    require_positive(q, "rate q");
    x = std::abs(x);
    if (idx.brownian()) return -std::expm1(-std::sqrt(q) * x) / (2.0 * std::sqrt(q));
    const double qg = std::pow(q, idx.gamma);
    return std::max(0.0, qg / q * h1(idx.alpha, x * qg, spec));
}

double h_limit(StableIndex idx, double x) {
    idx.require_hitting();
    if (x == 0.0) return 0.0;
    return h_limit_at_one(idx.alpha) * std::pow(std::abs(x), idx.alpha - 1.0);
}

double h_limit_at_one(double alpha) {
    if (!(alpha > 1.0 && alpha < 3.0)) throw DomainError("h(1) closed form needs 1 < alpha < 3");
    return 1.0 / (2.0 * std::tgamma(alpha) * std::sin((alpha - 1.0) * kPi / 2.0));
}

double resolvent_u1_at_zero(double alpha) {
    if (!(alpha > 1.0)) throw DomainError("u_1(0) is finite only for alpha > 1");
    return std::tgamma(1.0 - 1.0 / alpha) * std::tgamma(1.0 / alpha) / (alpha * kPi);
}

double appendix_integral(double alpha, const QuadSpec& spec) {
    if (!(alpha > 1.0 && alpha < 3.0)) {
        std::ostringstream os;
        os << "appendix integral converges only for 1 < alpha < 3, got " << alpha;
        throw DomainError(os.str());
    }
    // Split at pi/2: near zero 1 - cos x = 2 sin^2(x/2) ~ x^2/2, beyond it
    // int x^{-alpha} is exact and the cosine part is an alternating tail.
    const double cut = kPi / 2.0;
    const QuadSpec part = spec.with_tolerance(spec.abs_tol / 2.0, spec.rel_tol / 2.0);
    RealFn head = [alpha](double x) {
        const double s = std::sin(0.5 * x);
        return 2.0 * s * s * std::pow(x, -alpha);
    };
    RealFn env = [alpha](double x) { return std::pow(x, -alpha); };
    const double near = integrate_singular(head, 0.0, cut, 2.0 - alpha, 0.0, part);
    const double flat = std::pow(cut, 1.0 - alpha) / (alpha - 1.0);
    const double osc = integrate_oscillatory_cos(env, 1.0, part, cut);
    return (near + flat - osc) / kPi;
}

double density_p_direct(double alpha, double t, double x, const QuadSpec& spec) {
    StableIndex::of(alpha);
    require_positive(t, "time t");
    RealFn env = [alpha, t](double xi) { return std::exp(-t * std::pow(xi, alpha)); };
    return integrate_oscillatory_cos(env, x, spec) / kPi;
}

double resolvent_u_direct(double alpha, double q, double x, const QuadSpec& spec) {
    StableIndex::of(alpha).require_hitting();
    require_positive(q, "rate q");
    RealFn env = [alpha, q](double xi) { return 1.0 / (q + std::pow(xi, alpha)); };
    return integrate_oscillatory_cos(env, x, spec, 0.0, TailHint::power(alpha)) / kPi;
}

}  // namespace stablehit
