#include "stablehit/numerics.hpp"

#include "stablehit/errors.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>

namespace stablehit {

void QuadSpec::validate() const {
    if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !(abs_tol + rel_tol > 0.0))
        throw DomainError("QuadSpec: need abs_tol >= 0, rel_tol >= 0 and abs_tol + rel_tol > 0");
    if (max_panels < 1) throw DomainError("QuadSpec: max_panels must be >= 1");
    if (oscillatory_terms < 1) throw DomainError("QuadSpec: oscillatory_terms must be >= 1");
}

double LaplaceTransform::operator()(double q) const {
    if (!(q >= q_min)) {
        std::ostringstream os;
        os << "Laplace transform '" << label << "' evaluated at q=" << q << " below q_min=" << q_min;
        throw DomainError(os.str());
    }
    return eval(q);
}

namespace {

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// One Gauss-Kronrod 7/15 panel with the QUADPACK error heuristic.
Panel gk15(const RealFn& f, double a, double b) {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    const auto& xk = gauss_kronrod<double, 15>::abscissa();
    const auto& wk = gauss_kronrod<double, 15>::weights();
    const auto& wg = gauss<double, 7>::weights();

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<double, 15> fv{};
    fv[0] = f(center);
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double dx = half * xk[i];
        fv[2 * i - 1] = f(center - dx);
        fv[2 * i] = f(center + dx);
    }
    for (double v : fv) {
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "non-finite integrand on [" << a << ", " << b << "]";
            throw NonConvergence(os.str());
        }
    }

    double resk = wk[0] * fv[0];
    double resg = wg[0] * fv[0];
    double resabs = std::abs(resk);
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double pair = fv[2 * i - 1] + fv[2 * i];
        resk += wk[i] * pair;
        resabs += wk[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
        if (i % 2 == 0) resg += wg[i / 2] * pair;
    }
    const double mean = 0.5 * resk;
    double resasc = wk[0] * std::abs(fv[0] - mean);
    for (std::size_t i = 1; i < xk.size(); ++i)
        resasc += wk[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));

    resk *= half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg * half));
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {a, b, resk, err};
}

double adaptive_finite(const RealFn& f, double lo, double hi, const QuadSpec& spec) {
    std::priority_queue<Panel> heap;
    Panel first = gk15(f, lo, hi);
    double total = first.value;
    double total_err = first.error;
    heap.push(first);
    int panels = 1;

    auto target = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
    while (total_err > target()) {
        if (panels >= spec.max_panels) {
            std::ostringstream os;
            os << "adaptive quadrature on [" << lo << ", " << hi << "] exhausted " << spec.max_panels
               << " panels; estimate " << total << " with error " << total_err;
            throw NonConvergence(os.str());
        }
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            std::ostringstream os;
            os << "adaptive quadrature cannot split panel near " << worst.a << "; error " << total_err;
            throw NonConvergence(os.str());
        }
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
        // Incremental error bookkeeping drifts; refresh it when it looks converged.
        if (total_err <= target()) {
            double v = 0.0, e = 0.0;
            auto copy = heap;
            while (!copy.empty()) {
                v += copy.top().value;
                e += copy.top().error;
                copy.pop();
            }
            total = v;
            total_err = e;
        }
    }
    return total;
}

}  // namespace

double integrate_adaptive(const RealFn& f, double lo, double hi, const QuadSpec& spec) {
    spec.validate();
    if (lo == hi) return 0.0;
    if (hi < lo) return -integrate_adaptive(f, hi, lo, spec);
    if (std::isinf(lo)) throw DomainError("integrate_adaptive: lower limit must be finite");
    if (std::isinf(hi)) {
        RealFn mapped = [&f, lo](double u) {
            const double om = 1.0 - u;
            const double x = lo + u / om;
            if (!std::isfinite(x)) return 0.0;
            const double v = f(x);
            return v == 0.0 ? 0.0 : v / (om * om);
        };
        return adaptive_finite(mapped, 0.0, 1.0, spec);
    }
    return adaptive_finite(f, lo, hi, spec);
}

double integrate_power_tail(const RealFn& f, double lo, double decay_exponent, const QuadSpec& spec) {
    if (!(lo > 0.0)) throw DomainError("integrate_power_tail: lower limit must be positive");
    if (!(decay_exponent > 1.0)) throw DomainError("integrate_power_tail: decay exponent must exceed 1");
    const double m = 1.0 / (decay_exponent - 1.0);
    const double log_lo = std::log(lo);
    RealFn mapped = [&f, m, lo, log_lo](double v) {
        const double x = std::exp(log_lo - m * std::log(v));
        if (!std::isfinite(x)) return 0.0;
        const double fx = f(x);
        if (fx == 0.0) return 0.0;
        // dx/dv = m * x / v
        return fx * m * x / v;
    };
    return integrate_adaptive(mapped, 0.0, 1.0, spec);
}

double integrate_singular(const RealFn& f, double lo, double hi, double lo_exponent, double hi_exponent,
                          const QuadSpec& spec) {
    if (!(lo_exponent > -1.0) || !(hi_exponent > -1.0))
        throw DomainError("integrate_singular: endpoint exponents must exceed -1");
    if (!(hi > lo)) throw DomainError("integrate_singular: need lo < hi");
    const double mid = 0.5 * (lo + hi);
    const double half = mid - lo;
    const double m_lo = std::max(1.0, 1.0 / (1.0 + lo_exponent));
    const double m_hi = std::max(1.0, 1.0 / (1.0 + hi_exponent));
    RealFn left = [&f, lo, half, m_lo](double v) {
        const double x = lo + half * std::pow(v, m_lo);
        return f(x) * half * m_lo * std::pow(v, m_lo - 1.0);
    };
    RealFn right = [&f, hi, half, m_hi](double v) {
        const double x = hi - half * std::pow(v, m_hi);
        return f(x) * half * m_hi * std::pow(v, m_hi - 1.0);
    };
    const QuadSpec halves = spec.with_tolerance(0.5 * spec.abs_tol, spec.rel_tol);
    return integrate_adaptive(left, 0.0, 1.0, halves) + integrate_adaptive(right, 0.0, 1.0, halves);
}

double integrate_oscillatory_cos(const RealFn& g, double w, const QuadSpec& spec, double lo, TailHint tail) {
    spec.validate();
    if (!(lo >= 0.0)) throw DomainError("integrate_oscillatory_cos: lower limit must be >= 0");
    if (w == 0.0) {
        if (!tail.algebraic) return integrate_adaptive(g, lo, kInf, spec);
        const double cut = std::max(1.0, lo);
        const QuadSpec halves = spec.with_tolerance(0.5 * spec.abs_tol, spec.rel_tol);
        return integrate_adaptive(g, lo, cut, halves) + integrate_power_tail(g, cut, tail.exponent, halves);
    }
    w = std::abs(w);
    const double pi = std::numbers::pi;
    auto zero = [w, pi](long k) { return (static_cast<double>(k) + 0.5) * pi / w; };

    long k = static_cast<long>(std::ceil(lo * w / pi - 0.5));
    if (k < 0) k = 0;
    while (zero(k) <= lo) ++k;

    RealFn integrand = [&g, w](double x) { return std::cos(w * x) * g(x); };
    const QuadSpec panel_spec = spec.with_tolerance(0.02 * spec.abs_tol, 0.1 * spec.rel_tol);

    // For small w the first panel is long; split it at lo + 1, lo + 2, lo + 4, ...
    // so an envelope concentrated near lo is not missed by the first GK rule.
    double sum = 0.0;
    double left = lo;
    for (double step = 1.0; left + step < zero(k); step *= 2.0) {
        sum += integrate_adaptive(integrand, left, left + step, panel_spec);
        left += step;
    }
    sum += integrate_adaptive(integrand, left, zero(k), panel_spec);
    auto target = [&](double s) { return std::max(spec.abs_tol, spec.rel_tol * std::abs(s)); };

    // Direct phase.
    for (int j = 0; j < spec.oscillatory_terms; ++j, ++k) {
        const double term = integrate_adaptive(integrand, zero(k), zero(k + 1), panel_spec);
        sum += term;
        // Panel magnitudes decrease with a monotone envelope, so the
        // alternating remainder is bounded by the latest term.
        if (std::abs(term) < 0.1 * target(sum)) return sum;
    }

    // Euler phase: repeated averaging of the partial sums.
    std::vector<double> partial{sum};
    std::vector<double> work;
    double previous = sum;
    int settled = 0;
    const int max_terms = std::max(spec.max_panels, 64);
    for (int m = 1; m <= max_terms; ++m, ++k) {
        const double term = integrate_adaptive(integrand, zero(k), zero(k + 1), panel_spec);
        partial.push_back(partial.back() + term);
        if (std::abs(term) < 0.1 * target(partial.back())) return partial.back();

        work = partial;
        for (std::size_t level = 1; level < work.size(); ++level)
            for (std::size_t i = 0; i + level < work.size(); ++i) work[i] = 0.5 * (work[i] + work[i + 1]);
        const double estimate = work[0];
        if (std::abs(estimate - previous) < 0.25 * target(estimate)) {
            if (++settled >= 2) return estimate;
        } else {
            settled = 0;
        }
        previous = estimate;
        // Keep the averaging window bounded; older sums contribute nothing new.
        if (partial.size() > 64) partial.erase(partial.begin());
    }
    std::ostringstream os;
    os << "oscillatory quadrature (w=" << w << ") did not settle after " << max_terms
       << " accelerated panels; last estimate " << previous;
    throw NonConvergence(os.str());
}

std::vector<double> stehfest_weights(int n_terms) {
    if (n_terms < 2 || n_terms % 2 != 0) throw DomainError("Gaver-Stehfest order must be even and >= 2");
    const int half = n_terms / 2;
    auto fact = [](int n) {
        long double r = 1.0L;
        for (int i = 2; i <= n; ++i) r *= i;
        return r;
    };
    std::vector<double> v(static_cast<std::size_t>(n_terms));
    for (int k = 1; k <= n_terms; ++k) {
        long double s = 0.0L;
        for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
            s += std::pow(static_cast<long double>(j), half) * fact(2 * j) /
                 (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
        }
        const int sign = ((k + half) % 2 == 0) ? 1 : -1;
        v[static_cast<std::size_t>(k - 1)] = static_cast<double>(sign * s);
    }
    return v;
}

double gaver_stehfest(const std::function<double(double)>& transform, double t, int n_terms) {
    if (!(t > 0.0)) throw DomainError("Gaver-Stehfest: t must be positive");
    const auto v = stehfest_weights(n_terms);
    const double ln2t = std::numbers::ln2 / t;
    double sum = 0.0;
    for (int k = 1; k <= n_terms; ++k) sum += v[static_cast<std::size_t>(k - 1)] * transform(k * ln2t);
    return ln2t * sum;
}

double laplace_invert_cdf(const LaplaceTransform& phi, double t, int n_terms) {
    InversionOptions opts;
    opts.n_terms = n_terms;
    return laplace_invert_cdf(phi, t, opts);
}

double laplace_invert_cdf(const LaplaceTransform& phi, double t, const InversionOptions& opts) {
    if (!(t > 0.0)) throw DomainError("laplace_invert_cdf: t must be positive");
    auto cdf_transform = [&phi](double q) { return phi(q) / q; };
    const double est = gaver_stehfest(cdf_transform, t, opts.n_terms);
    if (opts.n_terms >= 4) {
        const double lower = gaver_stehfest(cdf_transform, t, opts.n_terms - 2);
        if (!std::isfinite(est) || std::abs(est - lower) > opts.instability_tol) {
            std::ostringstream os;
            os << "Gaver-Stehfest estimates for '" << phi.label << "' at t=" << t << " diverge: n=" << opts.n_terms
               << " gives " << est << ", n=" << opts.n_terms - 2 << " gives " << lower;
            throw NumericInstability(os.str());
        }
    }
    return std::clamp(est, 0.0, 1.0);
}

double invert_monotone(const RealFn& F, double p, double lo, double hi, double abs_tol) {
    if (!(hi > lo)) throw BracketError("invert_monotone: empty bracket");
    const double flo = F(lo) - p;
    const double fhi = F(hi) - p;
    if (flo > 0.0 || fhi < 0.0) {
        std::ostringstream os;
        os << "invert_monotone: target " << p << " outside [F(lo), F(hi)] = [" << flo + p << ", " << fhi + p << "]";
        throw BracketError(os.str());
    }
    if (std::abs(flo) <= abs_tol) return lo;
    if (std::abs(fhi) <= abs_tol) return hi;
    auto shifted = [&](double x) {
        const double d = F(x) - p;
        return std::abs(d) <= abs_tol ? 0.0 : d;
    };
    boost::uintmax_t iters = 500;
    const auto tol = boost::math::tools::eps_tolerance<double>(52);
    const auto r = boost::math::tools::toms748_solve(shifted, lo, hi, flo, fhi, tol, iters);
    const double x = 0.5 * (r.first + r.second);
    if (shifted(r.first) == 0.0) return r.first;
    if (shifted(r.second) == 0.0) return r.second;
    return x;
}

}  // namespace stablehit
