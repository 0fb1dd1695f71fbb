// Acceptance criteria 1-10. `acceptance K` runs criterion K; no argument runs all.
// Each criterion prints detail lines and one "C<k> PASS|FAIL" verdict line.
#include "stablehit/distributions.hpp"
#include "stablehit/hitting_laws.hpp"
#include "stablehit/montecarlo.hpp"
#include "stablehit/numerics.hpp"
#include "stablehit/resolvent.hpp"
#include "stablehit/sampling.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

using namespace stablehit;
using std::numbers::pi;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr std::size_t kChunks = 64;

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Largest error over a family of comparisons; remembers where it happened.
struct MaxErr {
    double err = 0.0;
    std::string where;
    bool ok = true;
    void add(double e, double tol, const std::string& at) {
        if (!(e <= tol)) ok = false;
        if (!(e <= err)) {
            err = std::isnan(e) ? INFINITY : e;
            where = at;
        }
    }
};

char buf[512];
template <class... A>
const char* fmt(const char* f, A... a) {
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

bool verdict(int k, bool ok, const std::string& what) {
    std::printf("C%d %s  %s\n", k, ok ? "PASS" : "FAIL", what.c_str());
    std::fflush(stdout);
    return ok;
}

void detail(const std::string& s) {
    std::printf("    %s\n", s.c_str());
    std::fflush(stdout);
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, double(i) / double(n - 1));
    return g;
}

// Integral of f over the real line; tail_exponent > 1 selects a power-law tail map beyond |x| = 10.
double line_mass(const RealFn& f, double tail_exponent = 0.0) {
    const RealFn left = [&](double x) { return f(-x); };
    double total = 0.0;
    for (const RealFn* g : {&f, &left}) {
        total += integrate_adaptive(*g, 0.0, 10.0);
        total += tail_exponent > 1.0 ? integrate_power_tail(*g, 10.0, tail_exponent) : integrate_adaptive(*g, 10.0, kInf);
    }
    return total;
}

bool c1() {
    const auto t0 = Clock::now();
    const StableIndex two = StableIndex::of(2.0);
    MaxErr m;
    int count = 0;
    for (double q : {0.25, 1.0, 4.0})
        for (double a : {0.5, 1.0, 2.0}) {
            const double r = std::sqrt(q), s = r * a;
            const std::string at = fmt("q=%g a=%g", q, a);
            for (double x : {0.0, a, -a}) {
                m.add(std::abs(resolvent_u(two, q, x) - std::exp(-r * std::abs(x)) / (2.0 * r)), 1e-8, at + " u");
                ++count;
            }
            const std::pair<double, double> laws[] = {
                {lt_T_point({two, q, 0.0, a}), std::exp(-s)},
                {lt_G_point(two, q, a), -std::expm1(-2.0 * s) / (2.0 * s)},
                {lt_Xi_point(two, q, a), s / std::sinh(s)},
                {lt_T_abs(two, q, a), 1.0 / std::cosh(s)},
                {lt_G_abs(two, q, a), std::tanh(s) / s},
                {lt_Xi_abs(two, q, a), s / std::sinh(s)},
            };
            for (const auto& [got, want] : laws) {
                m.add(std::abs(got - want), 1e-8, at);
                ++count;
            }
        }
    const double secs = since(t0);
    detail(fmt("%d comparisons, max |err| = %.3g (%s), %.3f s", count, m.err, m.where.c_str(), secs));
    return verdict(1, m.ok && secs < 10.0, "Brownian oracle: tol 1e-8, runtime < 10 s");
}

bool c2() {
    MaxErr m;
    for (double al : {1.1, 1.5, 2.0, 2.5, 2.9}) {
        const double want = 1.0 / (2.0 * std::tgamma(al) * std::sin(pi * (al - 1.0) / 2.0));
        const double got = appendix_integral(al);
        detail(fmt("alpha=%g  quadrature %.15g  closed form %.15g", al, got, want));
        m.add(std::abs(got - want), 1e-8, fmt("alpha=%g", al));
    }
    return verdict(2, m.ok, fmt("appendix constant: max |err| = %.3g, tol 1e-8", m.err));
}

bool c3() {
    MaxErr prod, dn_two, series, scale;
    bool dn_pos = true;
    for (double al : {1.2, 1.5, 1.8, 2.0}) {
        const StableIndex idx = StableIndex::of(al);
        for (double q : {0.5, 1.0, 2.0})
            for (double a : {0.5, 1.0, 2.0}) {
                const std::string at = fmt("alpha=%g q=%g a=%g", al, q, a);
                prod.add(std::abs(lt_G_point(idx, q, a) * lt_Xi_point(idx, q, a) - lt_T_point({idx, q, 0.0, a})), 1e-12, at);
                prod.add(std::abs(lt_G_abs(idx, q, a) * lt_Xi_abs(idx, q, a) - lt_T_abs(idx, q, a)), 1e-12, at + " abs");
                for (int n = 1; n <= 10; ++n) {
                    const DnForms f = dn_forms(idx, q, a, n);
                    dn_two.add(std::abs(f.direct - f.ordered), 1e-9, at + fmt(" n=%d", n));
                    if (al < 2.0 && !(dn_gap(idx, q, a, n) > 0.0)) dn_pos = false;
                }
                const double exact = lt_T_abs(idx, q, a);
                for (int n = 2; n <= 50; ++n) {
                    const SeriesBracket b = lt_T_abs_series(idx, q, a, n);
                    const double outside = std::max({0.0, b.lower - exact, exact - b.upper});
                    series.add(outside, 1e-15, at + fmt(" n=%d", n));
                }
                for (double c : {0.5, 3.0}) {
                    const double q2 = q / std::pow(c, al), a2 = c * a;
                    const std::string ac = at + fmt(" c=%g", c);
                    scale.add(std::abs(lt_T_point({idx, q, 0.0, a}) - lt_T_point({idx, q2, 0.0, a2})), 1e-9, ac + " T");
                    scale.add(std::abs(lt_G_point(idx, q, a) - lt_G_point(idx, q2, a2)), 1e-9, ac + " G");
                    scale.add(std::abs(lt_Xi_point(idx, q, a) - lt_Xi_point(idx, q2, a2)), 1e-9, ac + " Xi");
                    scale.add(std::abs(lt_T_abs(idx, q, a) - lt_T_abs(idx, q2, a2)), 1e-9, ac + " T abs");
                    scale.add(std::abs(lt_G_abs(idx, q, a) - lt_G_abs(idx, q2, a2)), 1e-9, ac + " G abs");
                    scale.add(std::abs(lt_Xi_abs(idx, q, a) - lt_Xi_abs(idx, q2, a2)), 1e-9, ac + " Xi abs");
                }
            }
    }
    detail(fmt("G*Xi = T          max |err| %.3g (tol 1e-12) %s", prod.err, prod.where.c_str()));
    detail(fmt("D_n two forms     max |err| %.3g (tol 1e-9) %s", dn_two.err, dn_two.where.c_str()));
    detail(fmt("D_n > 0 (alpha<2) %s", dn_pos ? "yes" : "no"));
    detail(fmt("series bracket    max excursion outside %.3g (roundoff allowance 1e-15)", series.err));
    detail(fmt("scale invariance  max |err| %.3g (tol 1e-9) %s", scale.err, scale.where.c_str()));
    return verdict(3, prod.ok && dn_two.ok && dn_pos && series.ok && scale.ok, "formula algebra");
}

bool c4() {
    bool ok = true;
    const std::vector<double> qs = {0.5, 1.0, 2.0};
    for (double al : {1.2, 1.5, 1.8}) {
        const auto t0 = Clock::now();
        const StableIndex idx = StableIndex::of(al);
        std::vector<RealFn> gs;
        for (double q : qs) gs.push_back([q](double t) { return std::exp(-q * t); });
        const McPlan plan{kSeed + static_cast<std::uint64_t>(al * 1000), 1'000'000, kChunks};
        const auto st = mc_means([idx](RandomStream& rs) { return sample_T_point(idx, 1.0, rs); }, gs, plan);
        const double secs = since(t0);
        ok = ok && secs < 60.0;
        for (std::size_t k = 0; k < qs.size(); ++k) {
            const double want = lt_T_point({idx, qs[k], 0.0, 1.0});
            const double z = std::abs(st[k].mean - want) / st[k].stderr_;
            ok = ok && z <= 4.0;
            detail(fmt("alpha=%g q=%g  MC %.6f  formula %.6f  |diff|/stderr %.2f", al, qs[k], st[k].mean, want, z));
        }
        detail(fmt("alpha=%g  N=1e6 in %.2f s", al, secs));
    }
    return verdict(4, ok, "Monte Carlo vs lt_T_point: within 4 stderr, < 60 s per alpha");
}

bool c5() {
    MaxErr literal, corrected;
    for (double al : {1.25, 1.5, 1.8})
        for (double th : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            const double cf = alpha_cauchy_charfn(al, th);
            const double ld = linnik_density(al, th);
            const std::string at = fmt("alpha=%g theta=%g", al, th);
            literal.add(std::abs(cf - std::sin(pi / al) / (2.0 * pi / al) * ld), 1e-6, at);
            corrected.add(std::abs(cf - al * std::sin(pi / al) * ld), 1e-6, at);
        }
    detail(fmt("constant sin(pi/alpha)/(2 pi/alpha): max |err| %.3g at %s", literal.err, literal.where.c_str()));
    detail(fmt("constant alpha sin(pi/alpha):        max |err| %.3g at %s", corrected.err, corrected.where.c_str()));
    std::printf("C5-corrected %s  relation (R) with constant alpha sin(pi/alpha), tol 1e-6\n", corrected.ok ? "PASS" : "FAIL");
    return verdict(5, literal.ok, "relation (R) with constant sin(pi/alpha)/(2 pi/alpha) as stated, tol 1e-6");
}

bool c6() {
    const auto t0 = Clock::now();
    auto draws = mc_draws([](RandomStream& rs) { return sample_alpha_rayleigh(1.5, rs); }, {kSeed + 6, 1'000'000, kChunks});
    auto grid = log_grid(1e-4, 1e5, 3000);
    grid.insert(grid.begin(), 0.0);
    const TabulatedCdf ref([](double x) { return 1.0 - rayleigh_survival(1.5, x); }, grid);
    const double ks = ks_distance(std::move(draws), [&](double x) { return ref(x); });
    detail(fmt("KS = %.5f with N=1e6 (%.1f s)", ks, since(t0)));
    return verdict(6, ks <= 0.002, "alpha-Rayleigh(1.5) KS <= 0.002");
}

// E[1/(p + q Xi + r Delta)] from the excursion-measure integral, swapped and
// done in closed form: ((p+q+r)^gamma - r^gamma) / (p^gamma (p+q)).
double age_duration_closed(double g, double p, double q, double r) {
    return (std::pow(p + q + r, g) - std::pow(r, g)) / (std::pow(p, g) * (p + q));
}

bool c7() {
    bool ok = true;
    const std::vector<std::array<double, 3>> pqr = {{1.0, 1.0, 1.0}, {2.0, 1.0, 0.5}};
    for (double g : {1.0 / 3.0, 0.5}) {
        const McPlan plan{kSeed + 7 + static_cast<std::uint64_t>(g * 100), 1'000'000, kChunks};
        const auto st = mc_accumulate(
            [&](RandomStream& rs, std::vector<StatsAccumulator>& acc) {
                const AgeDuration d = sample_excursion_triplet(g, rs);
                for (std::size_t k = 0; k < pqr.size(); ++k) acc[k].add(1.0 / (pqr[k][0] + pqr[k][1] * d.xi + pqr[k][2] * d.delta));
            },
            pqr.size(), plan);
        for (std::size_t k = 0; k < pqr.size(); ++k) {
            const auto [p, q, r] = pqr[k];
            const double quad = age_duration_transform(g, p, q, r);
            const double closed = age_duration_closed(g, p, q, r);
            const double z = std::abs(st[k].mean - quad) / st[k].stderr_;
            ok = ok && z <= 4.0;
            detail(fmt("gamma=%.4g (p,q,r)=(%g,%g,%g)  MC %.7f  quadrature %.7f  |diff|/stderr %.2f  [closed form %.10f]", g, p, q,
                       r, st[k].mean, quad, z, closed));
        }
        const auto et = mc_accumulate(
            [&](RandomStream& rs, std::vector<StatsAccumulator>& acc) {
                const ExpTimeTriplet t = sample_excursion_exp_triplet(g, rs);
                acc[0].add(t.g);
                acc[1].add(t.xi);
            },
            2, {plan.seed + 1, plan.n, plan.chunks});
        const double zg = std::abs(et[0].mean - g) / et[0].stderr_;
        const double zx = std::abs(et[1].mean - (1.0 - g)) / et[1].stderr_;
        ok = ok && zg <= 4.0 && zx <= 4.0;
        detail(fmt("gamma=%.4g exp-time means: G %.5f (want %.5f, %.2f se)  Xi %.5f (want %.5f, %.2f se)", g, et[0].mean, g, zg,
                   et[1].mean, 1.0 - g, zx));
    }
    return verdict(7, ok, "excursion age/duration transform and exp-time means within 4 stderr");
}

bool c8() {
    const LaplaceTransform expo{[](double q) { return 1.0 / (1.0 + q); }, 0.0, "exponential"};
    MaxErr inv;
    for (double t : {0.1, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0}) {
        const double e = std::abs(laplace_invert_cdf(expo, t, 18) - (-std::expm1(-t)));
        detail(fmt("t=%g  |F_GS - (1-e^{-t})| = %.3g (Gaver-Stehfest n=18)", t, e));
        inv.add(e, 1e-6, fmt("t=%g", t));
    }
    std::printf("C8a %s  exponential inversion, tol 1e-6\n", inv.ok ? "PASS" : "FAIL");

    const StableIndex idx = StableIndex::of(1.5);
    const std::size_t n = 1'000'000;
    auto draws = mc_draws([idx](RandomStream& rs) { return sample_T_point(idx, 1.0, rs); }, {kSeed + 8, n, kChunks});
    std::sort(draws.begin(), draws.end());
    const LaplaceTransform lt{[idx](double q) { return lt_T_point({idx, q, 0.0, 1.0}); }, 1e-12, "T_1"};
    bool quant = true;
    for (double p : {0.10, 0.25, 0.50, 0.75, 0.90}) {
        const double t = draws[static_cast<std::size_t>(p * double(n)) - 1];
        const double f = laplace_invert_cdf(lt, t);
        const double tol = 1e-3 + 3.0 * std::sqrt(p * (1.0 - p) / double(n));
        quant = quant && std::abs(f - p) <= tol;
        detail(fmt("p=%.2f  empirical quantile t=%.5g  inverted CDF %.6f  |diff| %.2g (tol %.2g)", p, t, f, std::abs(f - p), tol));
    }
    std::printf("C8b %s  inverted CDF of T_1(alpha=1.5) at empirical quantiles\n", quant ? "PASS" : "FAIL");
    return verdict(8, inv.ok && quant, "Laplace inversion (both parts)");
}

bool c9() {
    constexpr int terms = 1000;
    constexpr std::size_t n = 1'000'000;
    bool ok = true;
    for (const auto& [a, name] : {std::pair{0.5, "1/cosh"}, std::pair{1.0, "s/sinh"}}) {
        std::vector<RealFn> gs;
        const std::vector<double> lambdas = {0.5, 1.0};
        for (double l : lambdas) gs.push_back([l](double x) { return std::exp(-l * x); });
        const auto st = mc_means([a](RandomStream& rs) { return sample_gamma_series_subordinator(a, 1.0, terms, rs); }, gs,
                                 {kSeed + 9 + static_cast<std::uint64_t>(a * 10), n, kChunks});
        for (std::size_t k = 0; k < lambdas.size(); ++k) {
            const double s = std::sqrt(2.0 * lambdas[k]);
            const double want = a == 0.5 ? 1.0 / std::cosh(s) : s / std::sinh(s);
            const double bound = gamma_series_truncation_bound(a, 1.0, terms, lambdas[k]);
            const double tol = 4.0 * st[k].stderr_ + bound;
            ok = ok && std::abs(st[k].mean - want) <= tol;
            detail(fmt("a=%g lambda=%g  MC %.6f  %s %.6f  |diff| %.2g  tol %.2g (truncation %.2g)", a, lambdas[k], st[k].mean, name, want,
                       std::abs(st[k].mean - want), tol, bound));
        }
    }
    detail(fmt("N=%zu draws, %d series terms", n, terms));
    return verdict(9, ok, "gamma-series subordinators vs 1/cosh and s/sinh");
}

bool c10() {
    MaxErr m;
    auto rep = [&](const std::string& what, double mass) {
        detail(fmt("%-34s mass %.10f", what.c_str(), mass));
        m.add(std::abs(mass - 1.0), 1e-6, what);
    };
    for (double al : {1.2, 1.5, 1.8, 2.0}) {
        const StableIndex idx = StableIndex::of(al);
        rep(fmt("p_1 alpha=%g", al), line_mass([idx](double x) { return density_p(idx, 1.0, x); }, al < 2.0 ? 1.0 + al : 0.0));
    }
    for (auto [a, b] : {std::pair{0.5, 0.5}, std::pair{2.0, 3.0}, std::pair{0.3, 1.7}}) {
        const RealFn f = [a, b](double x) { return beta_prime_density(a, b, x); };
        rep(fmt("beta prime (%g,%g)", a, b),
            integrate_singular(f, 0.0, 1.0, a - 1.0, 0.0) + integrate_power_tail(f, 1.0, b + 1.0));
    }
    for (double al : {1.25, 1.5, 1.8}) {
        rep(fmt("alpha-Cauchy alpha=%g", al), line_mass([al](double x) { return alpha_cauchy_density(al, x); }, al));
        rep(fmt("Linnik alpha=%g", al), line_mass([al](double x) { return linnik_density(al, x); }, 1.0 + al));
    }
    for (double a : {0.5, 1.0, 2.0}) rep(fmt("z a=%g", a), line_mass([a](double x) { return z_density(a, x); }));
    for (double beta : {0.0, 0.5, -1.2})
        for (double t : {1.0, 2.0})
            rep(fmt("Meixner beta=%g t=%g", beta, t), line_mass([beta, t](double x) { return meixner_density(beta, t, x); }));
    return verdict(10, m.ok, fmt("density normalizations: max |mass-1| = %.3g (%s), tol 1e-6", m.err, m.where.c_str()));
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<bool()>> all = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    if (which.empty())
        for (int k = 1; k <= 10; ++k) which.push_back(k);
    bool ok = true;
    for (int k : which) {
        if (k < 1 || k > 10) {
            std::fprintf(stderr, "no criterion %d\n", k);
            return 2;
        }
        try {
            ok = all[static_cast<std::size_t>(k - 1)]() && ok;
        } catch (const std::exception& e) {
            verdict(k, false, std::string("threw: ") + e.what());
            ok = false;
        }
    }
    return ok ? 0 : 1;
}
