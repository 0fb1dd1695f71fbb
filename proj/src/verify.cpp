#include "stablehit/verify.hpp"

#include "stablehit/distributions.hpp"
#include "stablehit/errors.hpp"
#include "stablehit/hitting_laws.hpp"
#include "stablehit/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <numbers>
#include <sstream>

namespace stablehit {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// splitmix64 finaliser; gives each check its own seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * static_cast<double>(i) / (n - 1));
    return g;
}

// About 100 points per decade.
std::size_t decade_points(double lo, double hi) {
    return static_cast<std::size_t>(100.0 * std::log10(hi / lo)) + 2;
}

// Grid on the whole line: -log_grid reversed, 0, log_grid.
std::vector<double> symmetric_grid(double lo, double hi, std::size_t n) {
    const auto pos = log_grid(lo, hi, n);
    std::vector<double> g;
    g.reserve(2 * n + 1);
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) g.push_back(-*it);
    g.push_back(0.0);
    g.insert(g.end(), pos.begin(), pos.end());
    return g;
}

class Collector {
public:
    Collector(std::uint64_t seed, const SuiteOptions& options) : seed_(seed), options_(options) {}

    void add(VerificationReport r) { reports_.push_back(std::move(r)); }

    template <class Fn>
    void check(const std::string& id, Fn&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            VerificationReport r;
            r.check_id = id;
            r.lhs = r.rhs = std::nan("");
            r.pass = false;
            r.notes = std::string("error: ") + e.what();
            reports_.push_back(std::move(r));
        }
    }

    McPlan plan() {
        McPlan p;
        p.seed = derive_seed(seed_, next_stream_++);
        p.n = options_.n_samples;
        p.chunks = options_.chunks;
        return p;
    }

    const SuiteOptions& options() const { return options_; }
    std::vector<VerificationReport> take() { return std::move(reports_); }

private:
    std::uint64_t seed_;
    SuiteOptions options_;
    std::uint64_t next_stream_ = 0;
    std::vector<VerificationReport> reports_;
};

VerificationReport mc_report(const std::string& id, const SampleStats& s, double target, const std::string& notes = {}) {
    VerificationReport r = make_report(id, s.mean, target, 4.0 * s.stderr_, false, notes.empty() ? "4 stderr" : notes);
    r.n_samples = s.n;
    return r;
}

// 0.002 at n = 1e6; below that, the 99.9% Kolmogorov quantile 1.95/sqrt(n).
VerificationReport ks_report(const std::string& id, double ks, std::size_t n) {
    const double tol = std::max(0.002, 1.95 / std::sqrt(static_cast<double>(n)));
    VerificationReport r = make_report(id, ks, 0.0, tol, false, "KS distance");
    r.n_samples = n;
    return r;
}

std::vector<StableIndex> indices(const std::vector<StableIndex>& grid, std::initializer_list<double> fallback) {
    if (!grid.empty()) return grid;
    std::vector<StableIndex> out;
    for (double a : fallback) out.push_back(StableIndex::of(a));
    return out;
}

// ---------------------------------------------------------------------------

void brownian_oracle(Collector& c) {
    const StableIndex two = StableIndex::of(2.0);
    constexpr double tol = 1e-8;
    namespace bm = brownian;
    for (double q : {0.25, 1.0, 4.0}) {
        const double rq = std::sqrt(q);
        for (double a : {0.5, 1.0, 2.0}) {
            const std::string tag = ".q=" + num(q) + ".a=" + num(a);
            const double lv = bm::level(a);
            for (double x : {0.0, a}) {
                const double closed = std::exp(-rq * x) / (2.0 * rq);
                c.check("brownian.resolvent_u" + tag + ".x=" + num(x),
                        [&] { c.add(make_report("brownian.resolvent_u" + tag + ".x=" + num(x), resolvent_u(two, q, x), closed, tol)); });
                c.check("brownian.resolvent_quadrature" + tag + ".x=" + num(x), [&] {
                    c.add(make_report("brownian.resolvent_quadrature" + tag + ".x=" + num(x),
                                      resolvent_u_direct(2.0, q, x), closed, tol, false, "raw cosine quadrature"));
                });
            }
            const std::vector<std::pair<std::string, std::function<std::pair<double, double>()>>> laws = {
                {"lt_T_point", [&] { return std::pair{lt_T_point({two, q, 0.0, a}), bm::lt_hit(q, lv)}; }},
                {"lt_G_point", [&] { return std::pair{lt_G_point(two, q, a), bm::lt_last_exit(q, lv)}; }},
                {"lt_Xi_point", [&] { return std::pair{lt_Xi_point(two, q, a), bm::lt_excursion_part(q, lv)}; }},
                {"lt_T_abs", [&] { return std::pair{lt_T_abs(two, q, a), bm::lt_hit_abs(q, lv)}; }},
                {"lt_G_abs", [&] { return std::pair{lt_G_abs(two, q, a), bm::lt_last_exit_abs(q, lv)}; }},
                {"lt_Xi_abs", [&] { return std::pair{lt_Xi_abs(two, q, a), bm::lt_excursion_part(q, lv)}; }},
                {"lt_T_two_points", [&] {
                     const double x = a / 3.0;
                     return std::pair{lt_T_two_points({two, q, x, -a, a}),
                                      bm::lt_two_points(q, bm::level(x), bm::level(-a), lv)};
                 }},
                {"lt_T_a_before_b", [&] {
                     const double x = a / 3.0;
                     return std::pair{lt_T_a_before_b({two, q, x, -a, a}),
                                      bm::lt_a_before_b(q, bm::level(x), bm::level(-a), lv)};
                 }},
            };
            for (const auto& [name, fn] : laws) {
                const std::string id = "brownian." + name + tag;
                c.check(id, [&] {
                    const auto [lhs, rhs] = fn();
                    c.add(make_report(id, lhs, rhs, tol));
                });
            }
        }
    }
    for (double x : {0.5, 1.0, 3.0}) {
        const std::string id = "brownian.h_limit.x=" + num(x);
        c.check(id, [&] { c.add(make_report(id, h_limit(two, x), 0.5 * x, tol)); });
        const std::string pid = "brownian.density_quadrature.x=" + num(x);
        c.check(pid, [&] {
            c.add(make_report(pid, density_p_direct(2.0, 1.0, x), std::exp(-x * x / 4.0) / (2.0 * std::sqrt(kPi)), tol));
        });
    }
}

void formula_algebra(Collector& c, const std::vector<StableIndex>& grid) {
    for (const StableIndex idx : indices(grid, {1.2, 1.5, 1.8, 2.0})) {
        const std::string at = ".alpha=" + num(idx.alpha);
        for (double q : {0.5, 1.0, 2.0}) {
            for (double a : {0.5, 1.0, 2.0}) {
                const std::string tag = at + ".q=" + num(q) + ".a=" + num(a);
                c.check("algebra.product_point" + tag, [&] {
                    c.add(make_report("algebra.product_point" + tag, lt_G_point(idx, q, a) * lt_Xi_point(idx, q, a),
                                      lt_T_point({idx, q, 0.0, a}), 1e-12));
                });
                c.check("algebra.product_abs" + tag, [&] {
                    c.add(make_report("algebra.product_abs" + tag, lt_G_abs(idx, q, a) * lt_Xi_abs(idx, q, a),
                                      lt_T_abs(idx, q, a), 1e-12));
                });
                for (int n = 1; n <= 10; ++n) {
                    const std::string id = "algebra.dn" + tag + ".n=" + std::to_string(n);
                    c.check(id, [&] {
                        const DnForms f = dn_forms(idx, q, a, n);
                        c.add(make_report(id + ".two_form", f.direct, f.ordered, 1e-9));
                        if (idx.brownian()) {
                            c.add(make_report(id + ".zero", f.direct, 0.0, 1e-12));
                        } else {
                            VerificationReport r;
                            r.check_id = id + ".positive";
                            r.lhs = 0.5 * (f.direct + f.ordered);
                            r.rhs = 0.0;
                            r.pass = r.lhs > 0.0;
                            r.notes = "requires lhs > 0";
                            c.add(r);
                        }
                    });
                }
                c.check("algebra.series_bracket" + tag, [&] {
                    const double exact = lt_T_abs(idx, q, a);
                    double worst = 0.0;
                    for (int n = 2; n <= 50; ++n) {
                        const SeriesBracket s = lt_T_abs_series(idx, q, a, n);
                        worst = std::max({worst, s.lower - exact, exact - s.upper});
                    }
                    c.add(make_report("algebra.series_bracket" + tag, std::max(worst, 0.0), 0.0, 1e-15, false,
                                      "largest excursion of lt_T_abs outside the partial-sum brackets"));
                });
                for (double cs : {0.5, 3.0}) {
                    const double q2 = q / std::pow(cs, idx.alpha);
                    const double a2 = cs * a;
                    const std::string sid = "algebra.scale" + tag + ".c=" + num(cs);
                    c.check(sid, [&] {
                        c.add(make_report(sid + ".lt_T_point", lt_T_point({idx, q2, 0.0, a2}), lt_T_point({idx, q, 0.0, a}), 1e-9));
                        c.add(make_report(sid + ".lt_G_point", lt_G_point(idx, q2, a2), lt_G_point(idx, q, a), 1e-9));
                        c.add(make_report(sid + ".lt_Xi_point", lt_Xi_point(idx, q2, a2), lt_Xi_point(idx, q, a), 1e-9));
                        c.add(make_report(sid + ".lt_T_abs", lt_T_abs(idx, q2, a2), lt_T_abs(idx, q, a), 1e-9));
                        c.add(make_report(sid + ".lt_G_abs", lt_G_abs(idx, q2, a2), lt_G_abs(idx, q, a), 1e-9));
                        c.add(make_report(sid + ".lt_Xi_abs", lt_Xi_abs(idx, q2, a2), lt_Xi_abs(idx, q, a), 1e-9));
                    });
                }
                const double x = 0.3 * a;
                const double b = -2.0 * a;
                c.check("algebra.sum_rule" + tag, [&] {
                    const double ab = lt_T_a_before_b({idx, q, x, a, b});
                    const double ba = lt_T_a_before_b({idx, q, x, b, a});
                    c.add(make_report("algebra.sum_rule" + tag, ab + ba, lt_T_two_points({idx, q, x, a, b}), 1e-9));
                    const double chained = ab + ba * lt_T_point({idx, q, b, a});
                    c.add(make_report("algebra.chain_rule" + tag, chained, lt_T_point({idx, q, x, a}), 1e-9));
                });
                c.check("algebra.three_point" + tag, [&] {
                    const double three = lt_T_three(idx, q, x, a);
                    const double two = lt_T_two_points({idx, q, x, a, -a});
                    VerificationReport r;
                    r.check_id = "algebra.three_point_domination" + tag;
                    r.lhs = three;
                    r.rhs = two;
                    r.pass = three >= two;
                    r.notes = "requires lhs >= rhs: a larger target set is hit no later";
                    c.add(r);
                    const double pm = lt_T_pm_a_before_0(idx, q, x, a);
                    const double zero_two = lt_T_two_points({idx, q, 0.0, a, -a});
                    const double assembled = (two - zero_two * three) / (1.0 - zero_two);
                    c.add(make_report("algebra.pm_a_before_0_assembly" + tag, pm, assembled, 1e-9));
                    for (double target : {0.0, a, -a})
                        c.add(make_report("algebra.three_point_on_target" + tag + ".x=" + num(target),
                                          lt_T_three(idx, q, target, a), 1.0, 1e-15));
                });
            }
        }
        if (!idx.brownian()) {
            const std::string id = "algebra.getoor_limit" + at;
            c.check(id, [&] {
                const double x = 0.0, a = 1.0, b = 2.0;
                const QLimit lim = q_to_zero([&](double q) { return lt_T_a_before_b({idx, q, x, a, b}); },
                                             {1e-2, 1e-4, 1e-6}, 1.0 - 1.0 / idx.alpha);
                c.add(make_report(id, lim.value, prob_hit_a_before_b(idx, x, a, b), 5e-3, false,
                                  "Richardson in q^{1-1/alpha} over q = 1e-2, 1e-4, 1e-6"));
            });
        }
    }
}

void mc_vs_formula(Collector& c, const std::vector<StableIndex>& grid) {
    const Backend be = c.options().backend;
    for (const StableIndex idx : indices(grid, {1.2, 1.5, 1.8})) {
        const double alpha = idx.alpha;
        const std::string at = ".alpha=" + num(alpha);
        if (alpha > 1.0) {
            c.check("mc.lt_T_point" + at, [&] {
                const std::vector<double> qs = {0.5, 1.0, 2.0};
                std::vector<RealFn> gs;
                for (double q : qs) gs.push_back([q](double t) { return std::exp(-q * t); });
                const auto stats = mc_means([&](RandomStream& rs) { return sample_T_point(idx, 1.0, rs); }, gs, c.plan(), be);
                for (std::size_t k = 0; k < qs.size(); ++k)
                    c.add(mc_report("mc.lt_T_point" + at + ".q=" + num(qs[k]), stats[k], lt_T_point({idx, qs[k], 0.0, 1.0})));
            });
            c.check("mc.alpha_cauchy_ks" + at, [&] {
                auto draws = mc_draws([&](RandomStream& rs) { return sample_alpha_cauchy(alpha, rs); }, c.plan(), be);
                // Grid reaches out until the omitted tail c |x|^{1-alpha} / (alpha-1) is 1e-6.
                const double cst = std::sin(kPi / alpha) / (2.0 * kPi / alpha);
                const double top = std::pow(1e-6 * (alpha - 1.0) / cst, 1.0 / (1.0 - alpha));
                const auto grid_x = symmetric_grid(1e-4, top, decade_points(1e-4, top));
                const double below = cst * std::pow(top, 1.0 - alpha) / (alpha - 1.0);
                const auto cdf = TabulatedCdf::from_density([&](double x) { return alpha_cauchy_density(alpha, x); },
                                                            grid_x, below, be);
                c.add(ks_report("mc.alpha_cauchy_ks" + at, ks_distance(std::move(draws), cdf), c.options().n_samples));
            });
        }
        c.check("mc.rayleigh_ks" + at, [&] {
            auto draws = mc_draws([&](RandomStream& rs) { return sample_alpha_rayleigh(alpha, rs); }, c.plan(), be);
            auto grid_x = log_grid(1e-4, 1e5, 3000);
            grid_x.insert(grid_x.begin(), 0.0);
            const TabulatedCdf cdf([&](double x) { return 1.0 - rayleigh_survival(alpha, x); }, grid_x, be);
            c.add(ks_report("mc.rayleigh_ks" + at, ks_distance(std::move(draws), cdf), c.options().n_samples));
        });
        c.check("mc.stable_charfn" + at, [&] {
            const auto s = mc_means([&](RandomStream& rs) { return sample_sym_stable(alpha, rs); },
                                    {[](double x) { return std::cos(x); }}, c.plan(), be);
            c.add(mc_report("mc.stable_charfn" + at, s[0], std::exp(-1.0)));
        });
        c.check("mc.linnik_charfn" + at, [&] {
            const auto s = mc_means([&](RandomStream& rs) { return sample_linnik(alpha, rs); },
                                    {[](double x) { return std::cos(x); }}, c.plan(), be);
            c.add(mc_report("mc.linnik_charfn" + at, s[0], 0.5));
        });
        if (alpha < 2.0) {
            const double beta = 0.5 * alpha;
            c.check("mc.unilateral_lt" + at, [&] {
                const auto s = mc_means([&](RandomStream& rs) { return sample_unilateral_stable(beta, rs); },
                                        {[](double t) { return std::exp(-t); }}, c.plan(), be);
                c.add(mc_report("mc.unilateral_lt" + at, s[0], std::exp(-1.0)));
            });
            c.check("mc.size_bias" + at, [&] {
                // E[exp(-T')] against E[T^{-1/2} exp(-T)] / E[T^{-1/2}], both by MC.
                const auto tilted = mc_means([&](RandomStream& rs) { return sample_size_biased_stable(beta, rs); },
                                             {[](double t) { return std::exp(-t); }}, c.plan(), be);
                const auto raw = mc_draws([&](RandomStream& rs) { return sample_unilateral_stable(beta, rs); }, c.plan(), be);
                double sw = 0.0, swf = 0.0;
                for (double t : raw) {
                    const double w = 1.0 / std::sqrt(t);
                    sw += w;
                    swf += w * std::exp(-t);
                }
                const double ratio = swf / sw;
                StatsAccumulator resid;
                for (double t : raw) {
                    const double w = 1.0 / std::sqrt(t);
                    resid.add(w * (std::exp(-t) - ratio));
                }
                const double n = static_cast<double>(raw.size());
                const double se_ratio = resid.stats().stderr_ / (sw / n);
                const double se = std::hypot(tilted[0].stderr_, se_ratio);
                VerificationReport r = make_report("mc.size_bias" + at, tilted[0].mean, ratio, 4.0 * se, false,
                                                   "4 combined stderr (delta method for the ratio)");
                r.n_samples = tilted[0].n;
                c.add(r);
            });
            c.check("mc.overshoot_ks" + at, [&] {
                const double a1 = 1.0 - 0.5 * alpha, b1 = 0.5 * alpha;
                auto draws = mc_draws([&](RandomStream& rs) { return sample_overshoot(alpha, 1.0, rs); }, c.plan(), be);
                // Ends where the omitted masses x^a / (a B) and x^{-b} / (b B) are 1e-6.
                const double bab = std::beta(a1, b1);
                const double lo = std::pow(1e-6 * a1 * bab, 1.0 / a1);
                const double hi = std::pow(1e-6 * b1 * bab, -1.0 / b1);
                const auto grid_x = log_grid(lo, hi, decade_points(lo, hi));
                const double below = std::pow(lo, a1) / (a1 * bab);
                const auto cdf = TabulatedCdf::from_density([&](double x) { return beta_prime_density(a1, b1, x); },
                                                            grid_x, below, be);
                c.add(ks_report("mc.overshoot_ks" + at, ks_distance(std::move(draws), cdf), c.options().n_samples));
            });
        }
    }
}

void relation_r(Collector& c, const std::vector<StableIndex>& grid) {
    for (const StableIndex idx : indices(grid, {1.25, 1.5, 1.8})) {
        const double alpha = idx.alpha;
        if (!(alpha > 1.0 && alpha < 2.0)) continue;
        const double constant = alpha * std::sin(kPi / alpha);
        for (double theta : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            const std::string id = "relation_R.alpha=" + num(alpha) + ".theta=" + num(theta);
            c.check(id, [&] {
                c.add(make_report(id, alpha_cauchy_charfn(alpha, theta), constant * linnik_density(alpha, theta), 1e-6,
                                  false, "constant alpha sin(pi/alpha)"));
            });
        }
    }
}

void excursion(Collector& c, const std::vector<StableIndex>& grid) {
    const Backend be = c.options().backend;
    for (const StableIndex idx : indices(grid, {1.5, 2.0})) {
        const double gamma = 1.0 - 1.0 / idx.alpha;  // local time index of X_alpha at 0
        if (!(gamma > 0.0 && gamma < 1.0)) continue;
        const std::string at = ".gamma=" + num(gamma);
        const std::vector<std::array<double, 3>> pqr = {{1.0, 1.0, 1.0}, {2.0, 1.0, 0.5}};
        c.check("excursion.stieltjes" + at, [&] {
            const auto stats = mc_accumulate(
                [&](RandomStream& rs, std::vector<StatsAccumulator>& acc) {
                    const AgeDuration d = sample_excursion_triplet(gamma, rs);
                    for (std::size_t k = 0; k < pqr.size(); ++k)
                        acc[k].add(1.0 / (pqr[k][0] + pqr[k][1] * d.xi + pqr[k][2] * d.delta));
                    acc[pqr.size()].add(d.xi <= d.delta ? 0.0 : 1.0);
                },
                pqr.size() + 1, c.plan(), be);
            for (std::size_t k = 0; k < pqr.size(); ++k) {
                const auto& v = pqr[k];
                c.add(mc_report("excursion.stieltjes" + at + ".pqr=" + num(v[0]) + "," + num(v[1]) + "," + num(v[2]),
                                stats[k], age_duration_transform(gamma, v[0], v[1], v[2])));
            }
            c.add(make_report("excursion.age_le_duration" + at, stats[pqr.size()].mean, 0.0, 0.0, false,
                              "fraction of draws with Xi > Delta"));
        });
        c.check("excursion.exp_time_means" + at, [&] {
            const auto stats = mc_accumulate(
                [&](RandomStream& rs, std::vector<StatsAccumulator>& acc) {
                    const ExpTimeTriplet t = sample_excursion_exp_triplet(gamma, rs);
                    acc[0].add(t.g);
                    acc[1].add(t.xi);
                },
                2, c.plan(), be);
            c.add(mc_report("excursion.exp_time_G_mean" + at, stats[0], gamma));
            c.add(mc_report("excursion.exp_time_Xi_mean" + at, stats[1], 1.0 - gamma));
        });

        const std::string ai = ".alpha=" + num(idx.alpha);
        for (double q : {0.5, 1.0, 2.0}) {
            const double a = 1.0;
            const std::string tag = ai + ".q=" + num(q);
            c.check("excursion.n_measure" + tag, [&] {
                const double hits = exc_n_hits(idx, a);
                c.add(make_report("excursion.xi_from_n" + tag, exc_n_joint(idx, q, 0.0, a) / hits, lt_Xi_point(idx, q, a), 1e-12));
                const double u0 = resolvent_u(idx, q, 0.0);
                const double inv_g = 1.0 / hits / u0 + exc_n_joint(idx, q, q, a) / hits;
                c.add(make_report("excursion.g_from_n" + tag, inv_g, 1.0 / lt_G_point(idx, q, a), 1e-9, true,
                                  "1 + n[1 - e^{-q zeta}; T_a > zeta] / n(T_a < zeta) with n[1 - e^{-q zeta}] = 1/u_q(0)"));
                c.add(make_report("excursion.xi_abs_from_m" + tag, exc_m_joint(idx, q, 0.0, a) / exc_m_hits(idx, a),
                                  lt_Xi_abs(idx, q, a), 1e-12));
            });
        }
        c.check("excursion.n_hits_scaling" + ai, [&] {
            c.add(make_report("excursion.n_hits_scaling" + ai, exc_n_hits(idx, 2.0) / exc_n_hits(idx, 1.0),
                              std::pow(2.0, 1.0 - idx.alpha), 1e-14));
        });
        if (!idx.brownian()) {
            c.check("excursion.n_double_limit" + ai, [&] {
                const QLimit lim = q_to_zero([&](double q) { return exc_n_joint(idx, q, q, 1.0); },
                                             {1e-2, 1e-4, 1e-6}, 1.0 - 1.0 / idx.alpha);
                c.add(make_report("excursion.n_double_limit" + ai, lim.value, exc_n_hits(idx, 1.0), 5e-3, true,
                                  "Richardson in q^{1-1/alpha} over q = r = 1e-2, 1e-4, 1e-6"));
            });
            c.check("excursion.m_r_limit" + ai, [&] {
                const QLimit lim = q_to_zero([&](double r) { return exc_m_joint(idx, 1.0, r, 1.0); },
                                             {1e-2, 1e-4, 1e-6}, 1.0 - 1.0 / idx.alpha);
                c.add(make_report("excursion.m_r_limit" + ai, lim.value, exc_m_joint(idx, 1.0, 0.0, 1.0), 5e-3, true,
                                  "Richardson in r^{1-1/alpha} over r = 1e-2, 1e-4, 1e-6"));
            });
        }
    }
}

void appendix(Collector& c, const std::vector<StableIndex>& grid) {
    std::vector<double> alphas = {1.1, 1.5, 2.0, 2.5, 2.9};
    for (const StableIndex& idx : grid)
        if (idx.alpha > 1.0 && std::find(alphas.begin(), alphas.end(), idx.alpha) == alphas.end()) alphas.push_back(idx.alpha);
    for (double alpha : alphas) {
        const std::string id = "appendix.alpha=" + num(alpha);
        c.check(id, [&] {
            const double closed = 1.0 / (2.0 * std::tgamma(alpha) * std::sin(kPi * (alpha - 1.0) / 2.0));
            c.add(make_report(id, appendix_integral(alpha), closed, 1e-8));
            if (alpha <= 2.0)
                c.add(make_report(id + ".h_limit", h_limit(StableIndex::of(alpha), 1.0), appendix_integral(alpha), 1e-8));
        });
    }
}

void inversion(Collector& c, const std::vector<StableIndex>& grid) {
    const LaplaceTransform expo{[](double q) { return 1.0 / (1.0 + q); }, 0.0, "unit exponential"};
    for (double t : {0.1, 0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0}) {
        const std::string id = "inversion.exponential.t=" + num(t);
        c.check(id, [&] {
            c.add(make_report(id, laplace_invert_cdf(expo, t, 18), -std::expm1(-t), 1e-6, false, "Gaver-Stehfest n=18"));
        });
    }
    const LaplaceTransform half{[](double q) { return std::exp(-std::sqrt(q)); }, 0.0, "one-sided 1/2-stable"};
    const StableIndex two = StableIndex::of(2.0);
    const LaplaceTransform hit2{[two](double q) { return lt_T_point({two, q, 0.0, 1.0}); }, 0.0, "T_1 of X_2"};
    for (double t : {0.5, 1.0, 2.0}) {
        const double exact = std::erfc(0.5 / std::sqrt(t));
        const std::string id = "inversion.half_stable.t=" + num(t);
        c.check(id, [&] { c.add(make_report(id, laplace_invert_cdf(half, t), exact, 1e-4, false, "Gaver-Stehfest n=12")); });
        const std::string hid = "inversion.brownian_hitting.t=" + num(t);
        c.check(hid, [&] { c.add(make_report(hid, laplace_invert_cdf(hit2, t), exact, 1e-4, false, "Gaver-Stehfest n=12")); });
    }
    const Backend be = c.options().backend;
    for (const StableIndex idx : indices(grid, {1.5})) {
        if (!(idx.alpha > 1.0 && idx.alpha < 2.0)) continue;
        const std::string at = ".alpha=" + num(idx.alpha);
        c.check("inversion.mc_quantiles" + at, [&] {
            auto draws = mc_draws([&](RandomStream& rs) { return sample_T_point(idx, 1.0, rs); }, c.plan(), be);
            std::sort(draws.begin(), draws.end());
            const double n = static_cast<double>(draws.size());
            const LaplaceTransform lt{[idx](double q) { return lt_T_point({idx, q, 0.0, 1.0}); }, 0.0, "T_1"};
            for (double p : {0.1, 0.25, 0.5, 0.75, 0.9}) {
                const auto k = static_cast<std::size_t>(std::ceil(p * n)) - 1;
                const double t = draws[k];
                const double empirical = static_cast<double>(k + 1) / n;
                const double tol = 1e-3 + 3.0 * std::sqrt(p * (1.0 - p) / n);
                VerificationReport r = make_report("inversion.mc_quantiles" + at + ".p=" + num(p), laplace_invert_cdf(lt, t),
                                                   empirical, tol, false, "1e-3 + 3 sqrt(p(1-p)/N)");
                r.n_samples = draws.size();
                c.add(r);
            }
        });
    }
}

void json_escape(std::ostringstream& os, const std::string& s) { os << nlohmann::json(s).dump(); }

std::string g17(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

VerificationReport make_report(std::string id, double lhs, double rhs, double tolerance, bool relative, std::string notes) {
    VerificationReport r;
    r.check_id = std::move(id);
    r.lhs = lhs;
    r.rhs = rhs;
    r.tolerance = tolerance;
    r.relative = relative;
    r.notes = std::move(notes);
    const double scale = relative ? std::max({std::abs(lhs), std::abs(rhs), 1.0}) : 1.0;
    r.pass = std::abs(lhs - rhs) <= tolerance * scale;
    return r;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"brownian_oracle", "formula_algebra", "mc_vs_formula", "relation_R",
                                                   "excursion",       "appendix",        "inversion"};
    return names;
}

std::vector<VerificationReport> run_suite(const std::string& suite_name, const std::vector<StableIndex>& idx_grid,
                                          std::uint64_t seed, const SuiteOptions& options) {
    Collector c(seed, options);
    if (suite_name == "brownian_oracle")
        brownian_oracle(c);
    else if (suite_name == "formula_algebra")
        formula_algebra(c, idx_grid);
    else if (suite_name == "mc_vs_formula")
        mc_vs_formula(c, idx_grid);
    else if (suite_name == "relation_R")
        relation_r(c, idx_grid);
    else if (suite_name == "excursion")
        excursion(c, idx_grid);
    else if (suite_name == "appendix")
        appendix(c, idx_grid);
    else if (suite_name == "inversion")
        inversion(c, idx_grid);
    else
        throw UnknownSuite("unknown verification suite '" + suite_name + "'");
    return c.take();
}

std::string report_to_json(const std::vector<VerificationReport>& reports) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        os << (i ? ",\n " : "\n ") << "{\"check_id\": ";
        json_escape(os, r.check_id);
        os << ", \"lhs\": " << g17(r.lhs) << ", \"rhs\": " << g17(r.rhs) << ", \"tolerance\": " << g17(r.tolerance)
           << ", \"relative\": " << (r.relative ? "true" : "false") << ", \"pass\": " << (r.pass ? "true" : "false")
           << ", \"n_samples\": ";
        if (r.n_samples)
            os << *r.n_samples;
        else
            os << "null";
        os << ", \"notes\": ";
        json_escape(os, r.notes);
        os << "}";
    }
    os << (reports.empty() ? "]\n" : "\n]\n");
    return os.str();
}

std::string report_to_csv(const std::vector<VerificationReport>& reports) {
    std::ostringstream os;
    os << "check_id,lhs,rhs,tolerance,relative,pass,n_samples,notes\n";
    for (const auto& r : reports) {
        os << csv_field(r.check_id) << ',' << g17(r.lhs) << ',' << g17(r.rhs) << ',' << g17(r.tolerance) << ','
           << (r.relative ? "true" : "false") << ',' << (r.pass ? "true" : "false") << ',';
        if (r.n_samples) os << *r.n_samples;
        os << ',' << csv_field(r.notes) << '\n';
    }
    return os.str();
}

}  // namespace stablehit
