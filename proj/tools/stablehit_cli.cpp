// Command-line front end: eval, sample, invert, verify.
#include "stablehit/distributions.hpp"
#include "stablehit/errors.hpp"
#include "stablehit/hitting_laws.hpp"
#include "stablehit/montecarlo.hpp"
#include "stablehit/sampling.hpp"
#include "stablehit/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

using namespace stablehit;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void emit(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    line += '\n';
    std::fputs(line.c_str(), stdout);
}

std::vector<double> parse_list(const std::string& flag, const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find(',', pos), text.size());
        const std::string item = text.substr(pos, end - pos);
        double v = 0.0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size())
            throw UsageError("--" + flag + ": cannot parse '" + item + "' as a number");
        out.push_back(v);
        pos = end + 1;
    }
    return out;
}

// Comma-separated numeric flags shared by eval and invert.
struct ParamFlags {
    std::map<std::string, std::string> raw;

    void attach(CLI::App* app, const std::vector<std::string>& names) {
        for (const auto& n : names) app->add_option("--" + n, raw[n], n + " (comma-separated list)");
    }

    [[nodiscard]] std::vector<double> values(const std::string& name, std::optional<double> fallback) const {
        const auto it = raw.find(name);
        if (it != raw.end() && !it->second.empty()) return parse_list(name, it->second);
        if (fallback) return {*fallback};
        throw UsageError("missing required flag --" + name);
    }

    [[nodiscard]] bool given(const std::string& name) const {
        const auto it = raw.find(name);
        return it != raw.end() && !it->second.empty();
    }
};

using Point = std::map<std::string, double>;

struct Param {
    std::string name;
    std::optional<double> fallback;
};

// Cartesian product of the listed parameters, first parameter varying slowest.
std::vector<Point> expand(const ParamFlags& flags, const std::vector<Param>& params) {
    std::vector<Point> points{Point{}};
    for (const auto& p : params) {
        const auto vals = flags.values(p.name, p.fallback);
        std::vector<Point> next;
        for (const auto& base : points)
            for (double v : vals) {
                Point pt = base;
                pt[p.name] = v;
                next.push_back(std::move(pt));
            }
        points = std::move(next);
    }
    return points;
}

struct EvalKind {
    std::vector<Param> params;
    std::function<double(const Point&)> fn;
};

StableIndex idx_of(const Point& p) { return StableIndex::of(p.at("alpha")); }

std::map<std::string, EvalKind> eval_kinds(bool has_q, bool has_b) {
    std::map<std::string, EvalKind> k;
    k["density"] = {{{"alpha", {}}, {"t", 1.0}, {"x", {}}}, [](const Point& p) { return density_p(idx_of(p), p.at("t"), p.at("x")); }};
    k["resolvent"] = {{{"alpha", {}}, {"q", {}}, {"x", {}}}, [](const Point& p) { return resolvent_u(idx_of(p), p.at("q"), p.at("x")); }};
    if (has_q)
        k["h"] = {{{"alpha", {}}, {"q", {}}, {"x", {}}}, [](const Point& p) { return h_q(idx_of(p), p.at("q"), p.at("x")); }};
    else
        k["h"] = {{{"alpha", {}}, {"x", {}}}, [](const Point& p) { return h_limit(idx_of(p), p.at("x")); }};
    if (has_b)
        k["lt-T"] = {{{"alpha", {}}, {"q", {}}, {"x", 0.0}, {"a", {}}, {"b", {}}}, [](const Point& p) {
                         return lt_T_a_before_b({idx_of(p), p.at("q"), p.at("x"), p.at("a"), p.at("b")});
                     }};
    else
        k["lt-T"] = {{{"alpha", {}}, {"q", {}}, {"x", 0.0}, {"a", {}}},
                     [](const Point& p) { return lt_T_point({idx_of(p), p.at("q"), p.at("x"), p.at("a")}); }};
    const auto at_level = [](double (*f)(StableIndex, double, double, const QuadSpec&)) {
        return EvalKind{{{"alpha", {}}, {"q", {}}, {"a", {}}},
                        [f](const Point& p) { return f(idx_of(p), p.at("q"), p.at("a"), QuadSpec{}); }};
    };
    k["lt-G"] = at_level(&lt_G_point);
    k["lt-Xi"] = at_level(&lt_Xi_point);
    k["lt-T-abs"] = at_level(&lt_T_abs);
    k["lt-G-abs"] = at_level(&lt_G_abs);
    k["lt-Xi-abs"] = at_level(&lt_Xi_abs);
    k["exc-n"] = {{{"alpha", {}}, {"q", {}}, {"r", 0.0}, {"a", {}}},
                  [](const Point& p) { return exc_n_joint(idx_of(p), p.at("q"), p.at("r"), p.at("a")); }};
    k["exc-m"] = {{{"alpha", {}}, {"q", {}}, {"r", 0.0}, {"a", {}}},
                  [](const Point& p) { return exc_m_joint(idx_of(p), p.at("q"), p.at("r"), p.at("a")); }};
    k["getoor"] = {{{"alpha", {}}, {"x", 0.0}, {"a", {}}, {"b", {}}},
                   [](const Point& p) { return prob_hit_a_before_b(idx_of(p), p.at("x"), p.at("a"), p.at("b")); }};
    k["linnik"] = {{{"alpha", {}}, {"x", {}}}, [](const Point& p) { return linnik_density(p.at("alpha"), p.at("x")); }};
    k["meixner"] = {{{"beta", 0.0}, {"t", 1.0}, {"x", {}}},
                    [](const Point& p) { return meixner_density(p.at("beta"), p.at("t"), p.at("x")); }};
    k["z"] = {{{"t", {}}, {"x", {}}}, [](const Point& p) { return z_density(p.at("t"), p.at("x")); }};
    k["rayleigh-survival"] = {{{"alpha", {}}, {"x", {}}}, [](const Point& p) { return rayleigh_survival(p.at("alpha"), p.at("x")); }};
    return k;
}

std::string kind_list(const std::map<std::string, EvalKind>& kinds) {
    std::string s;
    for (const auto& [name, _] : kinds) s += (s.empty() ? "" : ", ") + name;
    return s;
}

int cmd_eval(const std::string& kind, const ParamFlags& flags) {
    const auto kinds = eval_kinds(flags.given("q"), flags.given("b"));
    const auto it = kinds.find(kind);
    if (it == kinds.end()) throw UsageError("unknown eval kind '" + kind + "'; expected one of " + kind_list(kinds));
    const auto points = expand(flags, it->second.params);
    std::vector<std::string> header;
    for (const auto& p : it->second.params) header.push_back(p.name);
    header.push_back("value");
    emit(header);
    for (const auto& pt : points) {
        std::vector<std::string> row;
        for (const auto& p : it->second.params) row.push_back(fmt(pt.at(p.name)));
        row.push_back(fmt(it->second.fn(pt)));
        emit(row);
    }
    return 0;
}

struct SampleArgs {
    std::string dist;
    std::size_t n = 1;
    bool summary = false;
    double alpha = 1.5, beta = 0.5, a = 1.0, t = 1.0, gamma = 0.5, shape = 1.0, shape2 = 1.0;
    int terms = 10'000;
};

// Multi-column draws (the excursion triplets) in the same chunk layout as mc_draws.
std::vector<std::vector<double>> tuple_draws(const std::function<std::vector<double>(RandomStream&)>& draw,
                                             const McPlan& plan) {
    std::vector<std::vector<double>> rows(plan.n);
    for (std::size_t c = 0; c < plan.chunks; ++c) {
        RandomStream rs(plan.seed, c);
        for (std::size_t i = plan.chunk_begin(c); i < plan.chunk_begin(c + 1); ++i) rows[i] = draw(rs);
    }
    return rows;
}

int cmd_sample(const SampleArgs& s, std::uint64_t seed, std::size_t streams) {
    if (s.n == 0) throw UsageError("-n must be positive");
    const McPlan plan{seed, s.n, std::max<std::size_t>(1, std::min(streams, s.n))};

    std::map<std::string, std::function<std::vector<double>(RandomStream&)>> tuples = {
        {"excursion", [&](RandomStream& rs) {
             const auto d = sample_excursion_triplet(s.gamma, rs);
             return std::vector<double>{d.xi, d.delta};
         }},
        {"excursion-exp", [&](RandomStream& rs) {
             const auto d = sample_excursion_exp_triplet(s.gamma, rs);
             return std::vector<double>{d.g, d.xi, d.delta};
         }},
    };
    if (const auto it = tuples.find(s.dist); it != tuples.end()) {
        const auto rows = tuple_draws(it->second, plan);
        const std::vector<std::string> names =
            s.dist == "excursion" ? std::vector<std::string>{"xi", "delta"} : std::vector<std::string>{"g", "xi", "delta"};
        if (s.summary) {
            emit({"column", "n", "mean", "variance", "stderr"});
            for (std::size_t k = 0; k < names.size(); ++k) {
                StatsAccumulator acc;
                for (const auto& r : rows) acc.add(r[k]);
                const auto st = acc.stats();
                emit({names[k], std::to_string(st.n), fmt(st.mean), fmt(st.variance), fmt(st.stderr_)});
            }
        } else {
            emit(names);
            for (const auto& r : rows) {
                std::vector<std::string> cells;
                for (double v : r) cells.push_back(fmt(v));
                emit(cells);
            }
        }
        return 0;
    }

    std::optional<LaplaceTableSampler> table;
    if (s.dist == "tanh-law") {
        const double t = s.t;
        table.emplace(LaplaceTransform{[t](double q) {
                                           const double r = std::sqrt(q);
                                           return r == 0.0 ? 1.0 : std::pow(std::tanh(r) / r, t);
                                       },
                                       0.0, "tanh law"});
    }
    const std::map<std::string, Sampler> scalars = {
        {"uniform", [](RandomStream& rs) { return sample_uniform(rs); }},
        {"exponential", [](RandomStream& rs) { return sample_exponential(rs); }},
        {"gamma", [&](RandomStream& rs) { return sample_gamma(s.shape, rs); }},
        {"beta", [&](RandomStream& rs) { return sample_beta(s.shape, s.shape2, rs); }},
        {"sign", [](RandomStream& rs) { return sample_bernoulli_sign(rs); }},
        {"sym-stable", [&](RandomStream& rs) { return sample_sym_stable(s.alpha, rs); }},
        {"unilateral", [&](RandomStream& rs) { return sample_unilateral_stable(s.beta, rs); }},
        {"size-biased", [&](RandomStream& rs) { return sample_size_biased_stable(s.beta, rs); }},
        {"alpha-cauchy", [&](RandomStream& rs) { return sample_alpha_cauchy(s.alpha, rs); }},
        {"alpha-rayleigh", [&](RandomStream& rs) { return sample_alpha_rayleigh(s.alpha, rs); }},
        {"linnik", [&](RandomStream& rs) { return sample_linnik(s.alpha, rs); }},
        {"t-point", [&](RandomStream& rs) { return sample_T_point(StableIndex::of(s.alpha), s.a, rs); }},
        {"overshoot", [&](RandomStream& rs) { return sample_overshoot(s.alpha, s.a, rs); }},
        {"gamma-series", [&](RandomStream& rs) { return sample_gamma_series_subordinator(s.shape, s.t, s.terms, rs); }},
        {"tanh-law", [&](RandomStream& rs) { return (*table)(rs); }},
    };
    const auto it = scalars.find(s.dist);
    if (it == scalars.end()) {
        std::string names;
        for (const auto& [k, _] : scalars) names += k + ", ";
        for (const auto& [k, _] : tuples) names += k + ", ";
        names.resize(names.size() - 2);
        throw UsageError("unknown distribution '" + s.dist + "'; expected one of " + names);
    }
    const auto draws = mc_draws(it->second, plan);
    if (s.summary) {
        const auto st = summarize(draws);
        emit({"n", "mean", "variance", "stderr"});
        emit({std::to_string(st.n), fmt(st.mean), fmt(st.variance), fmt(st.stderr_)});
    } else {
        emit({"draw"});
        for (double v : draws) emit({fmt(v)});
    }
    return 0;
}

int cmd_invert(const std::string& kind, const ParamFlags& flags, int terms) {
    std::vector<Param> params;
    std::function<LaplaceTransform(const Point&)> make;
    const auto level_kind = [&](double (*f)(StableIndex, double, double, const QuadSpec&)) {
        params = {{"alpha", {}}, {"a", 1.0}};
        make = [f](const Point& p) {
            const StableIndex idx = StableIndex::of(p.at("alpha"));
            const double a = p.at("a");
            return LaplaceTransform{[=](double q) { return f(idx, q, a, QuadSpec{}); }, 0.0, "level transform"};
        };
    };
    if (kind == "lt-T") {
        params = {{"alpha", {}}, {"x", 0.0}, {"a", 1.0}};
        make = [](const Point& p) {
            const StableIndex idx = StableIndex::of(p.at("alpha"));
            const double x = p.at("x"), a = p.at("a");
            return LaplaceTransform{[=](double q) { return lt_T_point({idx, q, x, a}); }, 0.0, "T_a"};
        };
    } else if (kind == "lt-G") {
        level_kind(&lt_G_point);
    } else if (kind == "lt-Xi") {
        level_kind(&lt_Xi_point);
    } else if (kind == "lt-T-abs") {
        level_kind(&lt_T_abs);
    } else if (kind == "lt-G-abs") {
        level_kind(&lt_G_abs);
    } else if (kind == "lt-Xi-abs") {
        level_kind(&lt_Xi_abs);
    } else if (kind == "exponential") {
        make = [](const Point&) { return LaplaceTransform{[](double q) { return 1.0 / (1.0 + q); }, 0.0, "exponential"}; };
    } else {
        throw UsageError("unknown invert kind '" + kind + "'; expected one of lt-T, lt-G, lt-Xi, lt-T-abs, lt-G-abs, lt-Xi-abs, exponential");
    }
    auto ts = flags.values("t", std::nullopt);
    std::sort(ts.begin(), ts.end());
    for (double t : ts)
        if (!(t > 0.0)) throw UsageError("--t values must be positive");

    std::vector<std::string> header;
    for (const auto& p : params) header.push_back(p.name);
    header.insert(header.end(), {"t", "cdf", "status"});
    emit(header);
    for (const auto& pt : expand(flags, params)) {
        const LaplaceTransform phi = make(pt);
        double running = 0.0;  // clamp to a nondecreasing curve along the sorted t grid
        for (double t : ts) {
            std::vector<std::string> row;
            for (const auto& p : params) row.push_back(fmt(pt.at(p.name)));
            row.push_back(fmt(t));
            try {
                const double v = std::max(running, laplace_invert_cdf(phi, t, terms));
                running = v;
                row.push_back(fmt(v));
                row.push_back("ok");
            } catch (const NumericInstability& e) {
                row.push_back("nan");
                row.push_back("unstable");
            }
            emit(row);
        }
    }
    return 0;
}

int cmd_verify(const std::string& suite, const std::string& alphas, std::size_t n, std::uint64_t seed,
               std::size_t streams, const std::string& out_path, const std::string& csv_path) {
    std::vector<StableIndex> grid;
    if (!alphas.empty())
        for (double a : parse_list("alpha", alphas)) grid.push_back(StableIndex::of(a));
    SuiteOptions opts;
    opts.n_samples = n;
    opts.chunks = streams;
    const auto reports = run_suite(suite, grid, seed, opts);
    {
        std::ofstream js(out_path.empty() ? "verify_" + suite + ".json" : out_path);
        if (!js) throw std::runtime_error("cannot write JSON report");
        js << report_to_json(reports);
    }
    const std::string csv = report_to_csv(reports);
    if (!csv_path.empty()) {
        std::ofstream cs(csv_path);
        if (!cs) throw std::runtime_error("cannot write CSV report");
        cs << csv;
    }
    std::fputs(csv.c_str(), stdout);
    const bool all = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
    std::size_t failed = 0;
    for (const auto& r : reports) failed += r.pass ? 0 : 1;
    std::fprintf(stderr, "%s: %zu checks, %zu failed\n", suite.c_str(), reports.size(), failed);
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    std::setvbuf(stdout, nullptr, _IOLBF, 1 << 16);

    CLI::App app{"Hitting times of symmetric stable Levy processes"};
    app.require_subcommand(1);
    app.fallthrough();
    std::uint64_t seed = 1;
    std::size_t streams = 64;
    app.add_option("--seed", seed, "master seed")->capture_default_str();
    app.add_option("--streams", streams, "number of random streams; stream id = chunk index")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    const std::vector<std::string> eval_flags = {"alpha", "q", "x", "a", "b", "r", "t", "beta"};

    auto* eval = app.add_subcommand("eval", "evaluate a formula on a grid of parameters");
    std::string eval_kind;
    ParamFlags eval_params;
    eval->add_option("kind", eval_kind, "what to evaluate")->required();
    eval_params.attach(eval, eval_flags);

    auto* sample = app.add_subcommand("sample", "draw from one of the samplers");
    SampleArgs sargs;
    sample->add_option("dist", sargs.dist, "distribution name")->required();
    sample->add_option("-n", sargs.n, "number of draws")->capture_default_str();
    sample->add_flag("--summary", sargs.summary, "print n, mean, variance, stderr instead of draws");
    sample->add_option("--alpha", sargs.alpha)->capture_default_str();
    sample->add_option("--beta", sargs.beta)->capture_default_str();
    sample->add_option("--a", sargs.a, "target level")->capture_default_str();
    sample->add_option("--t", sargs.t, "time parameter")->capture_default_str();
    sample->add_option("--gamma", sargs.gamma, "excursion index")->capture_default_str();
    sample->add_option("--shape", sargs.shape)->capture_default_str();
    sample->add_option("--shape2", sargs.shape2)->capture_default_str();
    sample->add_option("--terms", sargs.terms, "gamma-series terms")->capture_default_str();

    auto* invert = app.add_subcommand("invert", "P(T < t) by Laplace inversion");
    std::string inv_kind;
    ParamFlags inv_params;
    int inv_terms = 12;
    invert->add_option("kind", inv_kind)->required();
    inv_params.attach(invert, {"alpha", "x", "a", "t"});
    invert->add_option("--terms", inv_terms, "Gaver-Stehfest order (even)")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite, alphas, out_path, csv_path;
    std::size_t vn = 1'000'000;
    verify->add_option("suite", suite)->required()->check(CLI::IsMember(suite_names()));
    verify->add_option("--alpha", alphas, "alpha grid (comma-separated)");
    verify->add_option("-n", vn, "Monte Carlo sample size")->capture_default_str();
    verify->add_option("--out", out_path, "JSON report path");
    verify->add_option("--csv", csv_path, "also write the CSV report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*eval) return cmd_eval(eval_kind, eval_params);
        if (*sample) return cmd_sample(sargs, seed, streams);
        if (*invert) return cmd_invert(inv_kind, inv_params, inv_terms);
        if (*verify) return cmd_verify(suite, alphas, vn, seed, streams, out_path, csv_path);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const UnknownSuite& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
