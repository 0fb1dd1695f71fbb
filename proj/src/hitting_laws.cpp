#include "stablehit/hitting_laws.hpp"

#include "stablehit/errors.hpp"

#include <cmath>
#include <sstream>

namespace stablehit {

namespace {

void require_nonzero_level(double a) {
    if (a == 0.0 || !std::isfinite(a)) throw DomainError("target level a must be nonzero and finite");
}

void require_rate(double q, const char* name) {
    if (!(q > 0.0) || !std::isfinite(q)) {
        std::ostringstream os;
        os << name << " must be positive, got " << q;
        throw DomainError(os.str());
    }
}

// Values of u_q and h_q needed by the |X_alpha| formulas at a single (q, a).
struct AbsValues {
    double u0, ua, u2a, ha, h2a, v;
};

AbsValues abs_values(StableIndex idx, double q, double a, const QuadSpec& spec) {
    idx.require_hitting();
    require_rate(q, "rate q");
    require_nonzero_level(a);
    AbsValues s{};
    s.u0 = resolvent_u(idx, q, 0.0, spec);
    s.ha = h_q(idx, q, a, spec);
    s.h2a = h_q(idx, q, 2.0 * a, spec);
    s.ua = s.u0 - s.ha;
    s.u2a = s.u0 - s.h2a;
    // u0^2 + u0 u(2a) - 2 u(a)^2 rewritten in h_q to avoid cancellation.
    s.v = s.u0 * (4.0 * s.ha - s.h2a) - 2.0 * s.ha * s.ha;
    if (!(s.v > 0.0)) {
        std::ostringstream os;
        os << "V_q(a) must be positive, got " << s.v << " at q=" << q << ", a=" << a;
        throw DegenerateDenominator(os.str());
    }
    return s;
}

double reflected_h_gap(StableIndex idx, double a) { return 4.0 * h_limit(idx, a) - h_limit(idx, 2.0 * a); }

}  // namespace

void HittingQuery::validate() const {
    idx.require_hitting();
    require_rate(q, "rate q");
    if (b && *b == a) throw DomainError("targets a and b must differ");
}

double lt_T_point(const HittingQuery& query) {
    query.validate();
    if (query.x == query.a) return 1.0;
    return resolvent_u(query.idx, query.q, query.x - query.a, query.spec) /
           resolvent_u(query.idx, query.q, 0.0, query.spec);
}

double lt_T_two_points(const HittingQuery& query) {
    query.validate();
    if (!query.b) throw DomainError("two-point transform needs a second target b");
    const double b = *query.b;
    if (query.x == query.a || query.x == b) return 1.0;
    const auto u = [&](double y) { return resolvent_u(query.idx, query.q, y, query.spec); };
    return (u(query.x - query.a) + u(query.x - b)) / (u(0.0) + u(query.a - b));
}

double lt_T_a_before_b(const HittingQuery& query) {
    query.validate();
    if (!query.b) throw DomainError("a-before-b transform needs a second target b");
    const double b = *query.b;
    if (query.x == query.a) return 1.0;
    if (query.x == b) return 0.0;
    const auto h = [&](double y) { return h_q(query.idx, query.q, y, query.spec); };
    const double u0 = resolvent_u(query.idx, query.q, 0.0, query.spec);
    const double hab = h(query.a - b);
    const double hxa = h(query.x - query.a);
    const double hxb = h(query.x - b);
    // (u0 u(x-a) - u(a-b) u(x-b)) / (u0^2 - u(a-b)^2) with u(y) = u0 - h(y).
    const double den = hab * (2.0 * u0 - hab);
    if (!(den > 0.0)) throw DegenerateDenominator("u_q(0)^2 - u_q(a-b)^2 vanished");
    return (u0 * (hab + hxb - hxa) - hab * hxb) / den;
}

double prob_hit_a_before_b(StableIndex idx, double x, double a, double b) {
    idx.require_hitting();
    if (a == b) throw DomainError("targets a and b must differ");
    const double p = idx.alpha - 1.0;
    return 0.5 * (1.0 + (std::pow(std::abs(x - b), p) - std::pow(std::abs(x - a), p)) / std::pow(std::abs(a - b), p));
}

double lt_G_point(StableIndex idx, double q, double a, const QuadSpec& spec) {
    idx.require_hitting();
    require_rate(q, "rate q");
    require_nonzero_level(a);
    const double u0 = resolvent_u(idx, q, 0.0, spec);
    const double ha = h_q(idx, q, a, spec);
    const double ua = u0 - ha;
    return ha * (u0 + ua) / (2.0 * h_limit(idx, a) * u0);
}

double lt_Xi_point(StableIndex idx, double q, double a, const QuadSpec& spec) {
    idx.require_hitting();
    require_rate(q, "rate q");
    require_nonzero_level(a);
    const double u0 = resolvent_u(idx, q, 0.0, spec);
    const double ha = h_q(idx, q, a, spec);
    const double ua = u0 - ha;
    return (ua / u0) * (2.0 * h_limit(idx, a) * u0) / (ha * (u0 + ua));
}

double exc_n_hits(StableIndex idx, double a) {
    require_nonzero_level(a);
    return 1.0 / (2.0 * h_limit(idx, a));
}

double exc_n_joint(StableIndex idx, double q, double r, double a, const QuadSpec& spec) {
    idx.require_hitting();
    require_rate(q, "rate q");
    require_nonzero_level(a);
    if (r < 0.0) throw DomainError("rate r must be nonnegative");
    const double ratio_r = r == 0.0 ? 1.0 : 1.0 - h_q(idx, r, a, spec) / resolvent_u(idx, r, 0.0, spec);
    const double u0 = resolvent_u(idx, q, 0.0, spec);
    const double ha = h_q(idx, q, a, spec);
    const double ua = u0 - ha;
    return ratio_r * ua / (ha * (u0 + ua));
}

double lt_T_abs(StableIndex idx, double q, double a, const QuadSpec& spec) {
    const AbsValues s = abs_values(idx, q, a, spec);
    return 2.0 * s.ua / (s.u0 + s.u2a);
}

SeriesBracket lt_T_abs_series(StableIndex idx, double q, double a, int n_terms, const QuadSpec& spec) {
    if (n_terms < 2) throw DomainError("series needs at least two terms");
    const AbsValues s = abs_values(idx, q, a, spec);
    const double first = s.ua / s.u0;
    const double ratio = s.u2a / s.u0;
    double sum = 0.0, previous = 0.0, power = 1.0;
    for (int n = 0; n < n_terms; ++n) {
        previous = sum;
        sum += 2.0 * first * ((n % 2 == 0) ? power : -power);
        power *= ratio;
    }
    return {sum, std::min(previous, sum), std::max(previous, sum)};
}

DnForms dn_forms(StableIndex idx, double q, double a, int n, const QuadSpec& spec) {
    idx.require_hitting();
    require_nonzero_level(a);
    if (n < 1) throw DomainError("D_n needs n >= 1");
    const auto phi = [&](double level) { return lt_T_point(HittingQuery{idx, q, 0.0, level, std::nullopt, spec}); };
    const double far = (2.0 * n + 1.0) * a;
    const double near = (2.0 * n - 1.0) * a;
    const double step = phi(2.0 * a);
    DnForms out;
    out.direct = phi(far) - phi(near) * step;
    out.ordered = lt_T_a_before_b(HittingQuery{idx, q, 0.0, far, near, spec}) * (1.0 - step * step);
    return out;
}

double dn_gap(StableIndex idx, double q, double a, int n, double agreement, const QuadSpec& spec) {
    const DnForms f = dn_forms(idx, q, a, n, spec);
    if (std::abs(f.direct - f.ordered) > agreement) {
        std::ostringstream os;
        os << "D_" << n << " forms disagree: " << f.direct << " vs " << f.ordered;
        throw ConsistencyError(os.str());
    }
    return 0.5 * (f.direct + f.ordered);
}

double v_q(StableIndex idx, double q, double a, const QuadSpec& spec) { return abs_values(idx, q, a, spec).v; }

double lt_T_three(StableIndex idx, double q, double x, double a, const QuadSpec& spec) {
    const AbsValues s = abs_values(idx, q, a, spec);
    if (x == 0.0 || x == a || x == -a) return 1.0;
    const auto u = [&](double y) { return resolvent_u(idx, q, y, spec); };
    const double c_zero = (2.0 * s.ha - s.h2a) / s.v;  // (u0 + u(2a) - 2u(a)) / V
    const double c_side = s.ha / s.v;                  // (u0 - u(a)) / V
    return c_zero * u(x) + c_side * (u(x - a) + u(x + a));
}

double lt_T_pm_a_before_0(StableIndex idx, double q, double x, double a, const QuadSpec& spec) {
    const AbsValues s = abs_values(idx, q, a, spec);
    if (x == 0.0) return 0.0;
    if (x == a || x == -a) return 1.0;
    const auto h = [&](double y) { return h_q(idx, q, y, spec); };
    const double hx = h(x);
    // u0 (u(x-a) + u(x+a)) - 2 u(a) u(x) with u(y) = u0 - h(y).
    const double num = s.u0 * (2.0 * s.ha + 2.0 * hx - h(x - a) - h(x + a)) - 2.0 * s.ha * hx;
    return num / s.v;
}

double lt_G_abs(StableIndex idx, double q, double a, const QuadSpec& spec) {
    const AbsValues s = abs_values(idx, q, a, spec);
    return 2.0 * s.v / ((s.u0 + s.u2a) * reflected_h_gap(idx, a));
}

double lt_Xi_abs(StableIndex idx, double q, double a, const QuadSpec& spec) {
    const AbsValues s = abs_values(idx, q, a, spec);
    return s.ua * reflected_h_gap(idx, a) / s.v;
}

double exc_m_hits(StableIndex idx, double a) {
    idx.require_hitting();
    if (!(a > 0.0)) throw DomainError("reflected target level a must be positive");
    return 2.0 / reflected_h_gap(idx, a);
}

double exc_m_joint(StableIndex idx, double q, double r, double a, const QuadSpec& spec) {
    if (!(a > 0.0)) throw DomainError("reflected target level a must be positive");
    if (r < 0.0) throw DomainError("rate r must be nonnegative");
    const AbsValues s = abs_values(idx, q, a, spec);
    const double ratio_r = r == 0.0 ? 1.0 : 1.0 - h_q(idx, r, a, spec) / resolvent_u(idx, r, 0.0, spec);
    return ratio_r * 2.0 * s.ua / s.v;
}

QLimit q_to_zero(const std::function<double(double)>& f, std::array<double, 3> grid, std::optional<double> exponent) {
    if (!(grid[0] > grid[1] && grid[1] > grid[2] && grid[2] > 0.0))
        throw DomainError("q_to_zero needs a strictly decreasing positive grid");
    const double f0 = f(grid[0]);
    const double f1 = f(grid[1]);
    const double f2 = f(grid[2]);
    QLimit out;
    out.last = f2;
    if (exponent) {
        const double p = *exponent;
        if (!(p > 0.0)) throw DomainError("q_to_zero: exponent must be positive");
        const double r1 = std::pow(grid[1] / grid[0], p);
        const double r2 = std::pow(grid[2] / grid[1], p);
        const double g0 = (f1 - r1 * f0) / (1.0 - r1);
        const double g1 = (f2 - r2 * f1) / (1.0 - r2);
        // g_i ~ L + c' q^{2p}; eliminate across the outer pair.
        const double s = std::pow(grid[2] / grid[0], p);
        out.value = (g1 - s * g0) / (1.0 - s);
        out.rate = p;
        return out;
    }
    const double d1 = f1 - f0;
    const double d2 = f2 - f1;
    const double denom = d2 - d1;
    if (d1 == 0.0 || d2 == 0.0 || denom == 0.0 || d2 / d1 <= 0.0) {
        out.value = f2;
        return out;
    }
    out.value = f2 - d2 * d2 / denom;
    out.rate = std::log(d2 / d1) / std::log(grid[2] / grid[1]);
    return out;
}

namespace brownian {

namespace {
double s_of(double q, double level) { return std::sqrt(2.0 * q) * std::abs(level); }
}  // namespace

double lt_hit(double q, double level) { return std::exp(-s_of(q, level)); }

double lt_two_points(double q, double x, double a, double b) {
    const double r = std::sqrt(2.0 * q);
    return std::cosh(r * (x - 0.5 * (a + b))) / std::cosh(r * 0.5 * (b - a));
}

double lt_a_before_b(double q, double x, double a, double b) {
    const double r = std::sqrt(2.0 * q);
    return std::sinh(r * (b - x)) / std::sinh(r * (b - a));
}

double lt_last_exit(double q, double level) {
    const double s = s_of(q, level);
    return -std::expm1(-2.0 * s) / (2.0 * s);
}

double lt_excursion_part(double q, double level) {
    const double s = s_of(q, level);
    return s / std::sinh(s);
}

double lt_hit_abs(double q, double level) { return 1.0 / std::cosh(s_of(q, level)); }

double lt_last_exit_abs(double q, double level) {
    const double s = s_of(q, level);
    return std::tanh(s) / s;
}

}  // namespace brownian

}  // namespace stablehit
