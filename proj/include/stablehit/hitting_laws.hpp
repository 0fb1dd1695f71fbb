#pragma once

#include "stablehit/resolvent.hpp"

#include <array>
#include <functional>
#include <optional>

namespace stablehit {

/// Parameters of a hitting-time question for X_alpha started at x.
struct HittingQuery {
    StableIndex idx;
    double q = 1.0;
    double x = 0.0;
    double a = 1.0;
    std::optional<double> b;
    QuadSpec spec;

    /// Throws DomainError on alpha outside (1,2], q <= 0 or a == b.
    void validate() const;
};

// First hitting of points by X_alpha.

/// E_x[exp(-q T_a)] = u_q(x-a) / u_q(0).
double lt_T_point(const HittingQuery& query);

/// E_x[exp(-q (T_a ^ T_b))] = (u_q(x-a) + u_q(x-b)) / (u_q(0) + u_q(a-b)).
double lt_T_two_points(const HittingQuery& query);

/// E_x[exp(-q T_a); T_a < T_b]. Evaluated through h_q so that small q does
/// not cancel u_q(0)^2 against u_q(a-b)^2.
double lt_T_a_before_b(const HittingQuery& query);

/// P_x(T_a < T_b) = (1 + (|x-b|^{alpha-1} - |x-a|^{alpha-1}) / |a-b|^{alpha-1}) / 2.
double prob_hit_a_before_b(StableIndex idx, double x, double a, double b);

// Last exit decomposition T_a = G_a + Xi_a for X_alpha started at 0.

double lt_G_point(StableIndex idx, double q, double a, const QuadSpec& spec = {});
double lt_Xi_point(StableIndex idx, double q, double a, const QuadSpec& spec = {});

/// n(T_a < zeta) = 1 / (2 h(a)).
double exc_n_hits(StableIndex idx, double a);

/// n[exp(-q T_a - r (zeta - T_a)); T_a < zeta]. r == 0 selects the r -> 0+
/// limit, where the u_r(a)/u_r(0) factor is exactly 1.
double exc_n_joint(StableIndex idx, double q, double r, double a, const QuadSpec& spec = {});

// The reflected process |X_alpha|.

double lt_T_abs(StableIndex idx, double q, double a, const QuadSpec& spec = {});

struct SeriesBracket {
    double partial_sum = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

/// Partial sums 2 sum_{n < n_terms} (-1)^n phi(0->a) phi(0->2a)^n together
/// with the interval spanned by the last two partial sums.
SeriesBracket lt_T_abs_series(StableIndex idx, double q, double a, int n_terms, const QuadSpec& spec = {});

struct DnForms {
    double direct = 0.0;   // phi(0->(2n+1)a) - phi(0->(2n-1)a) phi(0->2a)
    double ordered = 0.0;  // phi(0->(2n+1)a before (2n-1)a) (1 - phi(0->2a)^2)
};
DnForms dn_forms(StableIndex idx, double q, double a, int n, const QuadSpec& spec = {});

/// D_n = phi(0->(2n+1)a) - phi(0->(2n-1)a) phi(0->2a), computed in both the
/// direct form and the a-before-b form. Throws ConsistencyError if they
/// differ by more than `agreement`; returns their mean.
double dn_gap(StableIndex idx, double q, double a, int n, double agreement = 1e-9, const QuadSpec& spec = {});

/// V_q(a) = u_q(0)^2 + u_q(0) u_q(2a) - 2 u_q(a)^2.
double v_q(StableIndex idx, double q, double a, const QuadSpec& spec = {});

/// E_x[exp(-q T_{0,a,-a})].
double lt_T_three(StableIndex idx, double q, double x, double a, const QuadSpec& spec = {});

/// E_x[exp(-q T_{a,-a}); T_{a,-a} < T_0].
double lt_T_pm_a_before_0(StableIndex idx, double q, double x, double a, const QuadSpec& spec = {});

double lt_G_abs(StableIndex idx, double q, double a, const QuadSpec& spec = {});
double lt_Xi_abs(StableIndex idx, double q, double a, const QuadSpec& spec = {});

/// m(T_a < zeta) = 2 / (4 h(a) - h(2a)) for the excursions of |X_alpha|.
double exc_m_hits(StableIndex idx, double a);

/// m[exp(-q T_a - r (zeta - T_a)); T_a < zeta]; r == 0 selects the limit.
double exc_m_joint(StableIndex idx, double q, double r, double a, const QuadSpec& spec = {});

/// Extrapolation of f(q) to q -> 0+ from a decreasing grid of three points.
/// Without `exponent`, Aitken's delta-squared; `rate` then estimates p in
/// f(q) ~ L + c q^p. With a known exponent p, Richardson elimination of the
/// q^p and q^{2p} terms, which is what the hitting transforms need since their
/// corrections run in powers of 1/u_q(0) ~ q^{1-1/alpha}.
struct QLimit {
    double value = 0.0;
    double last = 0.0;
    double rate = 0.0;
};
QLimit q_to_zero(const std::function<double(double)>& f, std::array<double, 3> grid = {1e-2, 1e-4, 1e-6},
                 std::optional<double> exponent = std::nullopt);

/// Closed forms for alpha = 2, written for a standard Brownian motion B.
/// X_2 = sqrt(2) B, so a level a of X_2 is the level a/sqrt(2) of B.
namespace brownian {

inline double level(double a_of_x2) { return a_of_x2 / 1.4142135623730951; }

double lt_hit(double q, double level);                        // exp(-sqrt(2q)|level|)
double lt_two_points(double q, double x, double a, double b);  // cosh ratio, a < x < b
double lt_a_before_b(double q, double x, double a, double b);  // sinh ratio, a < x < b
double lt_last_exit(double q, double level);                   // (1 - e^{-2 s}) / (2 s), s = sqrt(2q)|level|
double lt_excursion_part(double q, double level);              // s / sinh s
double lt_hit_abs(double q, double level);                     // 1 / cosh s
double lt_last_exit_abs(double q, double level);               // tanh s / s

}  // namespace brownian

}  // namespace stablehit
