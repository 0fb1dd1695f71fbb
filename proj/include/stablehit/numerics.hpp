#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace stablehit {

using RealFn = std::function<double(double)>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Tolerances and budgets shared by every quadrature routine.
///
/// `oscillatory_terms` is the number of half-period panels summed directly
/// before the alternating panel series is handed to the Euler transform.
struct QuadSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_panels = 4000;
    int oscillatory_terms = 16;

    /// Throws DomainError when the invariants fail.
    void validate() const;

    [[nodiscard]] QuadSpec with_tolerance(double abs, double rel) const {
        QuadSpec s = *this;
        s.abs_tol = abs;
        s.rel_tol = rel;
        return s;
    }
};

/// How an envelope decays at +infinity. Algebraic tails need a power-law
/// change of variables; exponential ones are fine with x = u/(1-u).
struct TailHint {
    bool algebraic = false;
    double exponent = 0.0;  // f(x) ~ x^{-exponent}, exponent > 1

    static TailHint fast() { return {}; }
    static TailHint power(double p) { return {true, p}; }
};

/// A Laplace transform q -> E[exp(-q T)] of a law on [0, inf).
struct LaplaceTransform {
    std::function<double(double)> eval;
    double q_min = 0.0;  // smallest argument at which eval is safe
    std::string label;

    double operator()(double q) const;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on (lo, hi).
/// `hi` may be +infinity, in which case x = lo + u/(1-u) is used; that is
/// only appropriate for integrands that decay faster than any power.
double integrate_adaptive(const RealFn& f, double lo, double hi, const QuadSpec& spec = {});

/// Integral over (lo, inf) of f with f(x) ~ x^{-decay_exponent}, via
/// x = lo * v^{-1/(p-1)}, which makes the leading tail behaviour constant in v.
double integrate_power_tail(const RealFn& f, double lo, double decay_exponent,
                            const QuadSpec& spec = {});

/// Integral over (lo, hi) of f with algebraic endpoint behaviour
/// f ~ (x-lo)^{lo_exponent} and f ~ (hi-x)^{hi_exponent}, exponents > -1.
/// Each half is mapped by a power substitution that removes the singularity.
double integrate_singular(const RealFn& f, double lo, double hi, double lo_exponent,
                          double hi_exponent, const QuadSpec& spec = {});

/// Integral over (lo, inf) of cos(w x) g(x) with g positive and decreasing.
///
/// The range is cut at the zeros of cos(w x); the first
/// `spec.oscillatory_terms` panels are summed directly and the remaining
/// alternating panel series is accelerated by repeated averaging (Euler).
/// With w == 0 this reduces to a plain integral of g, for which `tail`
/// selects the infinite-range treatment.
double integrate_oscillatory_cos(const RealFn& g, double w, const QuadSpec& spec = {},
                                 double lo = 0.0, TailHint tail = TailHint::fast());

/// Stehfest weights V_1..V_n for even n.
std::vector<double> stehfest_weights(int n_terms);

/// Raw Gaver-Stehfest inversion of F at time t with the given order.
double gaver_stehfest(const std::function<double(double)>& transform, double t, int n_terms);

struct InversionOptions {
    int n_terms = 12;
    // Maximum allowed |estimate(n) - estimate(n-2)| before NumericInstability.
    double instability_tol = 5e-2;
};

/// P(T < t) for the law whose Laplace transform is `phi`, by Gaver-Stehfest
/// inversion of q -> phi(q)/q, clamped to [0, 1].
double laplace_invert_cdf(const LaplaceTransform& phi, double t, int n_terms = 12);
double laplace_invert_cdf(const LaplaceTransform& phi, double t, const InversionOptions& opts);

/// x in [lo, hi] with F(x) = p for nondecreasing continuous F.
double invert_monotone(const RealFn& F, double p, double lo, double hi, double abs_tol = 1e-12);

}  // namespace stablehit
