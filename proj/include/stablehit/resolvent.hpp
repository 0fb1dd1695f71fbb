#pragma once

#include "stablehit/numerics.hpp"

namespace stablehit {

/// Stability index alpha together with gamma = 1/alpha.
struct StableIndex {
    double alpha = 2.0;
    double gamma = 0.5;

    /// Validates 0 < alpha <= 2.
    static StableIndex of(double alpha);

    /// Point hitting needs 1 < alpha <= 2; throws DomainError otherwise.
    void require_hitting() const;

    [[nodiscard]] bool brownian() const { return alpha == 2.0; }
};

/// Transition density p_t(x) = (1/pi) int_0^inf cos(x xi) exp(-t xi^alpha) d xi.
double density_p(StableIndex idx, double t, double x, const QuadSpec& spec = {});

/// Resolvent density u_q(x) = (1/pi) int_0^inf cos(x xi) / (q + xi^alpha) d xi.
double resolvent_u(StableIndex idx, double q, double x, const QuadSpec& spec = {});

/// h_q(x) = u_q(0) - u_q(x), evaluated without cancellation for small |x| q^gamma.
double h_q(StableIndex idx, double q, double x, const QuadSpec& spec = {});

/// h(x) = lim_{q->0} h_q(x) = h(1) |x|^{alpha-1}.
double h_limit(StableIndex idx, double x);

/// h(1) = 1 / (2 Gamma(alpha) sin((alpha-1) pi / 2)), valid for 1 < alpha < 3.
double h_limit_at_one(double alpha);

/// u_1(0) = Gamma(1 - 1/alpha) Gamma(1/alpha) / (alpha pi).
double resolvent_u1_at_zero(double alpha);

/// (1/pi) int_0^inf (1 - cos x) / x^alpha dx by quadrature, 1 < alpha < 3.
double appendix_integral(double alpha, const QuadSpec& spec = {});

// Raw quadrature without scaling reduction, closed-form dispatch or series.
// Kept public as independent evaluation routes for cross-checks.
double density_p_direct(double alpha, double t, double x, const QuadSpec& spec = {});
double resolvent_u_direct(double alpha, double q, double x, const QuadSpec& spec = {});

}  // namespace stablehit
