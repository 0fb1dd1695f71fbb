#pragma once

#include "stablehit/numerics.hpp"

namespace stablehit {

/// x^{a-1} / ((1+x)^{a+b} B(a,b)) on x > 0.
double beta_prime_density(double a, double b, double x);

/// (sin(pi/alpha) / (2 pi/alpha)) / (1 + |x|^alpha), alpha > 1.
double alpha_cauchy_density(double alpha, double x);

/// Density of the law with characteristic function 1/(1+|theta|^alpha),
/// 0 < alpha <= 2. Infinite at x = 0 when alpha <= 1.
double linnik_density(double alpha, double x, const QuadSpec& spec = {});

/// E[cos(theta C_alpha)] for the alpha-Cauchy variable, by cosine quadrature.
double alpha_cauchy_charfn(double alpha, double theta, const QuadSpec& spec = {});

/// Density of (1/pi) log(G_a / G'_a) for independent gamma(a) variables:
/// (pi / B(a,a)) (2 cosh(pi x / 2))^{-2a}, evaluated in log space.
double z_density(double a, double x);

/// Phi_a(theta) = 2 int_0^inf (1 - cos(theta u)) e^{-a pi u} / (u (1 - e^{-pi u})) du.
double phi_exponent(double a, double theta, const QuadSpec& spec = {});

/// Meixner marginal density at time t:
/// (2 cos(beta/2))^t B(t/2, t/2) / (2 pi) * exp(beta x - Phi_{t/2}(pi x)).
double meixner_density(double beta, double t, double x, const QuadSpec& spec = {});

/// P(R_alpha > x) = p_1(x) / p_1(0).
double rayleigh_survival(double alpha, double x, const QuadSpec& spec = {});

/// E[1 / (p + q B + r B U^{-1/gamma})] with B ~ beta(1-gamma, gamma) and U
/// uniform, by nested quadrature. This is the Stieltjes-type transform of the
/// (age, duration) pair of the excursion straddling time 1.
double age_duration_transform(double gamma, double p, double q, double r, const QuadSpec& spec = {});

}  // namespace stablehit
