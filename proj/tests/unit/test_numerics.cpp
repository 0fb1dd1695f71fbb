#include "stablehit/errors.hpp"
#include "stablehit/numerics.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace stablehit;
using std::numbers::pi;

TEST_SUITE("numerics") {
    TEST_CASE("adaptive quadrature on the basic integrals") {
        CHECK(integrate_adaptive([](double x) { return std::exp(-x); }, 0.0, kInf) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(integrate_adaptive([](double) { return 1.0; }, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
        // antiderivative -exp(-x^2/2)
        CHECK(integrate_adaptive([](double x) { return x * std::exp(-0.5 * x * x); }, 0.0, kInf) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }

    TEST_CASE("adaptive quadrature is linear") {
        const RealFn f = [](double x) { return std::exp(-x) * std::sin(x); };
        const RealFn g = [](double x) { return 1.0 / (1.0 + x * x * x * x); };
        const QuadSpec spec;
        const double lhs = integrate_adaptive([&](double x) { return 2.5 * f(x) - 0.75 * g(x); }, 0.0, 7.0, spec);
        const double rhs = 2.5 * integrate_adaptive(f, 0.0, 7.0, spec) - 0.75 * integrate_adaptive(g, 0.0, 7.0, spec);
        CHECK(std::abs(lhs - rhs) <= 2.0 * (spec.abs_tol + spec.rel_tol * std::abs(rhs)));
    }

    TEST_CASE("power tail and singular endpoints") {
        // int_1^inf x^{-1.3} dx = 1/0.3
        CHECK(integrate_power_tail([](double x) { return std::pow(x, -1.3); }, 1.0, 1.3) ==
              doctest::Approx(1.0 / 0.3).epsilon(1e-10));
        // int_0^1 x^{-1/2} (1-x)^{-1/2} dx = pi
        CHECK(integrate_singular([](double x) { return 1.0 / std::sqrt(x * (1.0 - x)); }, 0.0, 1.0, -0.5, -0.5) ==
              doctest::Approx(pi).epsilon(1e-11));
    }

    TEST_CASE("non-finite integrands are reported") {
        CHECK_THROWS_AS(integrate_adaptive([](double) { return std::nan(""); }, 0.0, 1.0), NonConvergence);
    }

    TEST_CASE("oscillatory cosine integrals") {
        // w = 0 is a plain integral
        CHECK(integrate_oscillatory_cos([](double x) { return std::exp(-x); }, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
        // Gaussian: (sqrt(pi)/2) e^{-w^2/4}
        const double gauss = integrate_oscillatory_cos([](double x) { return std::exp(-x * x); }, 1.0);
        CHECK(gauss == doctest::Approx(0.5 * std::sqrt(pi) * std::exp(-0.25)).epsilon(1e-11));
        CHECK(gauss == doctest::Approx(0.690194).epsilon(1e-6));
        // Cauchy: (pi/2) e^{-w}
        const double cauchy = integrate_oscillatory_cos([](double x) { return 1.0 / (1.0 + x * x); }, 1.0);
        CHECK(cauchy == doctest::Approx(0.5 * pi * std::exp(-1.0)).epsilon(1e-10));
        CHECK(cauchy == doctest::Approx(0.577864).epsilon(1e-6));
    }

    TEST_CASE("oscillatory integral is even in w") {
        const RealFn g = [](double x) { return 1.0 / (1.0 + std::pow(x, 1.5)); };
        CHECK(integrate_oscillatory_cos(g, 2.3) == integrate_oscillatory_cos(g, -2.3));
    }

    TEST_CASE("oscillatory integral at small frequency keeps a narrow envelope") {
        // int_0^inf cos(w x) e^{-x^2} dx with w = 1e-4 and a first zero near 1.6e4
        const double w = 1e-4;
        CHECK(integrate_oscillatory_cos([](double x) { return std::exp(-x * x); }, w) ==
              doctest::Approx(0.5 * std::sqrt(pi) * std::exp(-0.25 * w * w)).epsilon(1e-11));
    }

    TEST_CASE("Stehfest weights sum to zero") {
        for (int n : {8, 12, 16}) {
            double s = 0.0;
            for (double v : stehfest_weights(n)) s += v;
            CHECK(std::abs(s) < 1e-6);
        }
        CHECK_THROWS_AS(stehfest_weights(7), DomainError);
    }

    TEST_CASE("Laplace inversion of simple laws") {
        const LaplaceTransform expo{[](double q) { return 1.0 / (1.0 + q); }, 0.0, "exp"};
        // n = 16 reaches 1e-7 at t = 1; the default n = 12 gives ~1e-5
        CHECK(std::abs(laplace_invert_cdf(expo, 1.0, 16) - (1.0 - std::exp(-1.0))) < 1e-6);
        CHECK(std::abs(laplace_invert_cdf(expo, 1.0) - 0.632121) < 1e-4);

        const LaplaceTransform point_mass{[](double q) { return std::exp(-q); }, 0.0, "delta_1"};
        CHECK(laplace_invert_cdf(point_mass, 2.0) == doctest::Approx(1.0).epsilon(0.05));

        // exp(-sqrt q) is the law of 1/(4 G_{1/2}); its CDF is erfc(1/(2 sqrt t))
        const LaplaceTransform half{[](double q) { return std::exp(-std::sqrt(q)); }, 0.0, "half-stable"};
        CHECK(laplace_invert_cdf(half, 1.0) == doctest::Approx(std::erfc(0.5)).epsilon(1e-4));
    }

    // Pointwise Gaver-Stehfest cannot be exactly monotone; dips stay within
    // the n = 12 inversion error (about 1.5e-4 on these laws).
    TEST_CASE("inverted CDFs lie in [0,1] and are nondecreasing up to inversion error") {
        const std::vector<LaplaceTransform> lts = {
            {[](double q) { return 1.0 / (1.0 + q); }, 0.0, "exp"},
            {[](double q) { return std::exp(-std::sqrt(q)); }, 0.0, "half"},
            {[](double q) { return std::pow(1.0 + q, -2.5); }, 0.0, "gamma"},
        };
        for (const auto& lt : lts) {
            double prev = 0.0;
            for (double t = 0.05; t < 20.0; t *= 1.3) {
                const double v = laplace_invert_cdf(lt, t);
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
                CHECK(v >= prev - 5e-4);
                prev = v;
            }
        }
    }

    TEST_CASE("divergent inversions are reported") {
        // exp(+q) is not a Laplace transform; successive orders disagree wildly
        const LaplaceTransform bad{[](double q) { return std::exp(q); }, 0.0, "bad"};
        CHECK_THROWS_AS(laplace_invert_cdf(bad, 1.0), NumericInstability);
    }

    TEST_CASE("monotone inversion") {
        CHECK(invert_monotone([](double x) { return x; }, 0.25, 0.0, 1.0) == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(invert_monotone([](double x) { return 1.0 - std::exp(-x); }, 0.5, 0.0, 10.0) ==
              doctest::Approx(std::log(2.0)).epsilon(1e-11));
        CHECK(std::abs(invert_monotone([](double x) { return 1.0 / (1.0 + std::exp(-x)); }, 0.5, -5.0, 7.0)) < 1e-11);
        const RealFn F = [](double x) { return std::tanh(x); };
        for (double x : {0.1, 0.7, 2.0}) CHECK(invert_monotone(F, F(x), 0.0, 5.0) == doctest::Approx(x).epsilon(1e-10));
        CHECK_THROWS_AS(invert_monotone(F, 0.5, 1.0, 2.0), BracketError);
    }

    TEST_CASE("QuadSpec validation") {
        QuadSpec s;
        s.abs_tol = 0.0;
        s.rel_tol = 0.0;
        CHECK_THROWS_AS(s.validate(), DomainError);
        s = QuadSpec{};
        s.max_panels = 0;
        CHECK_THROWS_AS(s.validate(), DomainError);
    }
}
