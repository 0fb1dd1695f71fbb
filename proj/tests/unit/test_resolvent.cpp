#include "stablehit/errors.hpp"
#include "stablehit/resolvent.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace stablehit;
using std::numbers::pi;

namespace {

double total_mass(StableIndex idx) {
    const RealFn f = [idx](double x) { return density_p(idx, 1.0, x); };
    const double body = integrate_adaptive(f, 0.0, 10.0);
    const double tail = idx.brownian() ? integrate_adaptive(f, 10.0, kInf) : integrate_power_tail(f, 10.0, 1.0 + idx.alpha);
    return 2.0 * (body + tail);
}

double h_closed(double alpha) { return 1.0 / (2.0 * std::tgamma(alpha) * std::sin(pi * (alpha - 1.0) / 2.0)); }

}  // namespace

TEST_SUITE("resolvent") {
    TEST_CASE("index validation") {
        CHECK_THROWS_AS(StableIndex::of(0.0), DomainError);
        CHECK_THROWS_AS(StableIndex::of(2.1), DomainError);
        CHECK(StableIndex::of(1.6).gamma * 1.6 == doctest::Approx(1.0).epsilon(1e-15));
        CHECK_THROWS_AS(resolvent_u(StableIndex::of(1.0), 1.0, 0.5), DomainError);
        CHECK_THROWS_AS(h_q(StableIndex::of(0.7), 1.0, 0.5), DomainError);
        CHECK_NOTHROW(density_p(StableIndex::of(0.7), 1.0, 0.5));
    }

    TEST_CASE("density at the origin") {
        CHECK(density_p(StableIndex::of(2.0), 1.0, 0.0) == doctest::Approx(1.0 / (2.0 * std::sqrt(pi))).epsilon(1e-15));
        CHECK(density_p(StableIndex::of(2.0), 1.0, 0.0) == doctest::Approx(0.2820948).epsilon(1e-7));
        for (double a : {0.6, 1.2, 1.5, 1.8})
            CHECK(density_p(StableIndex::of(a), 1.0, 0.0) == doctest::Approx(std::tgamma(1.0 / a) / (a * pi)).epsilon(1e-13));
    }

    TEST_CASE("symmetry in x") {
        const StableIndex idx = StableIndex::of(1.5);
        for (double x : {0.3, 1.7}) {
            CHECK(density_p(idx, 1.0, x) == density_p(idx, 1.0, -x));
            CHECK(resolvent_u(idx, 0.7, x) == resolvent_u(idx, 0.7, -x));
        }
    }

    TEST_CASE("densities integrate to one") {
        for (double a : {1.2, 1.5, 1.8, 2.0}) CHECK(std::abs(total_mass(StableIndex::of(a)) - 1.0) < 1e-6);
    }

    TEST_CASE("Brownian resolvent and density") {
        const StableIndex two = StableIndex::of(2.0);
        CHECK(resolvent_u(two, 1.0, 0.0) == 0.5);
        for (double q : {0.25, 1.0, 4.0})
            for (double x : {0.0, 0.5, 2.0}) {
                const double closed = std::exp(-std::sqrt(q) * x) / (2.0 * std::sqrt(q));
                CHECK(std::abs(resolvent_u(two, q, x) - closed) < 1e-14);
                // the quadrature path, without the closed-form dispatch
                CHECK(std::abs(resolvent_u_direct(2.0, q, x) - closed) < 1e-8);
                const double p = std::exp(-x * x / (4.0 * q)) / (2.0 * std::sqrt(pi * q));
                CHECK(std::abs(density_p_direct(2.0, q, x) - p) < 1e-8);
            }
    }

    TEST_CASE("resolvent scaling at the origin") {
        for (double a : {1.2, 1.5, 1.8}) {
            const double u10 = std::tgamma(1.0 - 1.0 / a) * std::tgamma(1.0 / a) / (a * pi);
            CHECK(resolvent_u1_at_zero(a) == doctest::Approx(u10).epsilon(1e-14));
            for (double q : {0.25, 1.0, 4.0})
                CHECK(std::abs(resolvent_u(StableIndex::of(a), q, 0.0) - u10 * std::pow(q, 1.0 / a - 1.0)) < 1e-9);
        }
    }

    TEST_CASE("resolvent two ways") {
        // scaled evaluation vs raw cosine quadrature at the requested q, x
        for (double a : {1.2, 1.5, 1.8})
            for (double q : {0.3, 1.0, 5.0})
                for (double x : {0.2, 1.0, 4.0})
                    CHECK(std::abs(resolvent_u(StableIndex::of(a), q, x) - resolvent_u_direct(a, q, x)) < 1e-9);
        for (double a : {1.2, 1.5, 1.8})
            for (double t : {0.5, 2.0})
                for (double x : {0.2, 3.0, 12.0})
                    CHECK(std::abs(density_p(StableIndex::of(a), t, x) - density_p_direct(a, t, x)) < 1e-9);
    }

    TEST_CASE("h_q") {
        CHECK(h_q(StableIndex::of(2.0), 1.0, 1.0) == doctest::Approx((1.0 - std::exp(-1.0)) / 2.0).epsilon(1e-15));
        CHECK(h_q(StableIndex::of(2.0), 1.0, 1.0) == doctest::Approx(0.316060).epsilon(1e-6));
        for (double a : {1.3, 2.0}) CHECK(h_q(StableIndex::of(a), 0.8, 0.0) == 0.0);
        // h_q = u_q(0) - u_q(x)
        const StableIndex idx = StableIndex::of(1.5);
        for (double x : {0.1, 1.0, 6.0})
            CHECK(std::abs(h_q(idx, 1.0, x) - (resolvent_u(idx, 1.0, 0.0) - resolvent_u(idx, 1.0, x))) < 1e-9);
    }

    TEST_CASE("h_q approaches h as q -> 0") {
        const StableIndex idx = StableIndex::of(1.5);
        const double h = h_limit(idx, 1.0);
        double previous = 1e300;
        for (double q : {1e-2, 1e-4, 1e-6}) {
            const double gap = std::abs(h_q(idx, q, 1.0) - h);
            CHECK(gap < previous);
            previous = gap;
        }
        CHECK(previous < 1e-3);
        // u_q(1)/u_q(0) = 1 - h_q(1)/u_q(0) -> 1, at rate h(1) / (u_1(0) q^{1/alpha - 1}).
        double last = 0.0;
        for (double q : {1e-2, 1e-4, 1e-6}) {
            const double ratio = resolvent_u(idx, q, 1.0) / resolvent_u(idx, q, 0.0);
            CHECK(ratio > last);
            CHECK(ratio < 1.0);
            last = ratio;
        }
        const double leading = 1.0 - h_closed(1.5) / (resolvent_u1_at_zero(1.5) * std::pow(1e-6, -1.0 / 3.0));
        CHECK(std::abs(last - leading) < 1e-4);
    }

    TEST_CASE("h limit and the constant integral") {
        CHECK(h_limit(StableIndex::of(2.0), 3.0) == 1.5);
        for (double a : {1.2, 2.0}) CHECK(h_limit(StableIndex::of(a), 0.0) == 0.0);
        CHECK(h_limit(StableIndex::of(1.5), 1.0) == doctest::Approx(h_closed(1.5)).epsilon(1e-14));
        CHECK(h_limit(StableIndex::of(1.5), 1.0) == doctest::Approx(0.797885).epsilon(1e-6));
        CHECK(h_limit(StableIndex::of(1.5), -2.0) == doctest::Approx(h_closed(1.5) * std::sqrt(2.0)).epsilon(1e-14));
        CHECK(std::abs(appendix_integral(2.0) - 0.5) < 1e-10);
        CHECK(std::abs(appendix_integral(1.5) - h_limit(StableIndex::of(1.5), 1.0)) < 1e-9);
        CHECK(std::abs(appendix_integral(2.5) - 1.0 / (2.0 * std::tgamma(2.5) * std::sin(3.0 * pi / 4.0))) < 1e-9);
        CHECK_THROWS_AS(appendix_integral(3.0), DomainError);
    }
}
