#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "radavg/classify.hpp"
#include "radavg/constructions.hpp"
#include "radavg/ext_real.hpp"
#include "radavg/weight.hpp"
#include "radavg/quadrature.hpp"

#include <cmath>

using namespace radavg;

namespace {
const RadialWeight one = RadialWeight::power_log(0.0, 0.0);
const RadialWeight mono = RadialWeight::monomial(1.0);
const RadialWeight pl1 = RadialWeight::power_log(1.0, 0.0);
} // namespace

TEST_CASE("density evaluation") {
    CHECK(one(0.5) == doctest::Approx(1.0));
    CHECK(mono(0.25) == doctest::Approx(0.25));
    CHECK(pl1(0.5) == doctest::Approx(0.5));
    CHECK_THROWS_AS(one(1.0), std::domain_error);
    CHECK_THROWS_AS(one(-0.1), std::domain_error);
}

TEST_CASE("tails: closed forms") {
    for (double r : {0.0, 0.25, 0.5, 0.9}) {
        CHECK(one.tail(r) == doctest::Approx(1.0 - r).epsilon(1e-12));
        CHECK(mono.tail(r) == doctest::Approx((1.0 - r * r) / 2).epsilon(1e-12));
    }
    CHECK(pl1.tail(0.5) == doctest::Approx(0.125));
}

TEST_CASE("moments") {
    CHECK(one.moment(0.0, 1.0) == doctest::Approx(0.5));
    CHECK(one.moment(0.3, 0.0) == doctest::Approx(0.7));
    CHECK(pl1.moment(0.0, 1.0) == doctest::Approx(1.0 / 6).epsilon(1e-9));
    CHECK_THROWS_AS(one.moment(0.0, -1.0), std::domain_error);
}

TEST_CASE("tail/moment consistency") {
    for (const auto& w : {one, mono, pl1, RadialWeight::power_log(1.0, 2.0)})
        for (double t : {0.0, 0.4, 0.9})
            CHECK(w.moment(t, 0.0) == doctest::Approx(w.tail(t)).epsilon(1e-9));
}

TEST_CASE("tail decreases to zero toward the boundary") {
    for (const auto& w :
         {one, mono, pl1, RadialWeight::power_log(-1.0, -2.0),
          RadialWeight::power_log(0.5, 1.0)}) {
        double prev = w.tail(0.0);
        for (int j = 2; j <= 36; j += 2) {
            const double cur = w.tail(1.0 - std::ldexp(1.0, -j));
            CHECK(cur < prev);
            prev = cur;
        }
        // log-type tails decay slowly; all families must still have shed
        // most of their mass by 1 - 2^{-36}
        CHECK(prev < 0.05 * w.tail(0.0));
    }
}

TEST_CASE("analytic tails agree with direct quadrature") {
    const std::vector<double> probes{0.0, 0.3, 0.7, 0.9, 0.99};
    for (const auto& w : {one, mono, pl1, RadialWeight::power_log(2.0, 3.0),
                          RadialWeight::power_log(-1.0, -2.0)}) {
        CHECK(w.has_analytic_tail());
        CHECK(verify_analytic_tail(w, probes) < 1e-9);
    }
}

TEST_CASE("moment tables match individual moments") {
    for (const auto& w : {one, mono, RadialWeight::power_log(1.0, 0.0),
                          RadialWeight::power_log(0.5, 2.0)}) {
        const auto table = w.moment_table(0.0, 64);
        for (std::size_t x : {0, 1, 7, 32, 64})
            CHECK(table[x] ==
                  doctest::Approx(w.moment(0.0, double(x))).epsilon(1e-8));
        const auto table2 = w.moment_table(0.6, 32);
        for (std::size_t x : {0, 3, 32})
            CHECK(table2[x] ==
                  doctest::Approx(w.moment(0.6, double(x))).epsilon(1e-8));
    }
}

TEST_CASE("level radii sequence") {
    const auto rho = rho_sequence(one, 2.0, 0.0, 6);
    for (int n = 0; n <= 6; ++n)
        CHECK(rho[n] == doctest::Approx(1.0 - std::ldexp(1.0, -n)).epsilon(1e-10));

    const auto rho2 = rho_sequence(pl1, 4.0, 0.0, 1);
    CHECK(rho2[1] == doctest::Approx(0.5).epsilon(1e-9));

    const auto rho3 = rho_sequence(mono, 2.0, 0.0, 1);
    CHECK(rho3[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));

    SUBCASE("sequence is nondecreasing and approaches 1") {
        const auto r = rho_sequence(RadialWeight::power_log(0.5, 1.0), 3.0, 0.2, 20);
        for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i] >= r[i - 1]);
        CHECK(r.back() > 0.99);
    }
}

TEST_CASE("level radii telescoping identity") {
    // mass between consecutive levels is the tail at the start times
    // K^{-n} (K-1)/K
    for (const auto& w : {one, mono, RadialWeight::power_log(0.5, 1.0)}) {
        const double K = 2.0, r0 = 0.1;
        const auto rho = rho_sequence(w, K, r0, 8);
        const double t0 = w.tail(r0);
        for (int n = 0; n < 8; ++n) {
            const double mass = w.tail(rho[n]) - w.tail(rho[n + 1]);
            const double want = t0 * std::pow(K, -n) * (K - 1.0) / K;
            CHECK(mass == doctest::Approx(want).epsilon(1e-8));
        }
    }
}

TEST_CASE("oscillating companion weight") {
    const RadialWeight nu = make_counterexample_nu(one, 2.0);

    SUBCASE("level radii for the constant base") {
        const auto& lv = nu.level_radii();
        REQUIRE(lv.size() > 10);
        for (int n = 0; n < 8; ++n)
            CHECK(lv[n] == doctest::Approx(1.0 - std::ldexp(1.0, -n)).epsilon(1e-10));
    }

    SUBCASE("density: 1/t on live bands, zero on gaps") {
        CHECK(nu(0.25) == doctest::Approx(4.0));
        CHECK(nu(0.6) == 0.0);
        CHECK(nu(0.8) == doctest::Approx(1.25));
        CHECK(nu(0.9) == 0.0);
    }

    SUBCASE("gaps witness the lack of absolute continuity") {
        const auto& lv = nu.level_radii();
        for (std::size_t n = 1; n + 1 < std::min<std::size_t>(lv.size(), 12); n += 2) {
            const double mid = 0.5 * (lv[n] + lv[n + 1]);
            CHECK(nu(mid) == 0.0);
            CHECK(one(mid) > 0.0);
        }
    }

    SUBCASE("area tail comparable to the base tail") {
        // ratio in [1/(K+1), 1] for K = 2
        for (double t : {0.0, 0.2, 0.5, 0.75, 0.9, 0.96, 0.99}) {
            const double ratio = nu.area_tail(t) / one.tail(t);
            CHECK(ratio >= 1.0 / 3.0 - 1e-6);
            CHECK(ratio <= 1.0 + 1e-6);
        }
    }

    SUBCASE("area tail against a direct quadrature oracle") {
        for (double t : {0.1, 0.55, 0.8}) {
            const double direct = integrate_improper(
                [&nu](double s, double d) { return s * nu.density(s, d); }, t,
                1e-6);
            CHECK(nu.area_tail(t) == doctest::Approx(direct).epsilon(1e-4));
        }
    }

    SUBCASE("upper doubling membership") {
        CHECK(classify_dhat(nu, RadialGrid::dyadic()).verdict ==
              Membership::Member);
    }

    SUBCASE("requires an upper-doubling base") {
        // a base failing the doubling certification is rejected
        CHECK_THROWS(make_counterexample_nu(RadialWeight::zero(), 2.0));
    }
}

TEST_CASE("log-example weight triple") {
    const WeightTriple t = make_log_example_triple(2.0);
    CHECK(t.omega(0.5) == doctest::Approx(0.5)); // omega(s) = s
    // nu(s) = (1-s) log^2(e/(1-s)), eta(s) = (1-s) log(e/(1-s))
    CHECK(t.nu(0.0) == doctest::Approx(1.0));
    CHECK(t.eta(0.0) == doctest::Approx(1.0));
    const double L = 1.0 + std::log(2.0);
    CHECK(t.nu(0.5) == doctest::Approx(0.5 * L * L));
    CHECK(t.eta(0.5) == doctest::Approx(0.5 * L));
    CHECK_THROWS_AS(make_log_example_triple(1.0), std::domain_error);
}

TEST_CASE("zero weight behaves as an empty measure") {
    const RadialWeight z = RadialWeight::zero();
    CHECK(z.is_zero());
    CHECK(z.area_tail(0.3) == 0.0);
    CHECK(z.moment(0.2, 2.0) == 0.0);
    CHECK_THROWS_AS(z.tail(0.5), NonpositiveTailError);
}

TEST_CASE("tabulated weights: exact piecewise arithmetic") {
    const RadialWeight w =
        RadialWeight::tabulated({0.0, 0.5, 0.75}, {1.0, 2.0, 4.0});
    CHECK(w(0.2) == 1.0);
    CHECK(w(0.6) == 2.0);
    CHECK(w(0.9) == 4.0);
    CHECK(w.tail(0.0) == doctest::Approx(0.5 + 0.5 + 1.0));
    CHECK(w.tail(0.6) == doctest::Approx(0.3 + 1.0));
    CHECK(w.area_tail(0.5) ==
          doctest::Approx(2.0 * (0.75 * 0.75 - 0.25) / 2 +
                          4.0 * (1.0 - 0.75 * 0.75) / 2));
    CHECK(w.moment(0.0, 0.0) == doctest::Approx(w.tail(0.0)));
    // rejected shapes
    CHECK_THROWS(RadialWeight::tabulated({0.0, 0.5}, {1.0, 0.0}));
    CHECK_THROWS(RadialWeight::tabulated({0.5, 0.5}, {1.0, 1.0}));
    CHECK_THROWS(RadialWeight::tabulated({0.0, 0.5}, {1.0, -1.0}));
}
