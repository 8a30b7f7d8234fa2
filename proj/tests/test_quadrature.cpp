#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "radavg/ext_real.hpp"
#include "radavg/grid.hpp"
#include "radavg/profile.hpp"
#include "radavg/quadrature.hpp"

#include <cmath>

using namespace radavg;

TEST_CASE("improper integrals: reference values") {
    const double c = integrate_improper([](double, double) { return 1.0; }, 0.0);
    CHECK(std::abs(c - 1.0) < 1e-10);

    // density with a log-squared boundary singularity; closed-form value 1
    const double v = integrate_improper(
        [](double, double d) {
            const double L = 1.0 - std::log(d);
            return 1.0 / (d * L * L);
        },
        0.0, 1e-9);
    CHECK(std::abs(v - 1.0) < 1e-8);

    // non-integrable tail surfaces as +inf
    const double h =
        integrate_improper([](double, double d) { return 1.0 / d; }, 0.0);
    CHECK(is_inf(h));
}

TEST_CASE("improper integrals: pointwise infinities propagate") {
    const double v = integrate_improper(
        [](double s, double) { return s > 0.3 && s < 0.4 ? kInf : 1.0; }, 0.0);
    CHECK(is_inf(v));
}

TEST_CASE("additivity over interval splits") {
    const Integrand f = [](double s, double) { return std::cos(3.0 * s) + 1.2; };
    const double whole = integrate_improper(f, 0.0, 1e-11);
    const double split = integrate_finite(f, 0.0, 0.37, 1e-12) +
                         integrate_finite(f, 0.37, 0.81, 1e-12) +
                         integrate_improper(f, 0.81, 1e-11);
    CHECK(std::abs(whole - split) < 1e-9 * std::abs(whole));
}

TEST_CASE("sup_profile: verdict examples") {
    const RadialGrid g = RadialGrid::dyadic(40, 8);

    const ConditionProfile flat = sup_profile([](double) { return 5.0; }, g);
    CHECK(flat.verdict == Verdict::Bounded);
    CHECK(flat.sup_estimate == doctest::Approx(5.0));

    const ConditionProfile lg =
        sup_profile([](double r) { return -std::log1p(-r); }, g);
    CHECK(lg.verdict == Verdict::DivergesLog);
    CHECK(lg.rate == doctest::Approx(std::log(2.0)).epsilon(0.02));

    const ConditionProfile pw =
        sup_profile([](double r) { return 1.0 / std::sqrt(1.0 - r); }, g);
    CHECK(pw.verdict == Verdict::DivergesPower);
    CHECK(std::abs(pw.power - 0.5) < 0.05);

    const ConditionProfile inf_prof =
        sup_profile([](double r) { return r > 0.9 ? kInf : 1.0; }, g);
    CHECK(inf_prof.verdict == Verdict::Infinite);
}

TEST_CASE("sup_profile: running supremum is nondecreasing") {
    const RadialGrid g = RadialGrid::dyadic(30, 8);
    const ConditionProfile p =
        sup_profile([](double r) { return std::sin(40.0 * r) + 1.0; }, g);
    for (std::size_t i = 1; i < p.running_sup.size(); ++i)
        CHECK(p.running_sup[i] >= p.running_sup[i - 1]);
}

TEST_CASE("sup_profile: verdicts stable under band refinement") {
    const RadialGrid coarse = RadialGrid::dyadic(40, 8);
    const RadialGrid fine = RadialGrid::dyadic(40, 16);
    const auto exprs = std::vector<std::function<double(double)>>{
        [](double) { return 5.0; },
        [](double r) { return -std::log1p(-r); },
        [](double r) { return 1.0 / std::sqrt(1.0 - r); },
    };
    for (const auto& e : exprs) {
        const ConditionProfile a = sup_profile(e, coarse);
        const ConditionProfile b = sup_profile(e, fine);
        CHECK(a.verdict == b.verdict);
        CHECK(a.sup_estimate ==
              doctest::Approx(b.sup_estimate).epsilon(0.01));
    }
}

TEST_CASE("radial grid shape") {
    const RadialGrid g = RadialGrid::dyadic(10, 4);
    CHECK(g.nodes.front() == 0.0);
    CHECK(g.nodes.back() == doctest::Approx(1.0 - std::ldexp(1.0, -10)));
    for (std::size_t i = 1; i < g.nodes.size(); ++i)
        CHECK(g.nodes[i] > g.nodes[i - 1]);
    CHECK(g.size() == 41);
    CHECK_THROWS(PolarGrid::make(g, 12));  // not a power of two >= 16
    CHECK_THROWS(PolarGrid::make(g, 48));
    CHECK(PolarGrid::make(g, 64).angular == 64);
}
