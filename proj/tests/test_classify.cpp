#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "radavg/classify.hpp"
#include "radavg/constructions.hpp"
#include "radavg/ext_real.hpp"
#include "radavg/quadrature.hpp"

#include <cmath>

using namespace radavg;

namespace {

const RadialGrid grid = RadialGrid::dyadic(40, 8);

// Tabulated weight whose tail is exactly 1/log(e/(1-r)) at the knots:
// knot densities are tail differences, the final band extends the exact
// remainder to the boundary.
RadialWeight log_tail_tabulated() {
    auto W = [](double r) { return 1.0 / (1.0 - std::log1p(-r)); };
    std::vector<double> knots, vals;
    const int per_level = 4, max_level = 48;
    for (int j = 0; j <= max_level * per_level; ++j)
        knots.push_back(1.0 - std::pow(2.0, -double(j) / per_level));
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        vals.push_back((W(knots[i]) - W(knots[i + 1])) /
                       (knots[i + 1] - knots[i]));
    vals.push_back(W(knots.back()) / (1.0 - knots.back()));
    return RadialWeight::tabulated(std::move(knots), std::move(vals));
}

} // namespace

TEST_CASE("upper doubling: constant and power weights") {
    const auto r1 = classify_dhat(RadialWeight::power_log(0, 0), grid);
    CHECK(r1.verdict == Membership::Member);
    CHECK(r1.C_estimate == doctest::Approx(2.0).epsilon(1e-9));

    // exact ratio 2^{a+1}, cross-checked by quadrature tails
    for (double a : {-0.5, 1.0, 2.5}) {
        const RadialWeight w = RadialWeight::power_log(a, 0.0);
        const auto rep = classify_dhat(w, grid);
        CHECK(rep.verdict == Membership::Member);
        CHECK(rep.C_estimate ==
              doctest::Approx(std::pow(2.0, a + 1.0)).epsilon(1e-8));
        for (int j = 1; j <= 10; ++j) {
            const double r = 1.0 - std::ldexp(1.0, -j);
            const double ratio = w.tail_by_quadrature(r, 1e-11) /
                                 w.tail_by_quadrature(0.5 * (1 + r), 1e-11);
            CHECK(ratio == doctest::Approx(std::pow(2.0, a + 1.0)).epsilon(1e-7));
        }
    }
}

TEST_CASE("upper doubling holds across the power-log family") {
    for (double a : {-0.5, 0.0, 1.0, 3.0})
        for (double b : {-1.0, 0.0, 1.0, 2.0}) {
            const auto rep = classify_dhat(RadialWeight::power_log(a, b), grid);
            CHECK(rep.verdict == Membership::Member);
        }
    CHECK(classify_dhat(RadialWeight::monomial(2.0), grid).verdict ==
          Membership::Member);
}

TEST_CASE("tail decay class: power weights certify, log tails do not") {
    const auto r1 = classify_dcheck(RadialWeight::power_log(0, 0), 2.0, grid);
    CHECK(r1.verdict == Membership::Member);
    CHECK(r1.C_estimate == doctest::Approx(2.0).epsilon(1e-9));

    for (double a : {0.0, 1.0}) {
        for (double K : {2.0, 4.0}) {
            const auto rep =
                classify_dcheck(RadialWeight::power_log(a, 0.0), K, grid);
            CHECK(rep.verdict == Membership::Member);
            CHECK(rep.C_estimate ==
                  doctest::Approx(std::pow(K, a + 1.0)).epsilon(1e-8));
        }
    }
}

TEST_CASE("tabulated log-tail weight: doubling but no tail decay") {
    const RadialWeight w = log_tail_tabulated();
    // the knots realize the target tail exactly
    auto W = [](double r) { return 1.0 / (1.0 - std::log1p(-r)); };
    for (int j = 1; j <= 30; ++j) {
        const double r = 1.0 - std::ldexp(1.0, -j);
        CHECK(w.tail(r) == doctest::Approx(W(r)).epsilon(1e-12));
    }
    const auto hat = classify_dhat(w, grid);
    CHECK(hat.verdict == Membership::Member);
    CHECK(hat.C_estimate <= 1.0 + std::log(2.0) + 1e-6);

    for (double K : {2.0, 4.0, 8.0})
        CHECK(classify_dcheck(w, K, grid).verdict == Membership::NotMember);
    CHECK_FALSE(is_member_both(w, grid));
}

TEST_CASE("regular weights: exact comparability ratios") {
    const auto r1 = classify_regular(RadialWeight::power_log(0, 0), grid);
    CHECK(r1.verdict == Membership::Member);
    CHECK(r1.ratio_sup == doctest::Approx(1.0));
    CHECK(r1.ratio_inf == doctest::Approx(1.0));

    for (double a : {-0.5, 1.0, 2.0}) {
        const auto rep = classify_regular(RadialWeight::power_log(a, 0.0), grid);
        CHECK(rep.verdict == Membership::Member);
        CHECK(rep.ratio_sup == doctest::Approx(1.0 / (a + 1.0)).epsilon(1e-9));
        CHECK(rep.ratio_inf == doctest::Approx(1.0 / (a + 1.0)).epsilon(1e-9));
    }
}

TEST_CASE("regular weights: failures") {
    // vanishing density at an inner probe point
    CHECK(classify_regular(RadialWeight::monomial(1.0), grid).verdict ==
          Membership::NotMember);
    // bands where the density vanishes while the tail stays positive
    const RadialWeight cex =
        make_counterexample_nu(RadialWeight::power_log(0, 0), 2.0);
    CHECK(classify_regular(cex, grid).verdict == Membership::NotMember);
    // purely logarithmic tail: ratio grows like the log factor
    CHECK(classify_regular(RadialWeight::power_log(-1.0, -2.0), grid).verdict ==
          Membership::NotMember);
}

TEST_CASE("doubling constants are at least 1 and protocol is recorded") {
    for (const auto& rep :
         {classify_dhat(RadialWeight::power_log(0.5, 1.0), grid),
          classify_dcheck(RadialWeight::monomial(2.0), 2.0, grid),
          classify_regular(RadialWeight::power_log(1.0, 0.0), grid)}) {
        CHECK(rep.C_estimate >= 1.0);
        CHECK(!rep.protocol.empty());
        CHECK(rep.max_probe_r > 0.99);
    }
}
