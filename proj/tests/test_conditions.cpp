#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "radavg/averaging.hpp"
#include "radavg/conditions.hpp"
#include "radavg/constructions.hpp"
#include "radavg/ext_real.hpp"

#include <cmath>
#include <random>

using namespace radavg;

namespace {
const RadialWeight one = RadialWeight::power_log(0.0, 0.0);
const RadialWeight pl1 = RadialWeight::power_log(1.0, 0.0);
const RadialWeight mono = RadialWeight::monomial(1.0);
const RadialGrid grid = RadialGrid::dyadic(40, 8);

double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
} // namespace

TEST_CASE("strong condition: constant weights bounded with a refined oracle") {
    const ConditionProfile prof = mp_profile(one, one, one, 2.0, grid);
    CHECK(prof.verdict == Verdict::Bounded);
    // oracle: the same expression from closed-form pieces, swept over the
    // probe radii (the supremum is the boundary limit 1)
    double oracle_sup = 0.0;
    for (int j = 1; j <= 40; ++j) {
        const double r = 1.0 - std::ldexp(1.0, -j);
        const double f1 = std::sqrt(-std::log(r));
        const double f2 = std::sqrt(1.0 / (1.0 - r) + std::log1p(-r) - 1.0);
        oracle_sup = std::max(oracle_sup, f1 * f2);
    }
    CHECK(oracle_sup == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(prof.sup_estimate == doctest::Approx(oracle_sup).epsilon(1e-3));
    for (int i = 1; i <= 20; ++i) {
        const double r = i / 21.0;
        const double f1 = std::sqrt(-std::log(r));
        const double f2 = std::sqrt(1.0 / (1.0 - r) + std::log1p(-r) - 1.0);
        CHECK(mp_value(one, one, one, 2.0, r) ==
              doctest::Approx(f1 * f2).epsilon(1e-7));
    }
}

TEST_CASE("strong condition diverges on the log-example triple") {
    const WeightTriple lt = make_log_example_triple(2.0);
    const ConditionProfile prof = mp_profile(lt.omega, lt.nu, lt.eta, 2.0, grid);
    CHECK(prof.verdict != Verdict::Bounded);
    CHECK(prof.verdict != Verdict::Infinite);
    // growth like (level log 2)^{1/p}
    CHECK(prof.level_power_alpha == doctest::Approx(0.5).epsilon(0.15));
}

TEST_CASE("strong condition infinite on the degenerate pair") {
    const RadialWeight cex = make_counterexample_nu(one, 2.0);
    const ConditionProfile prof = mp_profile(one, cex, cex, 2.0, grid);
    CHECK(prof.verdict == Verdict::Infinite);
}

TEST_CASE("tail-ratio condition: constant weights") {
    SUBCASE("p = 2 bounded with limit 1") {
        const ConditionProfile prof = dp_profile(one, one, 2.0, grid);
        CHECK(prof.verdict == Verdict::Bounded);
        CHECK(prof.sup_estimate == doctest::Approx(1.0).epsilon(0.02));
        // closed form: 2/(1+r) (1 + (1-r)log(1-r) - (1-r))
        for (double r : {0.3, 0.8, 0.99}) {
            const double want = 2.0 / (1.0 + r) *
                                (1.0 + (1.0 - r) * std::log1p(-r) - (1.0 - r));
            CHECK(dp_value(one, one, 2.0, r) ==
                  doctest::Approx(want).epsilon(1e-8));
        }
    }
    SUBCASE("p = 1 diverges logarithmically") {
        const ConditionProfile prof = dp_profile(one, one, 1.0, grid);
        CHECK(prof.verdict == Verdict::DivergesLog);
        CHECK(prof.rate == doctest::Approx(std::log(2.0)).epsilon(0.1));
    }
}

TEST_CASE("tail-ratio condition bounded on the degenerate pair") {
    const RadialWeight cex = make_counterexample_nu(one, 2.0);
    const ConditionProfile prof = dp_profile(one, cex, 2.0, grid);
    CHECK(prof.verdict == Verdict::Bounded);
}

TEST_CASE("weak-type condition") {
    SUBCASE("bounded on the log-example triple") {
        const WeightTriple lt = make_log_example_triple(2.0);
        const NpProfile np = np_profile(lt.omega, lt.nu, lt.eta, 2.0, grid);
        CHECK(np.profile.verdict == Verdict::Bounded);
        CHECK(np.best_t < np.best_r);
    }
    SUBCASE("vanishing target weight gives the zero profile") {
        const NpProfile np =
            np_profile(one, one, RadialWeight::zero(), 2.0, grid);
        CHECK(np.profile.verdict == Verdict::Bounded);
        CHECK(np.profile.sup_estimate == 0.0);
    }
    SUBCASE("constant weights: bounded and consistent with the strong one") {
        const NpProfile np = np_profile(one, one, one, 2.0, grid);
        CHECK(np.profile.verdict == Verdict::Bounded);
        const ConditionProfile mp = mp_profile(one, one, one, 2.0, grid);
        CHECK(np.profile.sup_estimate <= mp.sup_estimate * 1.5);
        // refinement reproduces the reported maximizer value
        CHECK(np_value(one, one, one, 2.0, np.best_t, np.best_r) ==
              doctest::Approx(np.best_value).epsilon(1e-6));
    }
}

TEST_CASE("smoothed weak-type condition") {
    const WeightTriple lt = make_log_example_triple(2.0);
    SUBCASE("bounded on the log-example triple at eps = 1") {
        const ConditionProfile prof =
            mp_eps_profile(lt.omega, lt.nu, lt.eta, 2.0, 1.0, grid);
        CHECK(prof.verdict == Verdict::Bounded);
    }
    SUBCASE("zero target weight") {
        const ConditionProfile prof =
            mp_eps_profile(one, one, RadialWeight::zero(), 2.0, 1.0, grid);
        CHECK(prof.sup_estimate == 0.0);
    }
    SUBCASE("verdict independent of eps across scenarios") {
        struct Case {
            WeightTriple t;
            double p;
        };
        const RadialWeight cex = make_counterexample_nu(one, 2.0);
        const std::vector<Case> cases{{{one, one, one}, 2.0},
                                      {{lt.omega, lt.nu, lt.eta}, 2.0},
                                      {{one, cex, cex}, 2.0},
                                      {{pl1, pl1, pl1}, 2.0}};
        for (const auto& c : cases) {
            const NpProfile np = np_profile(c.t.omega, c.t.nu, c.t.eta, c.p, grid);
            auto tri = [](Verdict v) {
                return v == Verdict::Bounded ? 'B'
                       : v == Verdict::Infinite ? 'I' : 'D';
            };
            for (double eps : {0.5, 1.0, 2.0}) {
                const ConditionProfile me =
                    mp_eps_profile(c.t.omega, c.t.nu, c.t.eta, c.p, eps, grid);
                CHECK(tri(me.verdict) == tri(np.profile.verdict));
            }
        }
    }
}

TEST_CASE("tail identity residuals") {
    SUBCASE("vanishing lower limit") {
        CHECK(carleson_identity_residual(one, pl1, 2.0, 0.0) < 1e-7);
    }
    SUBCASE("constant weights, closed-form case") {
        CHECK(carleson_identity_residual(one, one, 1.0, 0.5) < 1e-8);
    }
    SUBCASE("random families") {
        std::mt19937_64 rng(4242);
        for (int i = 0; i < 8; ++i) {
            const RadialWeight omega =
                RadialWeight::power_log(2.0 * u01(rng), double(rng() % 3));
            const RadialWeight nu = RadialWeight::monomial(2.0 * u01(rng), 1.5);
            const double p = (i % 2) ? 2.5 : 0.5;
            const double a = 0.9 * u01(rng);
            CHECK(carleson_identity_residual(omega, nu, p, a) < 1e-6);
        }
    }
}

TEST_CASE("sector measure ratio") {
    SUBCASE("algebraic link with the tail-ratio condition") {
        for (double a : {0.2, 0.6, 0.9}) {
            const double ratio = carleson_ratio(one, pl1, 2.0, a);
            const double dp = dp_value(one, pl1, 2.0, a);
            CHECK((ratio - 1.0 / 2.0) * 2.0 == doctest::Approx(dp).epsilon(1e-12));
        }
    }
    SUBCASE("small radius limit is 1/p") {
        for (double p : {0.5, 2.0})
            CHECK(carleson_ratio(one, one, p, 1e-6) ==
                  doctest::Approx(1.0 / p).epsilon(1e-4));
    }
    SUBCASE("bounded on the degenerate pair") {
        const RadialWeight cex = make_counterexample_nu(one, 2.0);
        double sup = 0.0;
        for (int j = 1; j <= 30; j += 3)
            sup = std::max(sup,
                           carleson_ratio(one, cex, 2.0, 1.0 - std::ldexp(1.0, -j)));
        CHECK(std::isfinite(sup));
        CHECK(sup < 10.0);
    }
}

TEST_CASE("self-improvement sandwich") {
    SUBCASE("constant weights at p = 2") {
        const SelfImproveReport rep = self_improve_check(one, one, 2.0, 0.5, grid);
        CHECK(rep.dp == doctest::Approx(1.0).epsilon(0.02));
        CHECK(rep.sandwich_ok);
    }
    SUBCASE("bounds pinch as eps shrinks") {
        const SelfImproveReport r1 = self_improve_check(one, one, 2.0, 0.4, grid);
        const SelfImproveReport r2 = self_improve_check(one, one, 2.0, 0.05, grid);
        CHECK(r2.upper_factor < r1.upper_factor);
        CHECK(r2.upper_factor == doctest::Approx(1.0).epsilon(0.1));
        CHECK(r2.sandwich_ok);
    }
    SUBCASE("power weight at p = 3") {
        const double dp = dp_sup(pl1, pl1, 3.0, grid);
        const double eps = 0.5 * 3.0 / (dp + 1.0);
        const SelfImproveReport rep = self_improve_check(pl1, pl1, 3.0, eps, grid);
        CHECK(rep.sandwich_ok);
    }
    SUBCASE("inadmissible eps is rejected") {
        CHECK_THROWS_AS(self_improve_check(one, one, 2.0, 1.9, grid),
                        std::domain_error);
    }
}

TEST_CASE("necessary conditions for q >= p") {
    SUBCASE("q = p with matching weights reproduces the tail-ratio profile") {
        const NecessaryPair pq = necessary_pq(one, pl1, pl1, 2.0, 2.0, grid);
        const ConditionProfile dp = dp_profile(one, pl1, 2.0, grid);
        REQUIRE(pq.first.values.size() == dp.values.size());
        for (std::size_t i = 0; i < dp.values.size(); ++i)
            CHECK(pq.first.values[i] == dp.values[i]);
        CHECK(pq.first.verdict == dp.verdict);
    }
    SUBCASE("q = 2p on constant weights: power divergence at rate 2(q/p-1)") {
        const NecessaryPair pq = necessary_pq(one, one, one, 1.0, 2.0, grid);
        CHECK(pq.second.verdict == Verdict::DivergesPower);
        CHECK(pq.second.power == doctest::Approx(2.0).epsilon(0.1));
    }
    SUBCASE("bounded scenario stays bounded at q = p") {
        const NecessaryPair pq = necessary_pq(one, one, one, 2.0, 2.0, grid);
        CHECK(pq.first.verdict == Verdict::Bounded);
        CHECK(pq.second.verdict == Verdict::Bounded);
    }
    SUBCASE("implication diagnostic positive for doubling weights") {
        const NecessaryPair pq = necessary_pq(one, pl1, pl1, 2.0, 2.0, grid);
        CHECK(pq.implication_checked);
        CHECK(pq.implication_min_ratio > 0.0);
    }
    SUBCASE("exponent ordering is enforced") {
        CHECK_THROWS_AS(necessary_pq(one, one, one, 2.0, 1.0, grid),
                        std::domain_error);
    }
}

TEST_CASE("strong condition equivalences for regular weights") {
    // For smooth comparable weights the analytic-range condition and the
    // full strong condition agree in verdict.
    struct Case {
        RadialWeight omega, nu;
        double p;
    };
    const std::vector<Case> cases{{one, one, 2.0}, {pl1, pl1, 2.0},
                                  {mono, mono, 2.0}, {mono, one, 2.0}};
    for (const auto& c : cases) {
        const bool dp_b =
            dp_profile(c.omega, c.nu, c.p, grid).verdict == Verdict::Bounded;
        const bool mp_b =
            mp_profile(c.omega, c.nu, c.nu, c.p, grid).verdict == Verdict::Bounded;
        CHECK(dp_b == mp_b);
    }
}
