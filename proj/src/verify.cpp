#include "radavg/verify.hpp"

#include "radavg/averaging.hpp"
#include "radavg/classify.hpp"
#include "radavg/conditions.hpp"
#include "radavg/constructions.hpp"
#include "radavg/ext_real.hpp"
#include "radavg/kernel.hpp"
#include "radavg/norm_estimates.hpp"
#include "radavg/quadrature.hpp"
#include "radavg/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace radavg {

namespace {

double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Random weight with a closed-form tail (keeps the checks fast and the
// quadrature honest).
RadialWeight random_weight(std::mt19937_64& rng, double max_power = 2.0) {
    const double scale = 0.5 + 1.5 * u01(rng);
    if (rng() % 3 == 0)
        return RadialWeight::monomial(3.0 * u01(rng), scale);
    const double a = -0.3 + (max_power + 0.3) * u01(rng);
    const double b = static_cast<double>(rng() % 3);
    return RadialWeight::power_log(a, b, scale);
}

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// Bounded / Diverges / Infinite equivalence class of a verdict.
char tri_state(Verdict v) {
    if (v == Verdict::Bounded) return 'B';
    if (v == Verdict::Infinite) return 'I';
    return 'D';
}

CheckResult check_fubini_identity() {
    CheckResult res{1, "exact tail identity residual < 1e-6 (20 seeded cases)",
                    false, 0.0, ""};
    std::mt19937_64 rng(20260809);
    const double ps[4] = {0.5, 1.0, 2.0, 3.0};
    const double as[4] = {0.0, 0.5, 0.9, 1.0 - std::ldexp(1.0, -20)};
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const RadialWeight omega = random_weight(rng);
        const RadialWeight nu = random_weight(rng);
        const double p = ps[i % 4];
        const double a = as[(i / 4) % 4];
        const double r = carleson_identity_residual(omega, nu, p, a);
        worst = std::max(worst, r);
    }
    res.pass = worst < 1e-6;
    res.detail = "max residual " + fmt(worst);
    return res;
}

CheckResult check_constants_fixed_point() {
    CheckResult res{2, "|T(1) - 1| < 1e-9 at 100 probes per built-in weight",
                    false, 0.0, ""};
    const RadialWeight one = RadialWeight::power_log(0.0, 0.0);
    std::vector<RadialWeight> weights{
        one,
        RadialWeight::monomial(1.0),
        RadialWeight::power_log(1.0, 0.0),
        RadialWeight::power_log(1.0, 2.0),
        RadialWeight::power_log(1.0, 1.0),
        make_counterexample_nu(one, 2.0),
    };
    const PolarGrid pg = PolarGrid::make(RadialGrid::dyadic(8, 2), 16);
    const RadialFunctionField unit = RadialFunctionField::from_function(
        pg, [](double, double) { return std::complex<double>(1.0, 0.0); },
        true);
    double worst = 0.0;
    for (const auto& w : weights) {
        for (int i = 0; i < 100; ++i) {
            const double expo = 0.4 * (i + 1);
            const double r = 1.0 - std::pow(2.0, -expo);
            const double th = 0.063 * i;
            const std::complex<double> v =
                apply_T(w, unit, std::polar(std::max(r, 1e-3), th));
            worst = std::max(worst, std::abs(v.real() - 1.0));
        }
    }
    res.pass = worst < 1e-9;
    res.detail = "max |T(1)-1| = " + fmt(worst);
    return res;
}

CheckResult check_self_improvement() {
    CheckResult res{3, "self-improvement sandwich with <= 1% slack (10 cases)",
                    false, 0.0, ""};
    const RadialWeight one = RadialWeight::power_log(0.0, 0.0);
    const RadialWeight pl1 = RadialWeight::power_log(1.0, 0.0);
    const RadialWeight pl2 = RadialWeight::power_log(2.0, 0.0);
    const RadialWeight pl05 = RadialWeight::power_log(0.5, 0.0);
    const RadialWeight mono = RadialWeight::monomial(1.0);
    struct Case {
        RadialWeight omega, nu;
        double p;
    };
    const std::vector<Case> cases{
        {one, one, 1.5}, {one, one, 2.0},   {one, one, 3.0},
        {pl1, pl1, 2.0}, {pl1, pl1, 3.0},   {mono, mono, 2.0},
        {mono, mono, 1.5}, {pl2, pl2, 2.5}, {pl05, pl05, 2.0},
        {mono, one, 2.0}};
    const RadialGrid grid = RadialGrid::dyadic(40, 8);
    int ok = 0;
    std::ostringstream detail;
    for (const auto& c : cases) {
        const double dp = dp_sup(c.omega, c.nu, c.p, grid);
        const double eps = 0.5 * c.p / (dp + 1.0);
        const SelfImproveReport rep =
            self_improve_check(c.omega, c.nu, c.p, eps, grid);
        if (rep.sandwich_ok) ++ok;
        else detail << " FAIL(p=" << c.p << ", D=" << fmt(dp) << ")";
    }
    res.pass = ok == static_cast<int>(cases.size());
    res.detail = std::to_string(ok) + "/10 sandwiches hold" + detail.str();
    return res;
}

CheckResult check_derived_rates() {
    CheckResult res{4, "derived divergence rates (bounded limit, log rate, "
                       "level power, q/p power)",
                    false, 0.0, ""};
    const RadialWeight one = RadialWeight::power_log(0.0, 0.0);
    const RadialGrid grid = RadialGrid::dyadic(40, 8);
    std::ostringstream detail;
    bool ok = true;

    // (a) bounded with supremum -> 1 within 2%
    const ConditionProfile a = dp_profile(one, one, 2.0, grid);
    const bool a_ok =
        a.verdict == Verdict::Bounded && std::abs(a.sup_estimate - 1.0) < 0.02;
    ok = ok && a_ok;
    detail << "(a) " << to_string(a.verdict) << " sup=" << fmt(a.sup_estimate);

    // (b) log divergence with rate log 2 per level, within 10%
    const ConditionProfile b = dp_profile(one, one, 1.0, grid);
    const double lg2 = std::log(2.0);
    const bool b_ok = b.verdict == Verdict::DivergesLog &&
                      std::abs(b.rate - lg2) < 0.1 * lg2;
    ok = ok && b_ok;
    detail << "; (b) " << to_string(b.verdict) << " rate=" << fmt(b.rate);

    // (c) log-triple strong condition grows like level^{1/p}
    const WeightTriple lt = make_log_example_triple(2.0);
    const ConditionProfile c = mp_profile(lt.omega, lt.nu, lt.eta, 2.0, grid);
    const bool c_ok = c.verdict != Verdict::Bounded &&
                      std::abs(c.level_power_alpha - 0.5) < 0.15 * 0.5;
    ok = ok && c_ok;
    detail << "; (c) " << to_string(c.verdict)
           << " alpha=" << fmt(c.level_power_alpha);

    // (d) q = 2p embedding condition diverges at the power rate 2(q/p - 1)
    // (computed from the closed-form tails; the area integral of the
    // constant weight carries the square of the band width).
    const NecessaryPair pq = necessary_pq(one, one, one, 1.0, 2.0, grid);
    const double want = 2.0 * (2.0 / 1.0 - 1.0);
    const bool d_ok = pq.second.verdict == Verdict::DivergesPower &&
                      std::abs(pq.second.power - want) < 0.1 * want;
    ok = ok && d_ok;
    detail << "; (d) " << to_string(pq.second.verdict)
           << " power=" << fmt(pq.second.power);

    res.pass = ok;
    res.detail = detail.str();
    return res;
}

CheckResult check_weak_pipeline_identity() {
    CheckResult res{5, "weak pipeline equals the direct condition value to "
                       "1e-6 (50 seeded cases)",
                    false, 0.0, ""};
    std::mt19937_64 rng(50550);
    double worst = 0.0;
    int finite = 0, agree_inf = 0;
    for (int i = 0; i < 50; ++i) {
        const RadialWeight omega = random_weight(rng);
        // keep the dual tail integral finite: the input-space weight must
        // not decay faster at the boundary than the averaging weight
        double a1 = 0.0;
        if (omega.family() == RadialWeight::Family::PowerLog)
            a1 = omega.param_a();
        std::mt19937_64 sub(rng());
        RadialWeight nu = RadialWeight::power_log(
            -0.3 + (a1 + 0.3) * u01(sub),
            static_cast<double>(sub() % 2), 0.5 + u01(sub));
        const RadialWeight eta = random_weight(rng);
        const double p = 1.2 + 2.3 * u01(rng);
        const double r = 1.0 - std::pow(2.0, -(1.0 + 17.0 * u01(rng)));
        const double t = r * (0.05 + 0.9 * u01(rng));
        const WeightTriple triple{omega, nu, eta};
        const double pipeline = weak_pipeline_value(triple, p, t, r);
        const double direct = np_value(omega, nu, eta, p, t, r);
        if (is_inf(pipeline) || is_inf(direct)) {
            if (is_inf(pipeline) == is_inf(direct)) ++agree_inf;
            continue;
        }
        ++finite;
        const double rel = std::abs(pipeline - direct) /
                           std::max(std::abs(direct), 1e-300);
        worst = std::max(worst, rel);
    }
    res.pass = worst < 1e-6 && finite + agree_inf == 50;
    res.detail = "max rel dev " + fmt(worst) + " over " +
                 std::to_string(finite) + " finite cases (+" +
                 std::to_string(agree_inf) + " matching infinite)";
    return res;
}

CheckResult check_strong_bracket() {
    CheckResult res{6, "empirical strong norm within the two-sided bracket "
                       "of the strong condition",
                    false, 0.0, ""};
    const RadialWeight one = RadialWeight::power_log(0.0, 0.0);
    const RadialWeight pl1 = RadialWeight::power_log(1.0, 0.0);
    const RadialWeight pl05 = RadialWeight::power_log(0.5, 0.0);
    const RadialWeight mono = RadialWeight::monomial(1.0);
    struct Case {
        WeightTriple triple;
        double p;
    };
    const std::vector<Case> cases{
        {{one, one, one}, 1.5}, {{one, one, one}, 2.0},
        {{one, one, one}, 3.0}, {{pl1, pl1, pl1}, 2.0},
        {{mono, mono, mono}, 2.0}, {{mono, one, one}, 2.0},
        {{pl05, pl05, pl05}, 2.5}};
    const RadialGrid grid = RadialGrid::dyadic(30, 8);
    bool ok = true;
    bool floor_ok = true;
    std::ostringstream detail;
    for (const auto& c : cases) {
        const ConditionProfile prof =
            mp_profile(c.triple.omega, c.triple.nu, c.triple.eta, c.p, grid);
        if (prof.verdict != Verdict::Bounded) {
            ok = false;
            detail << " [suite scenario not bounded!]";
            continue;
        }
        // Refine the condition supremum around the grid maximizer.
        double mp_sup = prof.sup_estimate;
        std::size_t arg = 0;
        for (std::size_t i = 0; i < prof.values.size(); ++i)
            if (prof.values[i] > prof.values[arg]) arg = i;
        const double lo = prof.nodes[arg > 0 ? arg - 1 : 0];
        const double hi =
            prof.nodes[std::min(arg + 1, prof.nodes.size() - 1)];
        for (int i = 0; i <= 32; ++i) {
            const double r = lo + (hi - lo) * i / 32.0;
            mp_sup = std::max(
                mp_sup, mp_value(c.triple.omega, c.triple.nu, c.triple.eta,
                                 c.p, r));
        }
        StrongFamilies fams;
        const NormEstimate emp = estimate_strong_norm(c.triple, c.p, fams, grid);
        const double bracket =
            c.p * std::pow(c.p - 1.0, (1.0 - c.p) / c.p) * mp_sup;
        const bool upper_ok = emp.value <= bracket * (1.0 + 1e-3);
        const bool lower_ok = emp.value >= 0.25 * mp_sup;
        ok = ok && upper_ok;
        floor_ok = floor_ok && lower_ok;
        detail << " [p=" << c.p << ": emp=" << fmt(emp.value)
               << " Mp=" << fmt(mp_sup) << " cap=" << fmt(bracket)
               << (upper_ok ? "" : " UPPER-VIOLATION")
               << (lower_ok ? "" : " below-floor(informational)") << "]";
    }
    res.pass = ok; // the 0.25 floor is informational by design
    res.detail = (floor_ok ? "floor ok;" : "floor missed (informational);") +
                 detail.str();
    return res;
}

CheckResult check_verdict_equivalences() {
    CheckResult res{7, "verdict equivalences across the built-in catalogue",
                    false, 0.0, ""};
    const RadialGrid grid = RadialGrid::dyadic(40, 8);
    bool ok = true;
    std::ostringstream detail;
    for (const Scenario& s : builtin_scenarios()) {
        const ScenarioResult r = run_scenario(s, "");
        if (!r.ok) {
            ok = false;
            detail << " [" << s.name << ": expectation diff]";
        }
        // (i) weak condition verdict matches its smoothed form for each eps
        if (s.p > 1.0) {
            const NpProfile np =
                np_profile(s.triple.omega, s.triple.nu, s.triple.eta, s.p, grid);
            for (double eps : {0.5, 1.0, 2.0}) {
                const ConditionProfile me = mp_eps_profile(
                    s.triple.omega, s.triple.nu, s.triple.eta, s.p, eps, grid);
                if (tri_state(me.verdict) != tri_state(np.profile.verdict)) {
                    ok = false;
                    detail << " [" << s.name << ": eps=" << eps
                           << " verdict mismatch "
                           << to_string(np.profile.verdict) << " vs "
                           << to_string(me.verdict) << "]";
                }
            }
        }
        // (ii) tail-ratio condition vs sector-measure ratio
        const ConditionProfile dp =
            dp_profile(s.triple.omega, s.triple.nu, s.p, grid);
        ConditionProfile carleson;
        carleson.nodes = dp.nodes;
        carleson.levels = dp.levels;
        carleson.values.resize(dp.values.size());
        for (std::size_t i = 0; i < dp.values.size(); ++i)
            carleson.values[i] =
                is_inf(dp.values[i]) ? kInf : (dp.values[i] + 1.0) / s.p;
        classify_profile(carleson, grid.levels);
        const bool dp_b = dp.verdict == Verdict::Bounded;
        const bool ca_b = carleson.verdict == Verdict::Bounded;
        if (dp_b != ca_b) {
            ok = false;
            detail << " [" << s.name << ": sector-ratio verdict mismatch]";
        }
    }
    // (iii) conjunction scenario
    {
        const Scenario weird = builtin_scenarios()[5];
        const bool mp_b = mp_profile(weird.triple.omega, weird.triple.nu,
                                     weird.triple.nu, weird.p, grid)
                              .verdict == Verdict::Bounded;
        const bool dp_b =
            dp_profile(weird.triple.omega, weird.triple.nu, weird.p, grid)
                .verdict == Verdict::Bounded;
        const bool np_b = np_profile(weird.triple.omega, weird.triple.nu,
                                     weird.triple.nu, weird.p, grid)
                              .profile.verdict == Verdict::Bounded;
        const bool omega_in = classify_dhat(weird.triple.omega, grid).verdict ==
                              Membership::Member;
        const bool nu_in = is_member_both(weird.triple.nu, grid);
        if (!(omega_in && nu_in && (mp_b == (dp_b && np_b)))) {
            ok = false;
            detail << " [conjunction scenario failed]";
        }
    }
    res.pass = ok;
    res.detail = ok ? "all equivalences hold" : detail.str();
    return res;
}

CheckResult check_mean_lower_bound_stability() {
    CheckResult res{8, "kernel-image mean lower bound positive and stable "
                       "under angular doubling",
                    false, 0.0, ""};
    const RadialWeight one = RadialWeight::power_log(0.0, 0.0);
    const int N = 2;
    double min1 = kInf, min2 = kInf;
    for (double a : {0.8, 0.9, 0.95, 0.99}) {
        const double tol = 1e-6 * std::pow(1.0 - a, -(N + 2.0));
        const KernelSeries k = build_kernel(one, a, tol, N);
        const int base_angles = [&] {
            int n = 64;
            while (static_cast<std::size_t>(n) < 2 * k.n_max() + 2) n <<= 1;
            return n;
        }();
        for (double tfrac : {0.0, 0.5, 1.0}) {
            const double t = a * tfrac;
            for (double q : {1.0, 2.0, 3.0}) {
                const MeanBoundPair b1 =
                    kernel_mean_lower_bound(k, one, q, N, a, t, base_angles);
                const MeanBoundPair b2 = kernel_mean_lower_bound(
                    k, one, q, N, a, t, 2 * base_angles);
                min1 = std::min(min1, ext_div(b1.lhs, b1.rhs));
                min2 = std::min(min2, ext_div(b2.lhs, b2.rhs));
            }
        }
    }
    const double drift = std::abs(min1 - min2) / std::max(min1, 1e-300);
    res.pass = min1 > 0.0 && min2 > 0.0 && drift < 0.2;
    res.detail = "min lhs/rhs = " + fmt(min1) + ", doubled-resolution min = " +
                 fmt(min2) + ", drift " + fmt(drift);
    return res;
}

CheckResult check_radial_maximal_inequalities() {
    CheckResult res{9, "radial-maximal inequalities with stable constants "
                       "(20 random step fields)",
                    false, 0.0, ""};
    std::mt19937_64 rng(99099);
    double C1 = 0.0, C2 = 0.0;       // max LHS/RHS at the base tolerance
    double C1r = 0.0, C2r = 0.0;     // at the refined tolerance
    bool all_finite = true;
    for (int i = 0; i < 20; ++i) {
        const RadialWeight omega = random_weight(rng);
        // random radial step function, zero pieces allowed
        const int k = 2 + static_cast<int>(rng() % 5);
        std::vector<double> x{0.0};
        for (int j = 0; j < k; ++j) x.push_back(0.98 * u01(rng));
        std::sort(x.begin(), x.end());
        x.erase(std::unique(x.begin(), x.end()), x.end());
        std::vector<double> h(x.size());
        for (auto& v : h) v = (u01(rng) < 0.25) ? 0.0 : 5.0 * u01(rng);
        if (std::all_of(h.begin(), h.end(), [](double v) { return v == 0.0; }))
            h.back() = 1.0;
        std::vector<double> hstar(h.size());
        double run = 0.0;
        for (std::size_t j = 0; j < h.size(); ++j) {
            run = std::max(run, h[j]);
            hstar[j] = run;
        }
        auto seg = [&](std::size_t j, double r) {
            const double lo = std::max(x[j], r);
            const double hi = (j + 1 < x.size()) ? x[j + 1] : 1.0;
            return std::pair<double, double>(lo, hi);
        };
        for (double r : {0.0, 0.3, 0.7}) {
            // exact \int_r^1 h omega dt by tail differences
            double ih = 0.0;
            for (std::size_t j = 0; j < h.size(); ++j) {
                const auto [lo, hi] = seg(j, r);
                if (hi <= lo || h[j] == 0.0) continue;
                ih += h[j] * (omega.tail(lo) -
                              (hi < 1.0 ? omega.tail(hi) : 0.0));
            }
            for (double tol : {1e-8, 1e-11}) {
                double& c1 = (tol == 1e-8) ? C1 : C1r;
                double& c2 = (tol == 1e-8) ? C2 : C2r;
                for (double p : {0.5, 1.0}) {
                    const double lhs = std::pow(ih, p);
                    double rhs = 0.0;
                    for (std::size_t j = 0; j < h.size(); ++j) {
                        const auto [lo, hi] = seg(j, r);
                        if (hi <= lo || hstar[j] == 0.0) continue;
                        rhs += std::pow(hstar[j], p) *
                               integrate_to(
                                   [&](double s, double d) {
                                       return std::pow(omega.tail(s), p - 1.0) *
                                              omega.density(s, d) * s;
                                   },
                                   lo, hi, tol);
                    }
                    if (lhs == 0.0 && rhs == 0.0) continue;
                    const double ratio = ext_div(lhs, rhs);
                    if (is_inf(ratio)) all_finite = false;
                    c1 = std::max(c1, ratio);
                }
                for (double q : {1.0, 2.0}) {
                    // exact \int h^q tail^{q-1} omega dt via tail^q/q
                    double lhs = 0.0;
                    for (std::size_t j = 0; j < h.size(); ++j) {
                        const auto [lo, hi] = seg(j, r);
                        if (hi <= lo || h[j] == 0.0) continue;
                        const double tq_lo = std::pow(omega.tail(lo), q);
                        const double tq_hi =
                            hi < 1.0 ? std::pow(omega.tail(hi), q) : 0.0;
                        lhs += std::pow(h[j], q) * (tq_lo - tq_hi) / q;
                    }
                    double base = 0.0;
                    for (std::size_t j = 0; j < h.size(); ++j) {
                        const auto [lo, hi] = seg(j, r);
                        if (hi <= lo || hstar[j] == 0.0) continue;
                        base += hstar[j] *
                                integrate_to(
                                    [&](double s, double d) {
                                        return omega.density(s, d) * s;
                                    },
                                    lo, hi, tol);
                    }
                    const double rhs = std::pow(base, q);
                    if (lhs == 0.0 && rhs == 0.0) continue;
                    const double ratio = ext_div(lhs, rhs);
                    if (is_inf(ratio)) all_finite = false;
                    c2 = std::max(c2, ratio);
                }
            }
        }
    }
    const double drift1 = std::abs(C1 - C1r) / std::max(C1, 1e-300);
    const double drift2 = std::abs(C2 - C2r) / std::max(C2, 1e-300);
    res.pass = all_finite && drift1 < 0.2 && drift2 < 0.2 && C1 > 0.0 && C2 > 0.0;
    res.detail = "C1=" + fmt(C1) + " (drift " + fmt(drift1) + "), C2=" +
                 fmt(C2) + " (drift " + fmt(drift2) + ")";
    return res;
}

} // namespace

std::vector<CheckResult> run_acceptance(const std::vector<int>& which) {
    using Fn = CheckResult (*)();
    const Fn fns[9] = {check_fubini_identity,
                       check_constants_fixed_point,
                       check_self_improvement,
                       check_derived_rates,
                       check_weak_pipeline_identity,
                       check_strong_bracket,
                       check_verdict_equivalences,
                       check_mean_lower_bound_stability,
                       check_radial_maximal_inequalities};
    std::vector<CheckResult> out;
    for (int id = 1; id <= 9; ++id) {
        if (!which.empty() &&
            std::find(which.begin(), which.end(), id) == which.end())
            continue;
        const auto start = std::chrono::steady_clock::now();
        CheckResult r = fns[id - 1]();
        r.seconds = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace radavg
