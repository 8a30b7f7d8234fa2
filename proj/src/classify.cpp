#include "radavg/classify.hpp"
#include "radavg/ext_real.hpp"
#include "radavg/profile.hpp"

#include <algorithm>
#include <cmath>

namespace radavg {

std::string to_string(WeightClass c) {
    switch (c) {
        case WeightClass::Dhat: return "Dhat";
        case WeightClass::Dcheck: return "Dcheck";
        case WeightClass::Regular: return "Regular";
    }
    return "?";
}

std::string to_string(Membership m) {
    switch (m) {
        case Membership::Member: return "Member";
        case Membership::NotMember: return "NotMember";
        case Membership::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

constexpr double kStabilityTol = 1e-3; // 0.1% over the last 8 levels
constexpr double kTrendR2 = 0.99;
constexpr double kDcheckFloor = 1.05;

std::string protocol_string(int J) {
    return "dyadic-probe-v1 (levels 1.." + std::to_string(J) +
           ", stability window 8 at 0.1%, asymptote/trend fit R2>0.99, "
           "Dcheck floor 1.05)";
}

struct RatioSeries {
    std::vector<double> level;  // j
    std::vector<double> ratio;  // per-level ratio at r = 1 - 2^{-j}
    double sup = 0.0;
    double inf = kInf;
};

// Ratios probed at the band edges r = 1-2^{-j}, j = 1..J. These radii do
// not depend on points_per_level, so reports are refinement-stable.
RatioSeries probe_levels(const std::function<double(double)>& ratio_at, int J) {
    RatioSeries s;
    for (int j = 1; j <= J; ++j) {
        const double r = 1.0 - std::ldexp(1.0, -j);
        const double v = ratio_at(r);
        s.level.push_back(static_cast<double>(j));
        s.ratio.push_back(v);
        s.sup = std::max(s.sup, v);
        s.inf = std::min(s.inf, v);
    }
    return s;
}

struct TrendInfo {
    bool stabilized_sup = false;
    bool stabilized_inf = false;
    bool asymptote_ok = false; // 1/j fit succeeded
    double limit = 0.0;
    double r2 = 0.0;
    bool monotone_up = true;
    bool monotone_down = true;
};

TrendInfo analyze(const RatioSeries& s) {
    TrendInfo t;
    const std::size_t n = s.ratio.size();
    // Running extremum stability over the last 8 levels.
    std::vector<double> run_max(n), run_min(n);
    double mx = -kInf, mn = kInf;
    for (std::size_t i = 0; i < n; ++i) {
        mx = std::max(mx, s.ratio[i]);
        mn = std::min(mn, s.ratio[i]);
        run_max[i] = mx;
        run_min[i] = mn;
    }
    const std::size_t w = std::min<std::size_t>(8, n > 1 ? n - 1 : 0);
    if (n >= 2) {
        const double newer = run_max[n - 1], older = run_max[n - 1 - w];
        t.stabilized_sup =
            (newer - older) <= kStabilityTol * std::max(std::abs(newer), 1e-300);
        const double newer2 = run_min[n - 1], older2 = run_min[n - 1 - w];
        t.stabilized_inf =
            (older2 - newer2) <= kStabilityTol * std::max(std::abs(newer2), 1e-300);
    }
    // Asymptote model ratio ~ limit + c/j on the last 2/3 of levels.
    std::vector<double> xs, ys;
    for (std::size_t i = n / 3; i < n; ++i) {
        if (!std::isfinite(s.ratio[i])) return t;
        xs.push_back(1.0 / s.level[i]);
        ys.push_back(s.ratio[i]);
    }
    const LineFit f = fit_line(xs, ys);
    t.limit = f.intercept;
    t.r2 = f.r2;
    t.asymptote_ok = f.r2 > kTrendR2 || std::abs(f.slope) < 1e-9;
    for (std::size_t i = n / 3; i + 1 < n; ++i) {
        if (s.ratio[i + 1] < s.ratio[i] * (1.0 - 1e-12)) t.monotone_up = false;
        if (s.ratio[i + 1] > s.ratio[i] * (1.0 + 1e-12)) t.monotone_down = false;
    }
    return t;
}

} // namespace

DoublingReport classify_dhat(const RadialWeight& w, const RadialGrid& grid) {
    DoublingReport rep;
    rep.class_tested = WeightClass::Dhat;
    rep.protocol = protocol_string(grid.levels);
    rep.max_probe_r = 1.0 - std::ldexp(1.0, -grid.levels);
    auto ratio_at = [&w](double r) {
        return ext_div(w.tail(r), w.tail(0.5 * (1.0 + r)));
    };
    const RatioSeries s = probe_levels(ratio_at, grid.levels);
    rep.ratio_sup = s.sup;
    rep.ratio_inf = s.inf;
    const TrendInfo t = analyze(s);
    rep.trend_limit = t.limit;
    rep.trend_r2 = t.r2;
    if (!std::isfinite(s.sup)) {
        rep.verdict = Membership::NotMember;
        rep.C_estimate = kInf;
        rep.note = "tail ratio unbounded on probe grid";
        return rep;
    }
    rep.C_estimate = std::max(1.0, s.sup);
    if (t.stabilized_sup) {
        rep.verdict = Membership::Member;
        return rep;
    }
    if (t.asymptote_ok && t.limit > 0.0) {
        rep.verdict = Membership::Member;
        rep.C_estimate = std::max(rep.C_estimate, t.limit);
        rep.note = "ratio drifting toward finite limit (asymptote fit)";
        return rep;
    }
    if (t.monotone_up) {
        rep.verdict = Membership::NotMember;
        rep.note = "ratio grows monotonically without a fitted finite limit";
        return rep;
    }
    rep.verdict = Membership::Inconclusive;
    return rep;
}

DoublingReport classify_dcheck(const RadialWeight& w, double K,
                               const RadialGrid& grid) {
    if (!(K > 1.0)) throw std::domain_error("classify_dcheck: need K > 1");
    DoublingReport rep;
    rep.class_tested = WeightClass::Dcheck;
    rep.K = K;
    rep.protocol = protocol_string(grid.levels);
    rep.max_probe_r = 1.0 - std::ldexp(1.0, -grid.levels);
    auto ratio_at = [&w, K](double r) {
        return ext_div(w.tail(r), w.tail(1.0 - (1.0 - r) / K));
    };
    const RatioSeries s = probe_levels(ratio_at, grid.levels);
    rep.ratio_sup = s.sup;
    rep.ratio_inf = s.inf;
    const TrendInfo t = analyze(s);
    rep.trend_limit = t.limit;
    rep.trend_r2 = t.r2;
    rep.C_estimate = std::max(1.0, s.inf);
    if (t.stabilized_inf && s.inf >= kDcheckFloor) {
        rep.verdict = Membership::Member;
        return rep;
    }
    if (t.asymptote_ok) {
        if (t.limit >= kDcheckFloor && s.inf >= kDcheckFloor) {
            rep.verdict = Membership::Member;
            rep.C_estimate = std::max(1.0, std::min(s.inf, t.limit));
        } else {
            rep.verdict = Membership::NotMember;
            rep.note = "ratio limit below the certification floor";
        }
        return rep;
    }
    if (t.monotone_down && s.ratio.back() < kDcheckFloor) {
        rep.verdict = Membership::NotMember;
        rep.note = "ratio decays monotonically toward 1";
        return rep;
    }
    rep.verdict = Membership::Inconclusive;
    return rep;
}

DoublingReport classify_regular(const RadialWeight& w, const RadialGrid& grid) {
    DoublingReport rep;
    rep.class_tested = WeightClass::Regular;
    rep.protocol = protocol_string(grid.levels) + " + inner-band probes";
    rep.max_probe_r = grid.max_node();
    // Comparability is pointwise on all of [0,1): probe the full grid.
    double sup = 0.0, inf = kInf;
    for (double r : grid.nodes) {
        const double den = w(r) * (1.0 - r);
        if (den <= 0.0) {
            rep.verdict = Membership::NotMember;
            rep.note = "density vanishes at r=" + std::to_string(r) +
                       " while the tail is positive";
            rep.ratio_inf = 0.0;
            rep.C_estimate = kInf;
            return rep;
        }
        const double v = w.tail(r) / den;
        sup = std::max(sup, v);
        inf = std::min(inf, v);
    }
    rep.ratio_sup = sup;
    rep.ratio_inf = inf;
    // Trend analysis on the dyadic levels only.
    auto ratio_at = [&w](double r) {
        return ext_div(w.tail(r), w(r) * (1.0 - r));
    };
    const RatioSeries s = probe_levels(ratio_at, grid.levels);
    const TrendInfo t = analyze(s);
    rep.trend_limit = t.limit;
    rep.trend_r2 = t.r2;
    rep.C_estimate = std::max({1.0, sup, inf > 0.0 ? 1.0 / inf : kInf});
    if (!std::isfinite(sup)) {
        rep.verdict = Membership::NotMember;
        rep.note = "comparability ratio unbounded";
        return rep;
    }
    const bool tail_ok =
        t.stabilized_sup && t.stabilized_inf;
    if (tail_ok || (t.asymptote_ok && t.limit > 0.0 && std::isfinite(t.limit))) {
        rep.verdict = Membership::Member;
        return rep;
    }
    if (t.monotone_up) {
        rep.verdict = Membership::NotMember;
        rep.note = "ratio grows without a fitted finite limit";
        return rep;
    }
    if (t.monotone_down && s.ratio.back() <= 1e-3 * inf) {
        rep.verdict = Membership::NotMember;
        rep.note = "ratio decays toward 0";
        return rep;
    }
    rep.verdict = Membership::Inconclusive;
    return rep;
}

bool is_member_both(const RadialWeight& w, const RadialGrid& grid,
                    const std::vector<double>& Ks) {
    if (classify_dhat(w, grid).verdict != Membership::Member) return false;
    for (double K : Ks)
        if (classify_dcheck(w, K, grid).verdict == Membership::Member) return true;
    return false;
}

std::vector<double> rho_sequence(const RadialWeight& w, double K, double r,
                                 int n_max) {
    if (!(K > 1.0)) throw std::domain_error("rho_sequence: need K > 1");
    if (!(r >= 0.0 && r < 1.0)) throw std::domain_error("rho_sequence: r in [0,1)");
    if (n_max < 0) throw std::domain_error("rho_sequence: n_max must be >= 0");
    std::vector<double> rho{r};
    double target = w.tail(r);
    for (int n = 1; n <= n_max; ++n) {
        target /= K;
        rho.push_back(tail_level_radius(w, target, 1e-12));
    }
    return rho;
}

} // namespace radavg
