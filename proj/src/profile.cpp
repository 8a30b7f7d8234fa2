#include "radavg/profile.hpp"
#include "radavg/ext_real.hpp"

#include <algorithm>
#include <cmath>

namespace radavg {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Bounded: return "Bounded";
        case Verdict::DivergesLog: return "DivergesLog";
        case Verdict::DivergesPower: return "DivergesPower";
        case Verdict::DivergesOther: return "DivergesOther";
        case Verdict::Infinite: return "Infinite";
    }
    return "?";
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    LineFit f;
    const std::size_t n = x.size();
    if (n < 2) return f;
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0) return f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = (syy > 0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

namespace {

// Per-level supremum series: running sup over nodes with r <= 1-2^{-j}.
// Band edges are grid nodes and stay fixed when points_per_level changes,
// so the series (and the fitted rates) are refinement-stable.
std::vector<double> level_sups(const ConditionProfile& p, int grid_levels) {
    std::vector<double> s(static_cast<std::size_t>(grid_levels) + 1, 0.0);
    double run = 0.0;
    std::size_t i = 0;
    for (int j = 0; j <= grid_levels; ++j) {
        const double edge = 1.0 - std::ldexp(1.0, -j);
        while (i < p.nodes.size() && p.nodes[i] <= edge) {
            run = std::max(run, p.values[i]);
            ++i;
        }
        s[static_cast<std::size_t>(j)] = run;
    }
    return s;
}

} // namespace

void classify_profile(ConditionProfile& p, int grid_levels) {
    // Running supremum over nodes.
    p.running_sup.resize(p.values.size());
    double run = 0.0;
    bool any_inf = false;
    for (std::size_t i = 0; i < p.values.size(); ++i) {
        run = std::max(run, p.values[i]);
        p.running_sup[i] = run;
        if (is_inf(p.values[i])) any_inf = true;
    }
    p.sup_estimate = run;
    if (any_inf) {
        p.verdict = Verdict::Infinite;
        p.fit_quality = 1.0;
        return;
    }

    const std::vector<double> s = level_sups(p, grid_levels);
    const int J = grid_levels;

    // Stability window: < 0.1% relative change over the last 8 levels.
    const int window = std::min(8, J - 1);
    const double tail_new = s[static_cast<std::size_t>(J)];
    const double tail_old = s[static_cast<std::size_t>(J - window)];
    if (tail_new <= 0.0 ||
        (tail_new - tail_old) < 1e-3 * std::max(tail_new, 1e-300)) {
        p.verdict = Verdict::Bounded;
        p.fit_quality = 1.0;
        return;
    }

    // Growth-model fits over the last 60% of levels.
    const int j_lo = std::max(2, (2 * J) / 5);
    std::vector<double> js, lin, lg, llg, inv;
    for (int j = j_lo; j <= J; ++j) {
        const double v = s[static_cast<std::size_t>(j)];
        if (v <= 0.0) continue;
        js.push_back(static_cast<double>(j));
        lin.push_back(v);
        lg.push_back(std::log(v));
        llg.push_back(std::log(static_cast<double>(j)));
        inv.push_back(1.0 / static_cast<double>(j));
    }
    if (js.size() < 4) {
        p.verdict = Verdict::DivergesOther;
        p.fit_quality = 0.0;
        return;
    }

    // Quasi-stabilized: negligible growth across the whole fit window.
    if (tail_new - lin.front() < 5e-3 * tail_new) {
        p.verdict = Verdict::Bounded;
        p.fit_quality = 1.0;
        return;
    }
    // Drift toward a finite limit: sup ~ c0 + c1/j with small remaining
    // growth classifies as bounded with the extrapolated supremum.
    const LineFit f_asym = fit_line(inv, lin);
    if (f_asym.r2 > 0.995 && f_asym.slope < 0.0 &&
        f_asym.intercept >= tail_new &&
        f_asym.intercept - tail_new < 0.05 * f_asym.intercept) {
        p.verdict = Verdict::Bounded;
        p.sup_estimate = f_asym.intercept;
        p.fit_quality = std::clamp(f_asym.r2, 0.0, 1.0);
        return;
    }

    const LineFit f_lin = fit_line(js, lin);             // sup ~ c + rate * j
    const LineFit f_exp = fit_line(js, lg);              // log sup ~ beta log2 * j
    const LineFit f_pow = fit_line(llg, lg);             // log sup ~ alpha log j

    p.level_power_alpha = f_pow.slope;
    p.level_power_r2 = std::clamp(f_pow.r2, 0.0, 1.0);

    const double r_lin = f_lin.r2, r_exp = f_exp.r2, r_pow = f_pow.r2;
    const double best = std::max({r_lin, r_exp, r_pow});
    if (best > 0.98) {
        // Near-ties go to the simpler growth model.
        if (r_lin >= best - 1e-9) {
            p.verdict = Verdict::DivergesLog;
            p.rate = f_lin.slope;
            p.fit_quality = std::clamp(r_lin, 0.0, 1.0);
            return;
        }
        if (r_exp >= best - 1e-9) {
            p.verdict = Verdict::DivergesPower;
            p.power = f_exp.slope / std::log(2.0);
            p.fit_quality = std::clamp(r_exp, 0.0, 1.0);
            return;
        }
    }
    p.verdict = Verdict::DivergesOther;
    p.fit_quality = std::clamp(best, 0.0, 1.0);
}

ConditionProfile sup_profile(const std::function<double(double)>& expr,
                             const RadialGrid& grid) {
    ConditionProfile p;
    p.nodes = grid.nodes;
    p.levels = grid.node_level;
    p.values.resize(grid.nodes.size());
    for (std::size_t i = 0; i < grid.nodes.size(); ++i)
        p.values[i] = expr(grid.nodes[i]);
    classify_profile(p, grid.levels);
    return p;
}

} // namespace radavg
