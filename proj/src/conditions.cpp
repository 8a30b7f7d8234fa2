#include "radavg/conditions.hpp"
#include "radavg/averaging.hpp"
#include "radavg/classify.hpp"
#include "radavg/ext_real.hpp"
#include "radavg/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace radavg {

namespace {

std::vector<double> merged_breaks(const RadialWeight& a, const RadialWeight& b) {
    std::vector<double> out = a.breakpoints();
    auto bb = b.breakpoints();
    out.insert(out.end(), bb.begin(), bb.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Prefix integrals \int_0^{r_i} g over the grid nodes (node 0 is r = 0).
std::vector<double> prefix_integrals(const Integrand& g,
                                     const std::vector<double>& nodes,
                                     const std::vector<double>& breaks,
                                     double rel_tol = 1e-9) {
    std::vector<double> out(nodes.size(), 0.0);
    double acc = 0.0;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (!is_inf(acc)) {
            const double seg = integrate_finite_split(g, nodes[i - 1], nodes[i],
                                                      breaks, rel_tol);
            acc = is_inf(seg) ? kInf : acc + seg;
        }
        out[i] = acc;
    }
    return out;
}

// Suffix integrals \int_{r_i}^1 g over the grid nodes.
std::vector<double> suffix_integrals(const Integrand& g,
                                     const std::vector<double>& nodes,
                                     const std::vector<double>& breaks,
                                     double rel_tol = 1e-9) {
    std::vector<double> out(nodes.size(), 0.0);
    const std::size_t n = nodes.size();
    double acc = integrate_improper(g, nodes[n - 1], rel_tol);
    out[n - 1] = acc;
    for (std::size_t i = n - 1; i-- > 0;) {
        if (!is_inf(acc)) {
            const double seg = integrate_finite_split(g, nodes[i], nodes[i + 1],
                                                      breaks, rel_tol);
            acc = is_inf(seg) ? kInf : acc + seg;
        }
        out[i] = acc;
    }
    return out;
}

ConditionProfile make_profile(const RadialGrid& grid,
                              std::vector<double> values) {
    ConditionProfile p;
    p.nodes = grid.nodes;
    p.levels = grid.node_level;
    p.values = std::move(values);
    classify_profile(p, grid.levels);
    return p;
}

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  int iters = 24) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

} // namespace

double mp_value(const RadialWeight& omega, const RadialWeight& nu,
                const RadialWeight& eta, double p, double r) {
    if (!(p > 1.0)) throw std::domain_error("mp_value: need p > 1");
    const double pp = p / (p - 1.0);
    const double I = dual_tail_integral(omega, nu, p, r);
    const double J = integrate_finite(
        [&](double s, double d) {
            const double den = ext_mul(s, eta.density(s, d));
            if (den == 0.0) return 0.0;
            return den / std::pow(omega.tail(s), p);
        },
        0.0, r, 1e-9);
    return ext_mul(ext_pow(I, 1.0 / pp), ext_pow(J, 1.0 / p));
}

ConditionProfile mp_profile(const RadialWeight& omega, const RadialWeight& nu,
                            const RadialWeight& eta, double p,
                            const RadialGrid& grid) {
    if (!(p > 1.0)) throw std::domain_error("mp_profile: need p > 1");
    const double pp = p / (p - 1.0);
    const auto breaks = merged_breaks(omega, nu);
    const auto ebreaks = merged_breaks(omega, eta);
    const std::vector<double> I =
        suffix_integrals(dual_integrand(omega, nu, p), grid.nodes, breaks);
    const std::vector<double> J = prefix_integrals(
        [&](double s, double d) {
            const double den = ext_mul(s, eta.density(s, d));
            if (den == 0.0) return 0.0;
            return den / std::pow(omega.tail(s), p);
        },
        grid.nodes, ebreaks);
    std::vector<double> vals(grid.nodes.size());
    for (std::size_t i = 0; i < vals.size(); ++i)
        vals[i] = ext_mul(ext_pow(I[i], 1.0 / pp), ext_pow(J[i], 1.0 / p));
    return make_profile(grid, std::move(vals));
}

namespace {

// Shared core of dp_profile and the first necessary-condition profile:
//   tail(r)^q / ((1-r)^{q/p-1} (\int_r^1 s nu)^{q/p}) \int_0^r t eta/tail^q.
std::vector<double> tail_ratio_values(const RadialWeight& omega,
                                      const RadialWeight& nu,
                                      const RadialWeight& eta, double pw_q,
                                      double ratio_qp, const RadialGrid& grid) {
    const auto ebreaks = merged_breaks(omega, eta);
    const std::vector<double> P = prefix_integrals(
        [&](double s, double d) {
            const double den = ext_mul(s, eta.density(s, d));
            if (den == 0.0) return 0.0;
            return den / std::pow(omega.tail(s), pw_q);
        },
        grid.nodes, ebreaks);
    std::vector<double> vals(grid.nodes.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const double r = grid.nodes[i];
        const double d = 1.0 - r; // grid nodes are dyadic; exact
        const double S = nu.area_tail(r);
        const double pre = ext_div(
            std::pow(omega.tail(r), pw_q),
            std::pow(d, ratio_qp - 1.0) * ext_pow(S, ratio_qp));
        vals[i] = ext_mul(pre, P[i]);
    }
    return vals;
}

} // namespace

double dp_value(const RadialWeight& omega, const RadialWeight& nu, double p,
                double r) {
    if (!(p > 0.0)) throw std::domain_error("dp_value: need p > 0");
    const double P = integrate_finite(
        [&](double s, double d) {
            const double den = ext_mul(s, nu.density(s, d));
            if (den == 0.0) return 0.0;
            return den / std::pow(omega.tail(s), p);
        },
        0.0, r, 1e-9);
    return ext_mul(ext_div(std::pow(omega.tail(r), p), nu.area_tail(r)), P);
}

ConditionProfile dp_profile(const RadialWeight& omega, const RadialWeight& nu,
                            double p, const RadialGrid& grid) {
    if (!(p > 0.0)) throw std::domain_error("dp_profile: need p > 0");
    return make_profile(grid, tail_ratio_values(omega, nu, nu, p, 1.0, grid));
}

double dp_sup(const RadialWeight& omega, const RadialWeight& nu, double p,
              const RadialGrid& grid) {
    const ConditionProfile prof = dp_profile(omega, nu, p, grid);
    return prof.running_sup.back();
}

double np_value(const RadialWeight& omega, const RadialWeight& nu,
                const RadialWeight& eta, double p, double t, double r) {
    if (!(p > 1.0)) throw std::domain_error("np_value: need p > 1");
    if (!(0.0 <= t && t < r && r < 1.0))
        throw std::domain_error("np_value: need 0 <= t < r < 1");
    const double pp = p / (p - 1.0);
    const double A = eta.area_tail(t) - eta.area_tail(r);
    const double I = dual_tail_integral(omega, nu, p, r);
    return ext_mul(ext_pow(ext_div(A, std::pow(omega.tail(t), p)), 1.0 / p),
                   ext_pow(I, 1.0 / pp));
}

NpProfile np_profile(const RadialWeight& omega, const RadialWeight& nu,
                     const RadialWeight& eta, double p,
                     const RadialGrid& grid) {
    if (!(p > 1.0)) throw std::domain_error("np_profile: need p > 1");
    const double pp = p / (p - 1.0);
    const auto breaks = merged_breaks(omega, nu);
    const std::vector<double> I =
        suffix_integrals(dual_integrand(omega, nu, p), grid.nodes, breaks);
    const std::size_t n = grid.nodes.size();
    // Cumulative \int_0^{r_i} s eta ds, exact through the area tails.
    std::vector<double> E(n), wpow(n);
    const double eta_total = eta.is_zero() ? 0.0 : eta.area_tail(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        E[i] = eta_total - (eta.is_zero() ? 0.0 : eta.area_tail(grid.nodes[i]));
        wpow[i] = std::pow(omega.tail(grid.nodes[i]), p);
    }
    NpProfile out;
    std::vector<double> vals(n, 0.0), arg_t(n, 0.0);
    std::size_t best_i = 0, best_j = 1;
    for (std::size_t j = 1; j < n; ++j) {
        const double Ifac = ext_pow(I[j], 1.0 / pp);
        double best = 0.0;
        std::size_t bi = 0;
        for (std::size_t i = 0; i < j; ++i) {
            const double v = ext_mul(
                ext_pow(ext_div(E[j] - E[i], wpow[i]), 1.0 / p), Ifac);
            if (v > best) {
                best = v;
                bi = i;
            }
        }
        vals[j] = best;
        arg_t[j] = grid.nodes[bi];
        if (best > vals[best_j] || is_inf(best)) {
            best_j = j;
            best_i = bi;
        }
    }
    out.best_t = grid.nodes[best_i];
    out.best_r = grid.nodes[best_j];
    out.best_value = vals[best_j];
    // One local golden-section pass in each variable around the grid
    // maximizer (skipped when the value is already infinite).
    if (!is_inf(out.best_value) && out.best_value > 0.0) {
        const double t_lo = best_i > 0 ? grid.nodes[best_i - 1] : 0.0;
        const double t_hi =
            grid.nodes[std::min(best_i + 1, best_j)] * (1.0 - 1e-12);
        const double refined_t = golden_max(
            [&](double t) {
                return t < out.best_r ? np_value(omega, nu, eta, p, t, out.best_r)
                                      : 0.0;
            },
            t_lo, std::min(t_hi, out.best_r * (1.0 - 1e-9)));
        const double r_lo = std::max(grid.nodes[best_j - 1], out.best_t * (1.0 + 1e-12));
        const double r_hi = best_j + 1 < n ? grid.nodes[best_j + 1] : grid.nodes[n - 1];
        const double refined_r = golden_max(
            [&](double r) {
                return r > out.best_t ? np_value(omega, nu, eta, p, out.best_t, r)
                                      : 0.0;
            },
            r_lo, r_hi);
        out.best_value = std::max({out.best_value, refined_t, refined_r});
    }
    out.profile = make_profile(grid, std::move(vals));
    out.profile.aux = std::move(arg_t);
    out.profile.sup_estimate =
        std::max(out.profile.sup_estimate, out.best_value);
    return out;
}

ConditionProfile mp_eps_profile(const RadialWeight& omega,
                                const RadialWeight& nu,
                                const RadialWeight& eta, double p, double eps,
                                const RadialGrid& grid) {
    if (!(p > 1.0)) throw std::domain_error("mp_eps_profile: need p > 1");
    if (!(eps > 0.0)) throw std::domain_error("mp_eps_profile: need eps > 0");
    const double pp = p / (p - 1.0);
    const auto breaks = merged_breaks(omega, nu);
    const auto ebreaks = merged_breaks(omega, eta);
    const std::vector<double> I =
        suffix_integrals(dual_integrand(omega, nu, p), grid.nodes, breaks);
    const std::vector<double> J = prefix_integrals(
        [&](double s, double d) {
            const double den = ext_mul(s, eta.density(s, d));
            if (den == 0.0) return 0.0;
            return den / std::pow(omega.tail(s), p + eps);
        },
        grid.nodes, ebreaks);
    std::vector<double> vals(grid.nodes.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const double we = std::pow(omega.tail(grid.nodes[i]), eps);
        vals[i] = ext_mul(ext_pow(ext_mul(we, J[i]), 1.0 / p),
                          ext_pow(I[i], 1.0 / pp));
    }
    return make_profile(grid, std::move(vals));
}

double carleson_identity_residual(const RadialWeight& omega,
                                  const RadialWeight& nu, double p, double a) {
    if (!(p > 0.0))
        throw std::domain_error("carleson_identity_residual: need p > 0");
    const auto breaks = merged_breaks(omega, nu);
    const Integrand inner_integrand = [&](double s, double d) {
        const double den = ext_mul(s, nu.density(s, d));
        if (den == 0.0) return 0.0;
        return den / std::pow(omega.tail(s), p);
    };
    const double Ca =
        integrate_finite_split(inner_integrand, 0.0, a, breaks, 1e-11);
    // LHS swept over dyadic bands toward the boundary with the inner
    // prefix accumulated along the same nodes (16-point Gauss per band).
    static const double kX[8] = {
        0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
        0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
        0.9445750230732326, 0.9894009349916499};
    static const double kW[8] = {
        0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
        0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
        0.0622535239386479, 0.0271524594117541};
    double lhs = 0.0;
    double C = Ca;
    double prev = a;
    double gap = 1.0 - a;
    for (int band = 0; band < 50 && gap > 1e-14; ++band) {
        const double lo = 1.0 - gap;
        const double hi = 1.0 - 0.5 * gap;
        double nodes[16], wts[16];
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (int i = 0; i < 8; ++i) {
            nodes[2 * i] = mid - half * kX[7 - i];
            nodes[2 * i + 1] = mid + half * kX[i];
            wts[2 * i] = half * kW[7 - i];
            wts[2 * i + 1] = half * kW[i];
        }
        std::sort(nodes, nodes + 16);
        for (int i = 0; i < 16; ++i) {
            const double t = nodes[i];
            if (t >= 1.0 - 1e-15) continue;
            C += integrate_finite_split(inner_integrand, prev, t, breaks, 1e-11);
            prev = t;
            const double w = omega.density(t, 1.0 - t);
            if (w > 0.0 && std::isfinite(w))
                lhs += wts[i] * std::pow(omega.tail(t), p - 1.0) * w * C;
        }
        gap *= 0.5;
    }
    const double rhs =
        std::pow(omega.tail(a), p) / p * Ca + nu.area_tail(a) / p;
    return std::abs(lhs - rhs) / rhs;
}

double carleson_ratio(const RadialWeight& omega, const RadialWeight& nu,
                      double p, double a) {
    if (!(p > 0.0)) throw std::domain_error("carleson_ratio: need p > 0");
    return (dp_value(omega, nu, p, a) + 1.0) / p;
}

SelfImproveReport self_improve_check(const RadialWeight& omega,
                                     const RadialWeight& nu, double p,
                                     double eps, const RadialGrid& grid) {
    SelfImproveReport rep;
    rep.eps = eps;
    const ConditionProfile base = dp_profile(omega, nu, p, grid);
    if (base.verdict != Verdict::Bounded)
        throw std::domain_error(
            "self_improve_check: the base condition must be bounded");
    rep.dp = base.running_sup.back();
    const double eps_max = p / (rep.dp + 1.0);
    if (!(eps > 0.0 && eps < eps_max))
        throw std::domain_error(
            "self_improve_check: eps outside the admissible interval (0, p/(D_p+1))");
    rep.dp_minus_eps = dp_sup(omega, nu, p - eps, grid);
    rep.upper_factor = p / (p - eps * (1.0 + rep.dp));
    const double slack = 1.01;
    rep.sandwich_ok = rep.dp <= rep.dp_minus_eps * slack &&
                      rep.dp_minus_eps <= rep.upper_factor * rep.dp * slack;
    return rep;
}

NecessaryPair necessary_pq(const RadialWeight& omega, const RadialWeight& nu,
                           const RadialWeight& eta, double p, double q,
                           const RadialGrid& grid) {
    if (!(p > 0.0 && q >= p))
        throw std::domain_error("necessary_pq: need 0 < p <= q");
    NecessaryPair out;
    const double qp = q / p;
    out.first =
        make_profile(grid, tail_ratio_values(omega, nu, eta, q, qp, grid));
    std::vector<double> second(grid.nodes.size());
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        const double r = grid.nodes[i];
        const double d = 1.0 - r;
        second[i] = ext_div(eta.area_tail(r),
                            std::pow(d, qp - 1.0) *
                                ext_pow(nu.area_tail(r), qp));
    }
    out.second = make_profile(grid, std::move(second));

    // Implication diagnostic: with upper-doubling omega and tail-decaying
    // eta, the prefix integral of t eta / tail^q dominates
    // tail_eta(r) / tail_omega(r)^q from r = 1/2 on.
    const bool omega_ok =
        classify_dhat(omega, grid).verdict == Membership::Member;
    bool eta_ok = false;
    if (!eta.is_zero())
        for (double K : {2.0, 4.0, 8.0})
            if (classify_dcheck(eta, K, grid).verdict == Membership::Member) {
                eta_ok = true;
                break;
            }
    if (omega_ok && eta_ok) {
        out.implication_checked = true;
        const auto ebreaks = merged_breaks(omega, eta);
        const std::vector<double> P = prefix_integrals(
            [&](double s, double d) {
                const double den = ext_mul(s, eta.density(s, d));
                if (den == 0.0) return 0.0;
                return den / std::pow(omega.tail(s), q);
            },
            grid.nodes, ebreaks);
        double worst = kInf;
        for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
            const double r = grid.nodes[i];
            if (r < 0.5) continue;
            const double bound = eta.tail(r) / std::pow(omega.tail(r), q);
            worst = std::min(worst, ext_div(P[i], bound));
        }
        out.implication_min_ratio = worst;
    }
    return out;
}

} // namespace radavg
