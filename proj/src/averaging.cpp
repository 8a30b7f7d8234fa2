#include "radavg/averaging.hpp"
#include "radavg/ext_real.hpp"
#include "radavg/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace radavg {

std::function<double(double, double)> dual_integrand(const RadialWeight& omega,
                                                     const RadialWeight& nu,
                                                     double p) {
    const double pp = p / (p - 1.0);
    return [&omega, &nu, pp](double s, double d) {
        const double w = omega.density(s, d);
        if (w == 0.0) return 0.0;
        const double m = ext_mul(s, nu.density(s, d));
        if (m == 0.0) return kInf;
        if (is_inf(w)) return kInf;
        // w^{p'} m^{1-p'} in log space; the direct pow overflows long
        // before the product does.
        return std::exp(pp * std::log(w) + (1.0 - pp) * std::log(m));
    };
}

double dual_tail_integral(const RadialWeight& omega, const RadialWeight& nu,
                          double p, double r, double rel_tol) {
    if (!(p > 1.0)) throw std::domain_error("dual_tail_integral: need p > 1");
    return integrate_improper(dual_integrand(omega, nu, p), r, rel_tol);
}

double lambda_rt(const RadialWeight& omega, const RadialWeight& nu, double p,
                 double r, double t) {
    if (!(t <= r)) throw std::domain_error("lambda_rt: need t <= r");
    return ext_div(dual_tail_integral(omega, nu, p, r), omega.tail(t));
}

std::complex<double> apply_T_quadrature(const RadialWeight& omega,
                                        const RadialFunctionField& f,
                                        std::complex<double> z,
                                        double rel_tol) {
    const double r = std::abs(z);
    if (!(r > 0.0 && r < 1.0))
        throw std::domain_error("radial average undefined at the origin");
    const double th = std::arg(z);
    const double re = integrate_improper(
        [&](double s, double d) {
            return ext_mul(f.value(s, th).real(), omega.density(s, d));
        },
        r, rel_tol);
    double im = 0.0;
    if (f.kind() == RadialFunctionField::Kind::KernelImage)
        im = integrate_improper(
            [&](double s, double d) {
                return f.value(s, th).imag() * omega.density(s, d);
            },
            r, rel_tol);
    const double tail = omega.tail(r);
    return {ext_div(re, tail), im / tail};
}

std::complex<double> apply_T(const RadialWeight& omega,
                             const RadialFunctionField& f,
                             std::complex<double> z) {
    const double r = std::abs(z);
    if (!(r > 0.0 && r < 1.0))
        throw std::domain_error("radial average undefined at the origin");
    const double th = std::arg(z);
    switch (f.kind()) {
        case RadialFunctionField::Kind::StepFunction: {
            double acc = 0.0;
            for (const auto& rc : f.rects()) {
                if (rc.amplitude == 0.0) continue;
                const double w = rc.th_hi - rc.th_lo;
                double dth = std::fmod(th - rc.th_lo, 2.0 * M_PI);
                if (dth < 0.0) dth += 2.0 * M_PI;
                if (dth > w) continue;
                const double lo = std::max(r, rc.r_lo);
                if (lo >= rc.r_hi) continue;
                acc += rc.amplitude * (omega.tail(lo) - omega.tail(rc.r_hi));
            }
            return {acc / omega.tail(r), 0.0};
        }
        case RadialFunctionField::Kind::ExtremalFr: {
            // When the averaging weight matches the field's source weight
            // the ray integral collapses to the dual tail integral.
            if (omega.to_config() == f.extremal_omega().to_config()) {
                const double lo = std::max(r, f.extremal_r());
                const double I = dual_tail_integral(
                    f.extremal_omega(), f.extremal_nu(), f.extremal_p(), lo);
                return {ext_div(I, omega.tail(r)), 0.0};
            }
            return apply_T_quadrature(omega, f, z, 1e-10);
        }
        case RadialFunctionField::Kind::KernelImage:
        case RadialFunctionField::Kind::Sampled:
            return apply_T_quadrature(omega, f, z, 1e-10);
    }
    return {0.0, 0.0};
}

double nontangential_max(const RadialFunctionField& f, std::complex<double> z,
                         int samples) {
    const double r = std::abs(z);
    if (!(r > 0.0 && r <= 1.0))
        throw std::domain_error("nontangential_max: need 0 < |z| <= 1");
    if (samples < 4) samples = 4;
    const double th0 = std::arg(z);
    const int n_rad = samples;
    const int n_ang = samples + 1;

    auto aperture = [r](double rho) { return 0.5 * (1.0 - rho / r); };
    auto probe = [&](double rho, double dth) {
        return f.magnitude(rho, th0 + dth);
    };

    // Initial sweep: radii geometric toward |z|, angles across the
    // aperture at each radius.
    double best = probe(0.0, 0.0);
    double best_rho = 0.0, best_dth = 0.0;
    const double q = std::exp(std::log(1e-6) / n_rad);
    for (int i = 0; i <= n_rad; ++i) {
        const double rho = std::min(r * (1.0 - std::pow(q, i)), 1.0 - 1e-15);
        const double ap = aperture(rho) * (1.0 - 1e-9);
        for (int j = 0; j < n_ang; ++j) {
            const double dth =
                ap * (2.0 * j / (n_ang - 1.0) - 1.0);
            const double v = probe(rho, dth);
            if (v > best) {
                best = v;
                best_rho = rho;
                best_dth = dth;
            }
        }
    }
    // Local refinement around the maximizer.
    double rho_win = r * 0.25, dth_win = 0.25;
    for (int pass = 0; pass < 6; ++pass) {
        const double prev = best;
        for (int i = 0; i <= n_rad; ++i) {
            const double rho = std::clamp(
                best_rho + rho_win * (2.0 * i / n_rad - 1.0), 0.0,
                std::min(r * (1.0 - 1e-12), 1.0 - 1e-15));
            const double ap = aperture(rho) * (1.0 - 1e-9);
            for (int j = 0; j < n_ang; ++j) {
                const double dth = std::clamp(
                    best_dth + dth_win * (2.0 * j / (n_ang - 1.0) - 1.0), -ap,
                    ap);
                const double v = probe(rho, dth);
                if (v > best) {
                    best = v;
                    best_rho = rho;
                    best_dth = dth;
                }
            }
        }
        rho_win *= 0.25;
        dth_win *= 0.25;
        if (pass >= 1 && best <= prev * (1.0 + 1e-3)) break;
    }
    return best;
}

double apply_TN(const RadialWeight& omega, const RadialFunctionField& f,
                std::complex<double> z, int samples) {
    const double r = std::abs(z);
    if (!(r > 0.0 && r < 1.0))
        throw std::domain_error("radial average undefined at the origin");
    const double th = std::arg(z);
    const double num = integrate_improper(
        [&](double s, double d) {
            const double n = nontangential_max(f, std::polar(s, th), samples);
            return ext_mul(n, omega.density(s, d));
        },
        r, 1e-7);
    return ext_div(num, omega.tail(r));
}

namespace {

// Angular mean of |f|^p on the circle of radius t.
double angular_mean_p(const RadialFunctionField& f, double t, double p) {
    if (f.radial_symmetric()) return ext_pow(f.magnitude(t, 0.0), p);
    if (f.kind() == RadialFunctionField::Kind::StepFunction) {
        std::vector<double> brk = f.angular_breaks();
        if (brk.empty()) return ext_pow(f.magnitude(t, 0.0), p);
        double acc = 0.0;
        for (std::size_t i = 0; i < brk.size(); ++i) {
            const double lo = brk[i];
            const double hi =
                (i + 1 < brk.size()) ? brk[i + 1] : brk[0] + 2.0 * M_PI;
            if (hi <= lo) continue;
            const double v = f.magnitude(t, 0.5 * (lo + hi));
            acc += (hi - lo) * ext_pow(v, p);
        }
        return acc / (2.0 * M_PI);
    }
    const int n = f.grid().angular;
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        const double v = ext_pow(f.magnitude(t, f.grid().angle(k)), p);
        if (is_inf(v)) return kInf;
        acc += v;
    }
    return acc / n;
}

} // namespace

double lp_norm(const RadialFunctionField& f, const RadialWeight& nu,
               double p) {
    if (!(p > 0.0)) throw std::domain_error("lp_norm: need p > 0");
    // Extremal fields measured against their own input-space weight have
    // the closed radial integrand (omega/(s nu))^{p'} s nu on the live
    // set of nu, evaluated in log space. (Where nu vanishes the measure
    // does too, so the integrand is 0 no matter how large the field is.)
    if (f.kind() == RadialFunctionField::Kind::ExtremalFr &&
        p == f.extremal_p() &&
        nu.to_config() == f.extremal_nu().to_config()) {
        const RadialWeight& om = f.extremal_omega();
        const double pp = p / (p - 1.0);
        const double total = 2.0 * integrate_improper(
            [&](double s, double d) {
                const double w = om.density(s, d);
                if (w == 0.0 || is_inf(w)) return is_inf(w) ? kInf : 0.0;
                const double m = ext_mul(s, nu.density(s, d));
                if (m == 0.0) return 0.0;
                return std::exp(pp * std::log(w) + (1.0 - pp) * std::log(m));
            },
            f.extremal_r(), 1e-10);
        return ext_pow(total, 1.0 / p);
    }
    const std::vector<double> breaks = f.radial_breaks();
    const double total = 2.0 * integrate_improper(
        [&](double t, double d) {
            const double dens = ext_mul(t, nu.density(t, d));
            if (dens == 0.0) return 0.0;
            return ext_mul(angular_mean_p(f, t, p), dens);
        },
        0.0, 1e-9);
    return ext_pow(total, 1.0 / p);
}

namespace {

// Shared partition + measure cache for the level-set sweeps: radial
// segments with their exact s eta(s) ds mass, evaluated once, reused for
// every lambda.
struct MeasureEngine {
    struct Seg {
        double a, b, mid, mass;
    };
    std::vector<Seg> segs;

    MeasureEngine(const RadialFunctionField& f, const RadialWeight& eta) {
        std::vector<double> pts = f.radial_breaks();
        for (double r : f.grid().radial.nodes) pts.push_back(r);
        pts.push_back(1.0 - 1e-12);
        pts.push_back(0.0);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        const double total = eta.is_zero() ? 0.0 : eta.area_tail(0.0);
        double prev_tail = total;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double a = pts[i];
            const double b = (i + 1 < pts.size()) ? pts[i + 1] : 1.0;
            if (b <= a) continue;
            const double tail_b =
                (b < 1.0 && !eta.is_zero()) ? eta.area_tail(b) : 0.0;
            const double mid = (b < 1.0) ? 0.5 * (a + b) : a;
            segs.push_back({a, b, mid, prev_tail - tail_b});
            prev_tail = tail_b;
        }
    }

    // eta-mass of { |f(., th)| > lambda } along one ray, crossings located
    // by bisection inside mixed segments.
    double mass(const RadialFunctionField& f, const RadialWeight& eta,
                double lambda, double th) const {
        const bool want_inf = is_inf(lambda);
        auto above = [&](double rr) {
            const double m = f.magnitude(std::min(rr, 1.0 - 1e-15), th);
            return want_inf ? is_inf(m) : m > lambda;
        };
        double out = 0.0;
        for (const auto& s : segs) {
            const bool in_a = above(s.a);
            const bool in_mid = above(s.mid);
            if (in_a == in_mid) {
                if (in_a) out += s.mass;
                continue;
            }
            double lo = s.a, hi = s.mid;
            for (int it = 0; it < 60 && hi - lo > 1e-14; ++it) {
                const double c = 0.5 * (lo + hi);
                (above(c) == in_a ? lo : hi) = c;
            }
            const double part =
                eta.is_zero() ? 0.0
                              : eta.area_tail(lo) -
                                    (s.b < 1.0 ? eta.area_tail(s.b) : 0.0);
            out += in_a ? s.mass - part : part;
        }
        return out;
    }
};

double engine_measure(const MeasureEngine& eng, const RadialFunctionField& f,
                      const RadialWeight& eta, double lambda) {
    if (f.radial_symmetric()) return 2.0 * eng.mass(f, eta, lambda, 0.0);
    std::vector<double> brk = f.angular_breaks();
    for (int k = 0; k < f.grid().angular; ++k) brk.push_back(f.grid().angle(k));
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end()), brk.end());
    double acc = 0.0;
    for (std::size_t i = 0; i < brk.size(); ++i) {
        const double lo = brk[i];
        const double hi = (i + 1 < brk.size()) ? brk[i + 1] : brk[0] + 2.0 * M_PI;
        if (hi <= lo) continue;
        acc += (hi - lo) * eng.mass(f, eta, lambda, 0.5 * (lo + hi));
    }
    return acc / M_PI;
}

} // namespace

double level_set_measure(const RadialFunctionField& f, const RadialWeight& eta,
                         double lambda) {
    const MeasureEngine eng(f, eta);
    return engine_measure(eng, f, eta, lambda);
}

double weak_quasinorm(const RadialFunctionField& f, const RadialWeight& eta,
                      double p, std::vector<double> lambda_grid) {
    if (!(p > 0.0)) throw std::domain_error("weak_quasinorm: need p > 0");
    // Sample the field for its scale and level values.
    std::vector<double> levels;
    double max_finite = 0.0;
    bool has_inf = false;
    const auto& g = f.grid();
    const int ang_stride = std::max(1, g.angular / 16);
    for (double r : g.radial.nodes) {
        for (int k = 0; k < g.angular; k += ang_stride) {
            const double v = f.magnitude(r, g.angle(k));
            if (is_inf(v)) {
                has_inf = true;
                continue;
            }
            if (v > 0.0) {
                levels.push_back(v);
                max_finite = std::max(max_finite, v);
            }
            if (f.radial_symmetric()) break;
        }
    }
    const MeasureEngine eng(f, eta);
    if (has_inf) {
        const double m = engine_measure(eng, f, eta, kInf);
        if (m > 0.0) return kInf;
    }
    if (max_finite == 0.0) return 0.0;
    if (lambda_grid.empty()) {
        for (double d = -6.0; d <= 6.0; d += 1.0 / 13.0)
            lambda_grid.push_back(max_finite * std::pow(10.0, d));
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        const std::size_t cap = 512;
        const std::size_t stride = std::max<std::size_t>(1, levels.size() / cap);
        for (std::size_t i = 0; i < levels.size(); i += stride)
            lambda_grid.push_back(levels[i] * (1.0 - 1e-9));
        lambda_grid.push_back(max_finite * (1.0 - 1e-9));
    }
    std::sort(lambda_grid.begin(), lambda_grid.end());
    lambda_grid.erase(std::unique(lambda_grid.begin(), lambda_grid.end()),
                      lambda_grid.end());
    double best = 0.0;
    for (double lam : lambda_grid) {
        const double m = engine_measure(eng, f, eta, lam);
        if (m <= 0.0) continue;
        best = std::max(best, lam * std::pow(m, 1.0 / p));
    }
    return best;
}

} // namespace radavg
