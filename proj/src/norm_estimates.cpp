#include "radavg/norm_estimates.hpp"
#include "radavg/averaging.hpp"
#include "radavg/ext_real.hpp"
#include "radavg/kernel.hpp"
#include "radavg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace radavg {

namespace {

PolarGrid small_grid() { return PolarGrid::make(RadialGrid::dyadic(20, 4), 32); }

double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Gauss-Legendre 8 on [0,1]: nodes/weights for the per-band norm grid.
constexpr double kG8X[8] = {0.019855071751232, 0.101666761293187,
                            0.237233795041836, 0.408282678752175,
                            0.591717321247825, 0.762766204958164,
                            0.898333238706813, 0.980144928248768};
constexpr double kG8W[8] = {0.050614268145188, 0.111190517226687,
                            0.156853322938944, 0.181341891689181,
                            0.181341891689181, 0.156853322938944,
                            0.111190517226687, 0.050614268145188};

} // namespace

double strong_ratio_extremal(const WeightTriple& triple, double p, double r) {
    const RadialWeight &omega = triple.omega, &nu = triple.nu, &eta = triple.eta;
    const double I_r = dual_tail_integral(omega, nu, p, r);
    if (I_r == 0.0) return 0.0;
    // For strictly positive nu the norm of the test function is exactly
    // (2 I_r)^{1/p}; an infinite dual integral then means the member is
    // inadmissible. Degenerate nu keeps the quadrature route, where the
    // vanishing bands drop out of the norm while I_r may be infinite.
    double fnorm;
    if (nu.strictly_positive()) {
        if (is_inf(I_r)) return 0.0;
        fnorm = std::pow(2.0 * I_r, 1.0 / p);
    } else {
        const RadialFunctionField f =
            RadialFunctionField::extremal(omega, nu, p, r, small_grid());
        fnorm = lp_norm(f, nu, p);
    }
    if (!(fnorm > 0.0) || is_inf(fnorm)) return 0.0;
    // ||T f_r||^p = 2 [ I_r^p \int_0^r s eta / tail^p
    //                  + \int_r^1 (I_t / tail(t))^p eta t dt ].
    const double A = integrate_finite(
        [&](double s, double d) {
            const double den = ext_mul(s, eta.density(s, d));
            if (den == 0.0) return 0.0;
            return den / std::pow(omega.tail(s), p);
        },
        0.0, r, 1e-9);
    const double num1 = ext_mul(ext_pow(I_r, p), A);
    // \int_r^1 (I_t / tail(t))^p eta t dt on a dyadic-band Gauss sweep,
    // with I_t accumulated along the same nodes.
    double num2 = 0.0;
    if (!is_inf(I_r)) {
        const auto g = dual_integrand(omega, nu, p);
        std::vector<double> nodes, gl_w;
        double lo = r;
        double gap = 1.0 - r;
        for (int band = 0; band < 46 && gap > 1e-14; ++band) {
            const double hi = 1.0 - 0.5 * gap;
            for (int i = 0; i < 8; ++i) {
                nodes.push_back(lo + (hi - lo) * kG8X[i]);
                gl_w.push_back((hi - lo) * kG8W[i]);
            }
            lo = hi;
            gap *= 0.5;
        }
        // Restart the dual suffix integral at every band: accumulating
        // differences across the whole sweep loses all relative precision
        // once I_t is far below I_r, and the 1/tail^p factor amplifies it.
        double I_t = I_r;
        double prev = r;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double t = nodes[i];
            if (i % 8 == 0) {
                I_t = integrate_improper(g, t, 1e-10);
                prev = t;
            } else {
                I_t = std::max(0.0, I_t - integrate_finite(g, prev, t, 1e-10));
                prev = t;
            }
            const double den = ext_mul(t, eta(t));
            if (den > 0.0)
                num2 += gl_w[i] * den * std::pow(ext_div(I_t, omega.tail(t)), p);
        }
    } else {
        num2 = kInf;
    }
    const double tnorm = ext_pow(2.0 * (num1 + num2), 1.0 / p);
    return ext_div(tnorm, fnorm);
}

namespace {

struct KernelFamilyContext {
    KernelSeries series;
    std::vector<double> radii;
    std::vector<double> weights; // GL weights per radius
    std::vector<std::vector<double>> omega_moments;
};

KernelFamilyContext make_kernel_context(const WeightTriple& triple, double a_max,
                                        int N) {
    KernelFamilyContext ctx;
    const double tol = 1e-7 * std::pow(1.0 - a_max, -(N + 2.0));
    ctx.series = build_kernel(triple.nu, a_max, tol, std::max(N, 2));
    const int bands = 20;
    for (int l = 0; l < bands; ++l) {
        const double lo = 1.0 - std::ldexp(1.0, -l);
        const double w = std::ldexp(1.0, -l - 1);
        for (int g = 0; g < 8; ++g) {
            ctx.radii.push_back(lo + w * kG8X[g]);
            ctx.weights.push_back(w * kG8W[g]);
        }
    }
    ctx.omega_moments = moment_table_suffix(triple.omega, ctx.radii,
                                            ctx.series.n_max());
    return ctx;
}

double kernel_family_ratio(const KernelFamilyContext& ctx,
                           const WeightTriple& triple, double p, int N,
                           double a) {
    const KernelSeries& k = ctx.series;
    const std::size_t n_max = k.n_max();
    const std::size_t len = n_max + 1 - static_cast<std::size_t>(N);
    std::vector<double> base(len); // ffact * a^j * c_j
    {
        double ffact = 1.0;
        for (int i = 0; i < N; ++i) ffact *= static_cast<double>(N - i);
        double a_pow = std::pow(a, N);
        for (std::size_t j = static_cast<std::size_t>(N); j <= n_max; ++j) {
            base[j - N] = ffact * a_pow * k.coeffs[j];
            const double jd = static_cast<double>(j) + 1.0;
            ffact *= jd / (jd - N);
            a_pow *= a;
        }
    }
    double image_p = 0.0, source_p = 0.0;
    std::vector<double> coef(len);
    for (std::size_t i = 0; i < ctx.radii.size(); ++i) {
        const double t = ctx.radii[i];
        const double wq = ctx.weights[i];
        // averaged image: coefficients base_j * omega_{t, j-N}
        const auto& om = ctx.omega_moments[i];
        for (std::size_t m = 0; m < len; ++m) coef[m] = base[m] * om[m];
        const double mean_T = trig_mean_q(coef, p, 0) /
                              std::pow(triple.omega.tail(t), p);
        image_p += wq * mean_T * triple.eta(t) * t;
        // the test function itself: coefficients base_j * t^{j-N}
        double t_pow = 1.0;
        for (std::size_t m = 0; m < len; ++m) {
            coef[m] = base[m] * t_pow;
            t_pow *= t;
        }
        const double mean_B = trig_mean_q(coef, p, 0);
        source_p += wq * mean_B * triple.nu(t) * t;
    }
    if (!(source_p > 0.0)) return 0.0;
    return std::pow(image_p / source_p, 1.0 / p);
}

std::vector<StepRect> random_rects(std::mt19937_64& rng) {
    const int n = 1 + static_cast<int>(rng() % 4);
    std::vector<StepRect> rects;
    for (int i = 0; i < n; ++i) {
        StepRect rc;
        const double a = 0.98 * u01(rng), b = 0.98 * u01(rng);
        rc.r_lo = std::min(a, b);
        rc.r_hi = std::max(a, b);
        rc.th_lo = 2.0 * M_PI * u01(rng);
        rc.th_hi = rc.th_lo + 2.0 * M_PI * u01(rng);
        rc.amplitude = 0.1 + 10.0 * u01(rng);
        rects.push_back(rc);
    }
    return rects;
}

} // namespace

NormEstimate estimate_strong_norm(const WeightTriple& triple, double p,
                                  const StrongFamilies& families,
                                  const RadialGrid& grid) {
    if (!(p > 1.0)) throw std::domain_error("estimate_strong_norm: need p > 1");
    NormEstimate best;
    best.kind = NormEstimate::Kind::StrongLower;
    bool any_usable = false;
    auto consider = [&](double v, const std::string& fam,
                        std::map<std::string, double> mx) {
        if (v > 0.0) any_usable = true;
        if (v > best.value || (is_inf(v) && !is_inf(best.value))) {
            best.value = v;
            best.family = fam;
            best.maximizer = std::move(mx);
        }
    };
    if (families.muckenhoupt) {
        for (int j = 0; j <= grid.levels; ++j) {
            const double r = 1.0 - std::ldexp(1.0, -j);
            const double v = strong_ratio_extremal(triple, p, r);
            consider(v, "muckenhoupt", {{"r", r}});
            if (is_inf(v)) break;
        }
    }
    if (families.kernel_N > 0 && !families.kernel_a_grid.empty()) {
        const double a_max =
            *std::max_element(families.kernel_a_grid.begin(),
                              families.kernel_a_grid.end());
        const KernelFamilyContext ctx =
            make_kernel_context(triple, a_max, families.kernel_N);
        for (double a : families.kernel_a_grid) {
            const double v =
                kernel_family_ratio(ctx, triple, p, families.kernel_N, a);
            consider(v, "kernel", {{"a", a}, {"N", double(families.kernel_N)}});
        }
    }
    if (families.random_steps > 0) {
        std::mt19937_64 rng(families.seed);
        for (int i = 0; i < families.random_steps; ++i) {
            const RadialFunctionField f =
                RadialFunctionField::step(random_rects(rng), small_grid());
            const double fnorm = lp_norm(f, triple.nu, p);
            if (!(fnorm > 0.0) || is_inf(fnorm)) continue;
            const RadialFunctionField tf = RadialFunctionField::from_function(
                f.grid(),
                [&omega = triple.omega, f](double t, double th) {
                    return apply_T(omega, f, std::polar(t, th));
                },
                f.radial_symmetric());
            const double v = ext_div(lp_norm(tf, triple.eta, p), fnorm);
            consider(v, "steps",
                     {{"index", double(i)}, {"seed", double(families.seed)}});
        }
    }
    if (!any_usable)
        throw std::runtime_error(
            "estimate_strong_norm: degenerate family (all test functions have "
            "zero norm)");
    return best;
}

double weak_pipeline_value(const WeightTriple& triple, double p, double t,
                           double r) {
    if (!(p > 1.0)) throw std::domain_error("weak_pipeline_value: need p > 1");
    if (!(0.0 <= t && t < r && r < 1.0))
        throw std::domain_error("weak_pipeline_value: need 0 <= t < r < 1");
    const RadialWeight &omega = triple.omega, &nu = triple.nu, &eta = triple.eta;
    const RadialFunctionField f =
        RadialFunctionField::extremal(omega, nu, p, r, small_grid());
    const double fnorm = lp_norm(f, nu, p);
    const double I_r = dual_tail_integral(omega, nu, p, r);
    double lambda;
    if (t > 0.0) {
        lambda = std::abs(apply_T(omega, f, std::polar(t, 0.0)));
    } else {
        lambda = ext_div(I_r, omega.tail(0.0));
    }
    if (lambda == 0.0) return 0.0;
    auto eta_annulus = [&eta](double lo, double hi) {
        if (eta.is_zero()) return 0.0;
        return 2.0 * (eta.area_tail(lo) - eta.area_tail(hi));
    };
    if (is_inf(lambda)) {
        // The averaged field is infinite on the whole disc of radius r.
        const double m = eta_annulus(0.0, r);
        return (m > 0.0 && fnorm > 0.0 && !is_inf(fnorm)) ? kInf : 0.0;
    }
    // Level-set boundary of { T f_r >= lambda } inside |z| <= r, located
    // on the tail of omega.
    const double target = I_r / (lambda * (1.0 - 1e-12));
    const double t_star = tail_level_radius(omega, target, 1e-13);
    const double m = eta_annulus(std::min(t_star, r), r);
    return ext_div(ext_mul(lambda, ext_pow(m, 1.0 / p)), fnorm);
}

NormEstimate estimate_weak_norm(
    const WeightTriple& triple, double p,
    const std::vector<std::pair<double, double>>& rt_grid) {
    NormEstimate best;
    best.kind = NormEstimate::Kind::WeakLower;
    best.family = "extremal";
    for (const auto& [t, r] : rt_grid) {
        const double v = weak_pipeline_value(triple, p, t, r);
        if (v > best.value || (is_inf(v) && !is_inf(best.value))) {
            best.value = v;
            best.maximizer = {{"t", t}, {"r", r}};
        }
        if (is_inf(best.value)) break;
    }
    return best;
}

} // namespace radavg
