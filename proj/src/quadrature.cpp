#include "radavg/quadrature.hpp"
#include "radavg/ext_real.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace radavg {

namespace {

// Kronrod-15 abscissae on [0,1] with the embedded Gauss-7 rule.
// Odd-indexed nodes are the Gauss points.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277,
    0.381830050505119, 0.417959183673469};

// Distances to the boundary below this are not resolvable by the weight
// families in double precision; the improper sweep stops here and the
// remaining mass is recovered by extrapolation.
constexpr double kUCliff = 690.0; // delta = e^{-u} down to ~1e-300

struct PanelResult {
    double value;
    double error;
    bool hit_inf;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    if (is_inf(fc)) return {kInf, 0.0, true};
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        double f1 = f(c - dx);
        double f2 = f(c + dx);
        if (is_inf(f1) || is_inf(f2)) return {kInf, 0.0, true};
        resk += kWgk[i] * (f1 + f2);
        if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
    }
    resk *= h;
    resg *= h;
    double err = std::abs(resk - resg);
    const double sharp = std::pow(200.0 * err, 1.5);
    if (sharp < err) err = sharp;
    return {resk, err, false};
}

double adaptive_finite(const std::function<double(double)>& f, double a,
                       double b, double rel_tol) {
    if (!(b > a)) return 0.0;
    struct Seg {
        double a, b, value, error;
    };
    PanelResult first = gk15(f, a, b);
    if (first.hit_inf) return kInf;
    std::vector<Seg> segs{{a, b, first.value, first.error}};
    double total = first.value;
    double toterr = first.error;
    const int max_segs = 4000;
    while (toterr > rel_tol * std::max(std::abs(total), 1e-300) &&
           (int)segs.size() < max_segs) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error) worst = i;
        Seg s = segs[worst];
        double mid = 0.5 * (s.a + s.b);
        if (mid <= s.a || mid >= s.b) break; // interval exhausted in doubles
        PanelResult l = gk15(f, s.a, mid);
        PanelResult r = gk15(f, mid, s.b);
        if (l.hit_inf || r.hit_inf) return kInf;
        total += l.value + r.value - s.value;
        toterr += l.error + r.error - s.error;
        segs[worst] = {s.a, mid, l.value, l.error};
        segs.push_back({mid, s.b, r.value, r.error});
    }
    return total;
}

} // namespace

double integrate_finite(const Integrand& f, double a, double b,
                        double rel_tol) {
    return adaptive_finite([&f](double s) { return f(s, 1.0 - s); }, a, b,
                           rel_tol);
}

double integrate_finite_split(const Integrand& f, double a, double b,
                              const std::vector<double>& breaks,
                              double rel_tol) {
    double acc = 0.0;
    double lo = a;
    for (double br : breaks) {
        if (br <= lo) continue;
        if (br >= b) break;
        acc += integrate_finite(f, lo, br, rel_tol);
        if (is_inf(acc)) return kInf;
        lo = br;
    }
    acc += integrate_finite(f, lo, b, rel_tol);
    return acc;
}

namespace {

// Transformed integrand g(u) = f(1-e^{-u}, e^{-u}) e^{-u}.
double eval_log_sub(const Integrand& f, double u) {
    const double delta = std::exp(-u);
    if (delta <= 0.0) return 0.0;
    // Both endpoints need care: near u = 0 the difference 1 - e^{-u}
    // cancels (expm1 keeps it exact), near the boundary s rounds to 1.
    double s = -std::expm1(-u);
    if (s >= 1.0) s = std::nextafter(1.0, 0.0);
    double v = f(s, delta);
    if (is_inf(v)) return kInf;
    return v * delta;
}

struct Sweep {
    double acc = 0.0;
    bool hit_inf = false;
    bool converged = false;
    bool nonneg = true;
    int blocks_done = 0;
    std::vector<double> block_values;
};

Sweep sweep_phase1(const Integrand& f, double u0, double rel_tol,
                   int max_blocks) {
    const double block = std::log(2.0);
    auto g = [&f](double u) { return eval_log_sub(f, u); };
    Sweep st;
    int calm = 0;
    for (int k = 0; k < max_blocks; ++k) {
        const double ua = u0 + k * block;
        if (ua >= kUCliff) {
            st.converged = true; // no representable mass remains
            return st;
        }
        const double contrib =
            adaptive_finite(g, ua, std::min(ua + block, kUCliff), rel_tol * 0.25);
        if (is_inf(contrib)) {
            st.hit_inf = true;
            return st;
        }
        if (contrib < 0.0) st.nonneg = false;
        st.acc += contrib;
        st.block_values.push_back(contrib);
        st.blocks_done = k + 1;
        if (std::abs(contrib) <= rel_tol * std::max(std::abs(st.acc), 1e-300)) {
            if (++calm >= 3) {
                st.converged = true;
                return st;
            }
        } else {
            calm = 0;
        }
        // Sub-geometric decay: less than a factor 4 over 8 blocks. Hand
        // the tail to the extrapolating sweep while plenty of u-range
        // remains.
        const std::size_t n = st.block_values.size();
        if (n >= 24) {
            const double recent = std::abs(st.block_values[n - 1]);
            const double old = std::abs(st.block_values[n - 9]);
            if (recent > 0.25 * old && recent > 0.0) return st;
        }
    }
    return st;
}

// Neville extrapolation of (x_i, y_i) to x = 0.
double neville_at_zero(std::vector<double> x, std::vector<double> y) {
    const std::size_t n = x.size();
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = 0; i + level < n; ++i)
            y[i] = (x[i + level] * y[i] - x[i] * y[i + 1]) /
                   (x[i + level] - x[i]);
    return y[0];
}

} // namespace

double integrate_improper(const Integrand& f, double a, double rel_tol) {
    if (!(a < 1.0)) return 0.0;
    const double u0 = -std::log1p(-a); // -log(1-a)
    Sweep p1 = sweep_phase1(f, u0, rel_tol, 200);
    if (p1.hit_inf) return kInf;
    if (p1.converged) return p1.acc;

    // Tail sweep along u = uK 2^j with running partial sums recorded at
    // the doubling points; F(u) = total - M(u) with M polynomial in 1/u
    // for log-type tails, so Neville interpolation of (1/u_j, F(u_j))
    // at 0 recovers the full integral.
    const double uK = u0 + p1.blocks_done * std::log(2.0);
    auto g = [&f](double u) { return eval_log_sub(f, u); };
    std::vector<double> xs{1.0 / uK}, ys{p1.acc};
    double acc = p1.acc;
    double prev_block = kInf;
    int growing = 0;
    double u_lo = uK;
    int calm = 0;
    while (u_lo < kUCliff) {
        const double u_hi = std::min(2.0 * u_lo, kUCliff);
        const double contrib = adaptive_finite(
            [&g](double w) {
                const double u = std::exp(w);
                return g(u) * u;
            },
            std::log(u_lo), std::log(u_hi), rel_tol * 0.25);
        if (is_inf(contrib)) return kInf;
        if (contrib < 0.0) p1.nonneg = false;
        acc += contrib;
        xs.push_back(1.0 / u_hi);
        ys.push_back(acc);
        if (std::abs(contrib) <= rel_tol * std::max(std::abs(acc), 1e-300)) {
            if (++calm >= 2) return acc;
        } else {
            calm = 0;
        }
        if (std::abs(contrib) >= prev_block * 0.999) ++growing;
        else growing = 0;
        if (growing >= 3) {
            if (p1.nonneg && acc > 0.0) return kInf;
            throw QuadratureError(
                "integrate_improper: block contributions failed to decay");
        }
        prev_block = std::abs(contrib);
        u_lo = u_hi;
    }
    // Keep the last few doubling points for the extrapolation.
    const std::size_t keep = 6;
    if (xs.size() > keep) {
        xs.erase(xs.begin(), xs.end() - keep);
        ys.erase(ys.begin(), ys.end() - keep);
    }
    if (xs.size() < 2) return acc;
    return neville_at_zero(xs, ys);
}

double integrate_to(const Integrand& f, double a, double b, double rel_tol) {
    if (b >= 1.0) return integrate_improper(f, a, rel_tol);
    return integrate_finite(f, a, b, rel_tol);
}

} // namespace radavg
