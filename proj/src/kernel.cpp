#include "radavg/kernel.hpp"
#include "radavg/classify.hpp"
#include "radavg/ext_real.hpp"
#include "radavg/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace radavg {

namespace {

constexpr std::size_t kCoeffCap = 2'000'000;

// Gauss-Legendre 24 on [-1,1] via the generator in weight.cpp is not
// exposed; a fixed 16-point rule is plenty for the smooth segment
// integrands used here.
constexpr double kGlX[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double kGlW[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

int pick_angles(std::size_t n_max, int requested) {
    if (requested > 0) return requested;
    int n = 64;
    while (static_cast<std::size_t>(n) < 2 * n_max + 2 && n < (1 << 20)) n <<= 1;
    return n;
}

} // namespace

// Conjugate symmetry of real-coefficient polynomials halves the work.
double trig_mean_q(const std::vector<double>& coef, double q, int n) {
    const std::size_t deg = coef.size();
    double acc = 0.0;
    for (int k = 0; k <= n / 2; ++k) {
        const double th = 2.0 * M_PI * k / n;
        const std::complex<double> x(std::cos(th), -std::sin(th));
        std::complex<double> val(0.0, 0.0);
        for (std::size_t m = deg; m-- > 0;) val = val * x + coef[m];
        const double mag = std::abs(val);
        const double term = (q == 2.0) ? mag * mag : std::pow(mag, q);
        acc += (k == 0 || k == n / 2) ? term : 2.0 * term;
    }
    return acc / n;
}

double KernelSeries::certified_remainder(double abs_a, int N) const {
    if (!(abs_a <= a_max))
        throw KernelError("kernel series not certified at |a| > a_max");
    if (N > max_N)
        throw KernelError("kernel series not certified for this derivative order");
    auto it = tail_bound_at.lower_bound(abs_a);
    if (it == tail_bound_at.end()) return tail_bound_at.rbegin()->second;
    return it->second;
}

KernelSeries build_kernel(const RadialWeight& nu, double a_max, double tol,
                          int max_N) {
    if (!(a_max > 0.0 && a_max < 1.0))
        throw KernelError("build_kernel: need 0 < a_max < 1");
    if (!(tol > 0.0)) throw KernelError("build_kernel: need tol > 0");
    if (max_N < 0) throw KernelError("build_kernel: need max_N >= 0");
    KernelSeries k;
    k.nu = nu;
    k.a_max = a_max;
    k.tol = tol;
    k.max_N = max_N;

    std::size_t x_max = 2047; // moments up to nu_{2n+1} for n = 1023
    std::vector<double> moments = nu.moment_table(0.0, x_max);
    auto coeff = [&moments, &nu, &x_max](std::size_t n) {
        const std::size_t need = 2 * n + 1;
        if (need > x_max) {
            x_max = std::max(need, 2 * x_max + 1);
            moments = nu.moment_table(0.0, x_max);
        }
        const double m = moments[need];
        if (!(m > 0.0))
            throw KernelError("build_kernel: vanishing odd moment (degenerate weight)");
        return 1.0 / (2.0 * m);
    };

    const double log_a = std::log(a_max);
    auto term = [&](std::size_t n, double c_n) {
        const double nn = std::max<double>(1.0, static_cast<double>(n));
        return std::exp(max_N * std::log(nn) + n * log_a) * c_n;
    };

    double run_sum = 0.0;
    std::vector<double> ratios;
    double prev_t = -1.0;
    for (std::size_t n = 0;; ++n) {
        if (n > kCoeffCap)
            throw KernelError("build_kernel: truncation exceeds the coefficient cap "
                              "(a_max too close to 1 for the requested tol)");
        const double c = coeff(n);
        k.coeffs.push_back(c);
        const double t = term(n, c);
        run_sum += t;
        if (prev_t > 0.0) {
            ratios.push_back(t / prev_t);
            if (ratios.size() > 16) ratios.erase(ratios.begin());
        }
        prev_t = t;
        if (n >= 16 && ratios.size() == 16) {
            const double rho = *std::max_element(ratios.begin(), ratios.end());
            const double rho_cap = 0.25 + 0.75 * a_max;
            if (rho < rho_cap && rho < 1.0) {
                const double rem = t * rho / (1.0 - rho);
                if (rem < tol) {
                    k.tail_bound_at[a_max] = rem;
                    return k;
                }
            }
        }
    }
}

std::complex<double> eval_kernel_derivative(const KernelSeries& k, int N,
                                            std::complex<double> a,
                                            std::complex<double> z) {
    if (N < 0) throw KernelError("eval_kernel_derivative: N >= 0 required");
    if (std::abs(z) >= 1.0)
        throw std::domain_error("eval_kernel_derivative: |z| < 1 required");
    k.certified_remainder(std::abs(a), N); // radius/order check
    const std::complex<double> ab = std::conj(a);
    std::complex<double> a_pow = std::pow(ab, N);
    std::complex<double> z_pow(1.0, 0.0);
    double ffact = 1.0;
    for (int i = 0; i < N; ++i) ffact *= static_cast<double>(N - i);
    std::complex<double> sum(0.0, 0.0);
    const std::size_t n_max = k.n_max();
    for (std::size_t j = static_cast<std::size_t>(N);; ++j) {
        sum += ffact * z_pow * a_pow * k.coeffs[j];
        if (j == n_max) break;
        // advance to j+1
        const double jd = static_cast<double>(j) + 1.0;
        ffact *= jd / (jd - N);
        a_pow *= ab;
        z_pow *= z;
    }
    return sum;
}

KernelNormBound kernel_norm_bound(const RadialWeight& nu, double p, int N,
                                  double a, double beta) {
    if (!(a > 0.0 && a < 1.0))
        throw std::domain_error("kernel_norm_bound: a in (0,1) required");
    if (N < 1) throw std::domain_error("kernel_norm_bound: N >= 1 required");
    if (p < 1.0 && !(beta > 0.0))
        throw std::domain_error(
            "kernel_norm_bound: p < 1 requires a positive decay exponent beta");
    KernelNormBound out{};
    const double e = p * (N + 1.0);
    out.integral = integrate_finite(
        [&nu, p, e](double t, double d) {
            return 1.0 / (std::pow(nu.tail(t), p - 1.0) * std::pow(d, e));
        },
        0.0, a, 1e-10);
    const double ta = nu.tail(a);
    if (p >= 1.0) {
        out.upper = 1.0 / (std::pow(ta, p - 1.0) * std::pow(1.0 - a, e - 1.0));
    } else {
        const double shift = (1.0 - p) * beta;
        const double inner = integrate_finite(
            [e, shift](double, double d) { return std::pow(d, shift - e); },
            0.0, a, 1e-10);
        out.upper = std::pow(1.0 - a, -shift) / std::pow(ta, p - 1.0) * inner;
    }
    return out;
}

std::vector<std::vector<double>> moment_table_suffix(
    const RadialWeight& w, const std::vector<double>& radii,
    std::size_t x_max) {
    const std::size_t n = radii.size();
    std::vector<std::vector<double>> out(n);
    if (n == 0) return out;
    out[n - 1] = w.moment_table(radii[n - 1], x_max);
    for (std::size_t i = n - 1; i-- > 0;) {
        out[i] = out[i + 1];
        const double lo = radii[i], hi = radii[i + 1];
        if (hi <= lo) continue;
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        // 16-point Gauss segment, all powers accumulated in one sweep.
        double s_node[16], f_node[16], p_node[16];
        for (int g = 0; g < 8; ++g) {
            s_node[2 * g] = mid - half * kGlX[g];
            s_node[2 * g + 1] = mid + half * kGlX[g];
            f_node[2 * g] = f_node[2 * g + 1] = kGlW[g] * half;
        }
        for (int g = 0; g < 16; ++g) {
            f_node[g] *= w.density(s_node[g], 1.0 - s_node[g]);
            p_node[g] = 1.0;
        }
        for (std::size_t x = 0; x <= x_max; ++x) {
            double acc = 0.0;
            for (int g = 0; g < 16; ++g) {
                acc += f_node[g] * p_node[g];
                p_node[g] *= s_node[g];
            }
            out[i][x] += acc;
        }
    }
    return out;
}

double kernel_deriv_mean_q(const KernelSeries& k, int N, double a, double t,
                           double q, int n_angles) {
    k.certified_remainder(std::abs(a), N);
    const std::size_t n_max = k.n_max();
    std::vector<double> coef(n_max + 1 - N, 0.0);
    double ffact = 1.0;
    for (int i = 0; i < N; ++i) ffact *= static_cast<double>(N - i);
    double a_pow = std::pow(a, N), t_pow = 1.0;
    for (std::size_t j = static_cast<std::size_t>(N); j <= n_max; ++j) {
        coef[j - N] = ffact * a_pow * t_pow * k.coeffs[j];
        const double jd = static_cast<double>(j) + 1.0;
        ffact *= jd / (jd - N);
        a_pow *= a;
        t_pow *= t;
    }
    return trig_mean_q(coef, q, pick_angles(n_max, n_angles));
}

double kernel_image_mean_q(const KernelSeries& k, const RadialWeight& omega,
                           int N, double a, double t, double q,
                           int n_angles) {
    k.certified_remainder(std::abs(a), N);
    const std::size_t n_max = k.n_max();
    const std::vector<double> om = omega.moment_table(t, n_max - N);
    std::vector<double> coef(n_max + 1 - N, 0.0);
    double ffact = 1.0;
    for (int i = 0; i < N; ++i) ffact *= static_cast<double>(N - i);
    double a_pow = std::pow(a, N);
    for (std::size_t j = static_cast<std::size_t>(N); j <= n_max; ++j) {
        coef[j - N] = ffact * a_pow * k.coeffs[j] * om[j - N];
        const double jd = static_cast<double>(j) + 1.0;
        ffact *= jd / (jd - N);
        a_pow *= a;
    }
    const double mean =
        trig_mean_q(coef, q, pick_angles(n_max, n_angles));
    return mean / std::pow(omega.tail(t), q);
}

MeanBoundPair kernel_mean_lower_bound(const KernelSeries& k,
                                      const RadialWeight& omega, double q,
                                      int N, double a, double t,
                                      int n_angles) {
    if (!(q > 0.0)) throw std::domain_error("kernel_mean_lower_bound: q > 0");
    if (N < 1) throw std::domain_error("kernel_mean_lower_bound: N >= 1");
    if (!(a >= 1.0 - 1.0 / (2.0 * N)))
        throw std::domain_error(
            "kernel_mean_lower_bound: need a >= 1 - 1/(2N)");
    if (classify_dhat(k.nu, RadialGrid::dyadic()).verdict != Membership::Member)
        throw std::domain_error(
            "kernel_mean_lower_bound: nu must be an upper-doubling member");
    MeanBoundPair out{};
    const double img = kernel_image_mean_q(k, omega, N, a, t, q, n_angles);
    out.lhs = img * std::pow(omega.tail(t), q);
    const double top = (t <= a) ? omega.tail(a) : omega.tail(t);
    out.rhs = std::pow(top, q) /
              (std::pow(k.nu.tail(a), q) *
               std::pow(1.0 - a, q * (N + 1.0) - 1.0));
    return out;
}

} // namespace radavg
