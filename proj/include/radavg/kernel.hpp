#pragma once

#include "radavg/weight.hpp"

#include <complex>
#include <map>
#include <vector>

namespace radavg {

struct KernelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Truncated reproducing-kernel series of the weighted Hilbert space of
/// analytic functions for the radial weight nu:
///
///   B_a(z) = sum_n c_n (z conj(a))^n,   c_n = 1 / (2 nu_{2n+1}),
///
/// with nu_x the x-th radial moment of nu. Coefficients are nondecreasing.
/// The truncation point is chosen by a ratio test on the computed terms
/// n^N c_n a_max^n so that the remainder is certified below `tol` for all
/// |a| <= a_max and derivative orders N <= max_N.
struct KernelSeries {
    RadialWeight nu;
    std::vector<double> coeffs; // c_0 .. c_{n_max}
    double a_max = 0.0;
    double tol = 0.0;
    int max_N = 4;
    std::map<double, double> tail_bound_at; // |a| -> certified remainder

    std::size_t n_max() const { return coeffs.size() - 1; }
    /// Certified truncation remainder at radius |a| and derivative order N;
    /// throws KernelError when outside the certified region.
    double certified_remainder(double abs_a, int N) const;
};

KernelSeries build_kernel(const RadialWeight& nu, double a_max, double tol,
                          int max_N = 4);

/// N-th derivative of the kernel with base point a, evaluated at z:
///   sum_{j>=N} j(j-1)...(j-N+1) z^{j-N} conj(a)^j c_j.
/// Requires |a| <= a_max; truncation error is below the certified bound.
std::complex<double> eval_kernel_derivative(const KernelSeries& k, int N,
                                            std::complex<double> a,
                                            std::complex<double> z);

/// The comparison integral for the p-norm of the N-th kernel derivative,
///   integral = \int_0^a dt / (tail_nu(t)^{p-1} (1-t)^{p(N+1)}),
/// together with its closed simplified upper bound
///   upper = 1 / (tail_nu(a)^{p-1} (1-a)^{p(N+1)-1}).
/// For 0 < p < 1 a positive decay exponent beta must be supplied and the
/// upper bound becomes
///   (1-a)^{-(1-p)beta}/tail_nu(a)^{p-1} * \int_0^a (1-t)^{(1-p)beta-p(N+1)} dt.
struct KernelNormBound {
    double integral;
    double upper;
};
KernelNormBound kernel_norm_bound(const RadialWeight& nu, double p, int N,
                                  double a, double beta = 0.0);

/// Angular L^q mean (to the q-th power) of the kernel derivative on the
/// circle of radius t: (1/2pi) int |B_a^{(N)}(t e^{i th})|^q d th,
/// by the 2^k-point periodic trapezoid rule with n_angles >= 2 n_max.
double kernel_deriv_mean_q(const KernelSeries& k, int N, double a, double t,
                           double q, int n_angles = 0);

/// Same mean for the radial average of the kernel derivative; by the
/// series form, tail_omega(t) * T_omega(B_a^{(N)})(t e^{i th}) is the
/// trigonometric polynomial with coefficients
/// j(j-1)...(j-N+1) a^j c_j omega_{t,j-N}. Returns the mean of |T(...)|^q
/// including the 1/tail_omega(t)^q factor.
double kernel_image_mean_q(const KernelSeries& k, const RadialWeight& omega,
                           int N, double a, double t, double q,
                           int n_angles = 0);

/// Both sides of the mean lower bound for radially averaged kernel
/// derivatives: lhs = tail_omega(t)^q * M_q^q(t, T_omega(B_a^{(N)})) and
/// rhs = tail_omega(a*)^q / (tail_nu(a)^q (1-a)^{q(N+1)-1}) where a* = a
/// for t <= a and a* = t beyond. Callers test lhs >= c * rhs.
/// Requires a >= 1 - 1/(2N) and an upper-doubling nu.
struct MeanBoundPair {
    double lhs;
    double rhs;
};
MeanBoundPair kernel_mean_lower_bound(const KernelSeries& k,
                                      const RadialWeight& omega, double q,
                                      int N, double a, double t,
                                      int n_angles = 0);

/// Mean over the unit circle of |P(e^{i th})|^q for the real-coefficient
/// polynomial P, by the n-point periodic trapezoid rule (n a power of
/// two, at least 2 deg(P) for trigonometric exactness at q = 2).
double trig_mean_q(const std::vector<double>& coef, double q, int n_angles);

/// Moments omega_{t,x} for x = 0..x_max at each of the given radii
/// (ascending), computed by suffix accumulation over the radius segments.
/// Result is indexed [radius][x].
std::vector<std::vector<double>> moment_table_suffix(
    const RadialWeight& w, const std::vector<double>& radii,
    std::size_t x_max);

} // namespace radavg
