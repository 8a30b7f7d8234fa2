#pragma once

#include <functional>
#include <stdexcept>

namespace radavg {

/// Integrand evaluated at s with the boundary distance delta = 1-s passed
/// separately. Near s = 1 the forward difference 1-s loses all relative
/// precision, so integrators compute delta exactly (e.g. as e^{-u} under a
/// logarithmic substitution) and hand it to the integrand; integrands that
/// depend on the distance to the boundary should use delta, not 1-s.
using Integrand = std::function<double(double s, double delta)>;

/// Adapter for integrands that do not need the boundary distance.
inline Integrand plain(std::function<double(double)> f) {
    return [f = std::move(f)](double s, double) { return f(s); };
}

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive Gauss-Kronrod (G7-K15) integration of f over the finite
/// interval [a, b]. Integrands may return +inf; any +inf sample makes the
/// result +inf. Interior discontinuities are handled by subdivision.
double integrate_finite(const Integrand& f, double a, double b,
                        double rel_tol = 1e-10);

/// Integral of f over [a, 1) where f may have an endpoint singularity at 1.
///
/// The substitution u = -log(1-s) maps [a,1) to a half line which is swept
/// in blocks of length log 2, each integrated adaptively; the sweep stops
/// once three consecutive block contributions fall below rel_tol of the
/// accumulated value. Sub-geometric block decay (log-type tails) switches
/// to a second sweep along u = uK e^w whose partial sums are extrapolated
/// to u = inf by Neville interpolation in 1/u. A nonnegative integrand
/// whose blocks never decay yields +inf; sign-changing non-decay is an
/// error.
double integrate_improper(const Integrand& f, double a,
                          double rel_tol = 1e-10);

/// Convenience wrapper: [a, b] with b < 1 goes to integrate_finite,
/// b >= 1 to integrate_improper.
double integrate_to(const Integrand& f, double a, double b,
                    double rel_tol = 1e-10);

/// integrate_finite with the interval pre-split at the given sorted
/// breakpoints (integrand discontinuities known to the caller).
double integrate_finite_split(const Integrand& f, double a, double b,
                              const std::vector<double>& breaks,
                              double rel_tol = 1e-10);

} // namespace radavg
