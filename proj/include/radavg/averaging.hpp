#pragma once

#include "radavg/field.hpp"
#include "radavg/weight.hpp"

#include <complex>
#include <vector>

namespace radavg {

/// The dual-weight tail integral
///   \int_r^1 (omega(s) / (s nu(s)))^{p'} s nu(s) ds,
/// with the pointwise conventions x/0 = inf (x > 0) and 0 * inf = 0:
/// the integrand is 0 where omega vanishes and +inf where nu vanishes
/// under positive omega, making the integral +inf as soon as nu loses a
/// band that omega still charges.
double dual_tail_integral(const RadialWeight& omega, const RadialWeight& nu,
                          double p, double r, double rel_tol = 1e-10);

/// The pointwise integrand of dual_tail_integral (shared by the condition
/// evaluators so every vanishing-weight case is treated identically).
std::function<double(double, double)> dual_integrand(const RadialWeight& omega,
                                                     const RadialWeight& nu,
                                                     double p);

/// lambda_{r,t} = dual_tail_integral(r) / tail_omega(t), t <= r.
double lambda_rt(const RadialWeight& omega, const RadialWeight& nu, double p,
                 double r, double t);

/// Radial average of f along the outward ray through z, normalized by the
/// tail of omega:
///   (\int_{|z|}^1 f(s z/|z|) omega(s) ds) / tail_omega(|z|).
/// Undefined at z = 0 (domain error). Step, extremal and kernel fields use
/// exact tail arithmetic / series paths; sampled fields are integrated by
/// adaptive quadrature along the ray.
std::complex<double> apply_T(const RadialWeight& omega,
                             const RadialFunctionField& f,
                             std::complex<double> z);

/// Always integrates the field evaluator along the ray (the independent
/// route used to cross-check the exact paths).
std::complex<double> apply_T_quadrature(const RadialWeight& omega,
                                        const RadialFunctionField& f,
                                        std::complex<double> z,
                                        double rel_tol = 1e-9);

/// Sampled supremum of |f| over the cusped approach region with vertex z,
///   { xi : |arg z - arg xi| < (1 - |xi|/|z|) / 2 },
/// refined adaptively near the maximizer until the value moves < 0.1%.
double nontangential_max(const RadialFunctionField& f, std::complex<double> z,
                         int samples = 32);

/// Radial average of the nontangential maximal function of f.
double apply_TN(const RadialWeight& omega, const RadialFunctionField& f,
                std::complex<double> z, int samples = 16);

/// (2 \int_0^1 [angular mean of |f(t e^{i th})|^p] nu(t) t dt)^{1/p} under
/// the normalized area measure; +inf propagates, and cells where the
/// measure density vanishes contribute 0 regardless of |f|.
double lp_norm(const RadialFunctionField& f, const RadialWeight& nu, double p);

/// eta-measure of { |f| > lambda } by polar quadrature of the indicator
/// (angular cells x radial segments with bisected level crossings).
double level_set_measure(const RadialFunctionField& f, const RadialWeight& eta,
                         double lambda);

/// sup_lambda lambda * eta({ |f| > lambda })^{1/p} over a log-spaced
/// lambda grid augmented with the sampled field levels. An empty grid
/// argument selects the automatic grid.
double weak_quasinorm(const RadialFunctionField& f, const RadialWeight& eta,
                      double p, std::vector<double> lambda_grid = {});

} // namespace radavg
