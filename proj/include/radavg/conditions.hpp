#pragma once

#include "radavg/constructions.hpp"
#include "radavg/grid.hpp"
#include "radavg/profile.hpp"
#include "radavg/weight.hpp"

namespace radavg {

/// Two-weight strong-type condition profile:
///   M_p(r) = (\int_r^1 (omega/(s nu))^{p'} s nu ds)^{1/p'}
///            (\int_0^r s eta(s) / tail_omega(s)^p ds)^{1/p}.
/// Finite supremum characterizes strong (p,p) boundedness of the radial
/// average between the weighted Lebesgue spaces.
ConditionProfile mp_profile(const RadialWeight& omega, const RadialWeight& nu,
                            const RadialWeight& eta, double p,
                            const RadialGrid& grid);
double mp_value(const RadialWeight& omega, const RadialWeight& nu,
                const RadialWeight& eta, double p, double r);

/// Tail-ratio condition characterizing boundedness on the analytic range:
///   D_p(r) = tail_omega(r)^p / (\int_r^1 s nu ds) *
///            \int_0^r t nu(t) / tail_omega(t)^p dt.
/// Reported raw (at the p-th power scale of the operator norm).
ConditionProfile dp_profile(const RadialWeight& omega, const RadialWeight& nu,
                            double p, const RadialGrid& grid);
double dp_value(const RadialWeight& omega, const RadialWeight& nu, double p,
                double r);
/// Numeric supremum of the D_p expression over the grid.
double dp_sup(const RadialWeight& omega, const RadialWeight& nu, double p,
              const RadialGrid& grid);

/// Weak-type condition: N_p = sup_{t < r} N(t, r) with
///   N(t,r) = ((\int_t^r s eta ds) / tail_omega(t)^p)^{1/p}
///            (\int_r^1 (omega/(s nu))^{p'} s nu ds)^{1/p'}.
/// The profile is indexed by r with the inner maximum over grid t-nodes;
/// the maximizing pair is refined locally by golden section.
struct NpProfile {
    ConditionProfile profile; // aux holds the maximizing t per node
    double best_t = 0.0;
    double best_r = 0.0;
    double best_value = 0.0;
};
NpProfile np_profile(const RadialWeight& omega, const RadialWeight& nu,
                     const RadialWeight& eta, double p, const RadialGrid& grid);
double np_value(const RadialWeight& omega, const RadialWeight& nu,
                const RadialWeight& eta, double p, double t, double r);

/// Smoothed weak-type condition:
///   M_{p,eps}(r) = (tail_omega(r)^eps \int_0^r s eta / tail_omega^{p+eps} ds)^{1/p}
///                  (\int_r^1 (omega/(s nu))^{p'} s nu ds)^{1/p'}.
ConditionProfile mp_eps_profile(const RadialWeight& omega,
                                const RadialWeight& nu,
                                const RadialWeight& eta, double p, double eps,
                                const RadialGrid& grid);

/// Relative residual of the exact tail identity
///   \int_a^1 tail^{p-1} omega (\int_0^t s nu / tail^p) dt
///     = tail(a)^p/p \int_0^a s nu / tail^p + (1/p) \int_a^1 s nu,
/// both sides quadratured independently.
double carleson_identity_residual(const RadialWeight& omega,
                                  const RadialWeight& nu, double p, double a);

/// Sector-measure ratio mu_{p,omega,nu}(S(a)) / nu(S(a)) for the radial
/// sector at radius a; equals (D_p(a) + 1)/p by the identity above.
double carleson_ratio(const RadialWeight& omega, const RadialWeight& nu,
                      double p, double a);

/// Self-improvement sandwich for the D_p constant:
///   D_p <= D_{p-eps} <= p / (p - eps (1 + D_p)) * D_p
/// for eps in (0, p/(D_p + 1)); checked with 1% quadrature slack.
struct SelfImproveReport {
    double dp = 0.0;
    double dp_minus_eps = 0.0;
    double upper_factor = 0.0;
    double eps = 0.0;
    bool sandwich_ok = false;
};
SelfImproveReport self_improve_check(const RadialWeight& omega,
                                     const RadialWeight& nu, double p,
                                     double eps, const RadialGrid& grid);

/// Necessary conditions for boundedness into a q-space, 0 < p <= q:
///   first(r)  = tail_omega(r)^q / ((1-r)^{q/p-1} (\int_r^1 s nu)^{q/p})
///               * \int_0^r t eta / tail_omega^q dt
///   second(r) = (\int_r^1 s eta) / ((1-r)^{q/p-1} (\int_r^1 s nu)^{q/p}).
/// When omega is upper-doubling and eta certifies the tail-decay class,
/// the first controls the second; min over probed r of
///   (\int_0^r t eta / tail^q) / (tail_eta(r)/tail_omega(r)^q)
/// is recorded as the implication diagnostic.
struct NecessaryPair {
    ConditionProfile first;
    ConditionProfile second;
    bool implication_checked = false;
    double implication_min_ratio = 0.0;
};
NecessaryPair necessary_pq(const RadialWeight& omega, const RadialWeight& nu,
                           const RadialWeight& eta, double p, double q,
                           const RadialGrid& grid);

} // namespace radavg
