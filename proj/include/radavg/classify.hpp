#pragma once

#include "radavg/grid.hpp"
#include "radavg/weight.hpp"

#include <string>
#include <vector>

namespace radavg {

enum class WeightClass { Dhat, Dcheck, Regular };
enum class Membership { Member, NotMember, Inconclusive };

std::string to_string(WeightClass c);
std::string to_string(Membership m);

/// Outcome of probing one of the tail-ratio weight classes on a grid.
///
/// Class membership is an asymptotic property, so a finite probe can only
/// certify it under a fixed protocol (recorded in `protocol`): ratios are
/// evaluated at the dyadic levels r = 1-2^{-j}; Member needs the running
/// extremum to move < 0.1% over the last 8 levels, or a 1/level-asymptote
/// fit (R^2 > 0.99) with an admissible limit; NotMember needs a fitted
/// trend toward the forbidden limit; anything else is Inconclusive.
struct DoublingReport {
    WeightClass class_tested = WeightClass::Dhat;
    double K = 0.0; // only meaningful for Dcheck
    Membership verdict = Membership::Inconclusive;
    double C_estimate = 1.0; // best constant found on the probe grid, >= 1
    double max_probe_r = 0.0;
    double ratio_sup = 0.0;
    double ratio_inf = 0.0;
    double trend_limit = 0.0; // extrapolated ratio limit when fitted
    double trend_r2 = 0.0;
    std::string protocol;
    std::string note;
};

/// Upper tail doubling: tail(r) <= C tail((1+r)/2).
DoublingReport classify_dhat(const RadialWeight& w, const RadialGrid& grid);

/// Tail decay by a definite factor: tail(r) >= C tail(1-(1-r)/K), C > 1.
DoublingReport classify_dcheck(const RadialWeight& w, double K,
                               const RadialGrid& grid);

/// Pointwise comparability tail(r) ~ w(r)(1-r); probes the full grid
/// including the inner band (the class constrains every radius).
DoublingReport classify_regular(const RadialWeight& w, const RadialGrid& grid);

/// Both doubling classes at once (Dcheck swept over the given K values).
bool is_member_both(const RadialWeight& w, const RadialGrid& grid,
                    const std::vector<double>& Ks = {2.0, 4.0, 8.0});

/// rho_0 = r and rho_n = min{ t : tail(t) = tail(r) K^{-n} }, n = 1..n_max,
/// by bisection on the continuous nonincreasing tail. For weights whose
/// tail is locally flat (vanishing density bands) the leftmost solution is
/// returned.
std::vector<double> rho_sequence(const RadialWeight& w, double K, double r,
                                 int n_max);

} // namespace radavg
