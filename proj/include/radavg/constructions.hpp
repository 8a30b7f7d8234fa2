#pragma once

#include "radavg/classify.hpp"
#include "radavg/weight.hpp"

namespace radavg {

/// Source weight, input-space weight and target-space weight of a
/// two-weight (or three-weight) boundedness question.
struct WeightTriple {
    RadialWeight omega; // averaging weight
    RadialWeight nu;    // input-space weight
    RadialWeight eta;   // target-space weight
};

/// The oscillating companion weight of omega: vanishes on alternate
/// tail-level bands of omega while t*nu(t) = omega(t) on the others, so
/// omega is not absolutely continuous with respect to nu yet
/// \int_t^1 s nu(s) ds stays comparable to omega's tail.
///
/// Requires omega to be a certified upper-doubling (Dhat) member.
RadialWeight make_counterexample_nu(const RadialWeight& omega, double K,
                                    const RadialGrid& grid = RadialGrid::dyadic());

/// The closing three-weight example: omega(s) = s,
/// nu(s) = (1-s)^{p-1} log(e/(1-s))^{2(p-1)},
/// eta(s) = (1-s)^{p-1} log(e/(1-s))^{p-1}.
/// Weak (p,p) boundedness holds while the strong condition diverges.
WeightTriple make_log_example_triple(double p);

} // namespace radavg
