#pragma once

#include "radavg/grid.hpp"

#include <functional>
#include <string>
#include <vector>

namespace radavg {

enum class Verdict { Bounded, DivergesLog, DivergesPower, DivergesOther, Infinite };

std::string to_string(Verdict v);

/// Values of a supremum-type expression swept over a radial grid, with the
/// running supremum and a divergence classification.
///
/// The classification protocol is fixed so reports are reproducible:
/// per-level suprema are taken at the dyadic band edges r = 1-2^{-j}
/// (these nodes do not move under band refinement); the verdict is
/// Bounded when the running supremum changes by < 0.1% over the last
/// 8 levels, Infinite when any value is +inf, and otherwise the
/// best-fitting growth model (linear, exponential or power in the level)
/// with R^2 > 0.98 decides between DivergesLog, DivergesPower and
/// DivergesOther.
struct ConditionProfile {
    std::vector<double> nodes;
    std::vector<int> levels;
    std::vector<double> values;      // extended reals; +inf allowed
    std::vector<double> running_sup; // nondecreasing

    Verdict verdict = Verdict::Bounded;
    double sup_estimate = 0.0; // final running supremum (finite cases)
    double rate = 0.0;         // DivergesLog: supremum increment per level
    double power = 0.0;        // DivergesPower: exponent of 1/(1-r)
    double fit_quality = 0.0;  // R^2 of the chosen model, in [0,1]

    // Power-of-level diagnostic, recorded for every profile:
    // running sup ~ level^alpha with the given R^2.
    double level_power_alpha = 0.0;
    double level_power_r2 = 0.0;

    // Optional per-node payload (e.g. the maximizing inner parameter).
    std::vector<double> aux;

    bool diverges() const { return verdict != Verdict::Bounded; }
};

/// Evaluates expr at every grid node and classifies the running supremum.
ConditionProfile sup_profile(const std::function<double(double)>& expr,
                             const RadialGrid& grid);

/// Classification entry point shared by sup_profile and callers that fill
/// the node values themselves.
void classify_profile(ConditionProfile& p, int grid_levels);

/// Least-squares line fit y ~ c0 + c1 x; returns {c0, c1, r2}.
struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double r2 = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

} // namespace radavg
