#pragma once

#include "radavg/constructions.hpp"
#include "radavg/grid.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace radavg {

/// Empirical operator-norm bound from a test-function family. The value
/// is a certified lower bound of the operator norm (each family member is
/// an admissible function and the reported value is its Rayleigh-type
/// ratio); `maximizer` holds the family parameters achieving it.
struct NormEstimate {
    enum class Kind { StrongLower, WeakLower };
    Kind kind = Kind::StrongLower;
    double value = 0.0;
    std::string family;
    std::map<std::string, double> maximizer;
};

struct StrongFamilies {
    bool muckenhoupt = true;     // extremal tail test functions over an r-grid
    int kernel_N = 0;            // kernel-derivative family of this order (0 = off)
    std::vector<double> kernel_a_grid = {0.5, 0.75, 0.9};
    int random_steps = 0;        // number of random step fields (0 = off)
    std::uint64_t seed = 0;
};

/// Ratio ||T f_r||_{L^p_eta} / ||f_r||_{L^p_nu} for the extremal tail
/// test function f_r (the Muckenhoupt-type family member at radius r).
double strong_ratio_extremal(const WeightTriple& triple, double p, double r);

/// max over the requested families of ||T f||_{L^p_eta} / ||f||_{L^p_nu}.
NormEstimate estimate_strong_norm(const WeightTriple& triple, double p,
                                  const StrongFamilies& families,
                                  const RadialGrid& grid);

/// Weak-type pipeline value at one (t, r): the extremal field f_r is
/// averaged, its level set at lambda_{r,t} is measured, and
/// lambda * measure^{1/p} / ||f_r||_{L^p_nu} is returned. Algebraically
/// equal to the weak-type condition value N(t, r).
double weak_pipeline_value(const WeightTriple& triple, double p, double t,
                           double r);

/// sup of weak_pipeline_value over the (t, r) grid.
NormEstimate estimate_weak_norm(const WeightTriple& triple, double p,
                                const std::vector<std::pair<double, double>>& rt_grid);

} // namespace radavg
