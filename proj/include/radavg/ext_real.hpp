#pragma once

#include <cmath>
#include <limits>

// Extended-real helpers shared by every condition evaluator.
//
// All supremum-type quantities in this library live on [0, +inf]. Two
// conventions are applied uniformly so that vanishing weights produce
// meaningful answers instead of NaNs:
//
//   0 * inf = 0      (integrands vanish wherever the measure density does)
//   x / 0   = inf    for x > 0, and 0 / 0 = 0
//
// Plain doubles are used as the carrier; +inf is a legitimate value, NaN is
// not and these helpers never produce one from conforming inputs.

namespace radavg {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_inf(double x) { return std::isinf(x) && x > 0; }

/// Product with the 0 * inf = 0 convention.
inline double ext_mul(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return a * b;
}

/// Quotient with x/0 = inf (x > 0) and 0/0 = 0.
inline double ext_div(double num, double den) {
    if (den == 0.0) return num > 0.0 ? kInf : 0.0;
    if (std::isinf(den)) return std::isinf(num) ? kInf : 0.0;
    return num / den;
}

/// pow on [0, inf] with nonnegative base; inf^y = inf for y > 0,
/// x^0 = 1, inf^y = 0 for y < 0.
inline double ext_pow(double x, double y) {
    if (y == 0.0) return 1.0;
    if (std::isinf(x)) return y > 0.0 ? kInf : 0.0;
    if (x == 0.0) return y > 0.0 ? 0.0 : kInf;
    return std::pow(x, y);
}

} // namespace radavg
