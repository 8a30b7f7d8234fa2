#include "radavg/constructions.hpp"

namespace radavg {

RadialWeight make_counterexample_nu(const RadialWeight& omega, double K,
                                    const RadialGrid& grid) {
    const DoublingReport rep = classify_dhat(omega, grid);
    if (rep.verdict != Membership::Member)
        throw WeightError(
            "make_counterexample_nu: omega must be an upper-doubling member");
    return RadialWeight::oscillating_product(omega, K);
}

WeightTriple make_log_example_triple(double p) {
    if (!(p > 1.0))
        throw std::domain_error("make_log_example_triple: need p > 1");
    return WeightTriple{
        RadialWeight::monomial(1.0),
        RadialWeight::power_log(p - 1.0, 2.0 * (p - 1.0)),
        RadialWeight::power_log(p - 1.0, p - 1.0),
    };
}

} // namespace radavg
