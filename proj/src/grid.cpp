#include "radavg/grid.hpp"

#include <cmath>

namespace radavg {

RadialGrid RadialGrid::dyadic(int J, int m) {
    if (J < 1 || m < 1) throw std::invalid_argument("RadialGrid: J, m must be positive");
    RadialGrid g;
    g.levels = J;
    g.points_per_level = m;
    g.nodes.reserve(static_cast<std::size_t>(J) * m + 1);
    for (int j = 0; j < J; ++j) {
        const double lo = 1.0 - std::ldexp(1.0, -j);
        const double width = std::ldexp(1.0, -j - 1);
        for (int k = 0; k < m; ++k) {
            g.nodes.push_back(lo + width * (static_cast<double>(k) / m));
            g.node_level.push_back(j);
        }
    }
    g.nodes.push_back(1.0 - std::ldexp(1.0, -J));
    g.node_level.push_back(J);
    return g;
}

PolarGrid PolarGrid::make(const RadialGrid& r, int angular) {
    if (angular < 16 || (angular & (angular - 1)) != 0)
        throw std::invalid_argument("PolarGrid: angular count must be a power of two >= 16");
    return PolarGrid{r, angular};
}

double PolarGrid::angle(int k) const {
    return 2.0 * M_PI * static_cast<double>(k) / angular;
}

} // namespace radavg
