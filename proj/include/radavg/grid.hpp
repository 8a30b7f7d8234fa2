#pragma once

#include <stdexcept>
#include <vector>

namespace radavg {

/// Radial probe grid clustered at the boundary: J dyadic bands
/// [1-2^{-j}, 1-2^{-j-1}), j = 0..J-1, with m equispaced points per band,
/// closed by the single node 1-2^{-J}. Node 0 is always present.
struct RadialGrid {
    int levels = 40;          // J
    int points_per_level = 8; // m
    std::vector<double> nodes;
    std::vector<int> node_level; // dyadic band index of each node

    static RadialGrid dyadic(int J = 40, int m = 8);

    std::size_t size() const { return nodes.size(); }
    double max_node() const { return nodes.back(); }
};

/// Radial grid paired with an equispaced angular grid on [0, 2pi);
/// the angular count is a power of two, at least 16.
struct PolarGrid {
    RadialGrid radial;
    int angular = 256;

    static PolarGrid make(const RadialGrid& r, int angular = 256);
    double angle(int k) const;
};

} // namespace radavg
