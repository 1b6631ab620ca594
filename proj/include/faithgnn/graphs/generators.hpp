#pragma once

#include <cstdint>
#include <vector>

#include "faithgnn/graphs/graph.hpp"

namespace faithgnn::graphs {

enum class MotifKind { House, Cycle5, Wheel, Grid };

struct Motif {
    MotifKind kind;
    int num_nodes;
    std::vector<Edge> edges;
};

/// House: 4-cycle 0-1-2-3 with apex 4 on 0 and 1. Cycle5: 0..4 ring.
/// Wheel: hub 0 with rim 1..5. Grid: 3x3 lattice in row-major order.
Motif make_motif(MotifKind kind);

const char* to_string(MotifKind kind);

/// Preferential attachment grown from a complete core of attach_m + 1
/// nodes; each new node links to attach_m distinct existing nodes with
/// probability proportional to degree. No features, label 0.
AttributedGraph generate_ba(int num_nodes, int attach_m, std::uint64_t seed);

struct Ba2MotifOptions {
    int base_nodes = 25;
    int attach_m = 2;
};

/// Even-indexed graphs carry a house (class 0), odd ones a 5-cycle (class 1).
Dataset generate_ba2motif(int count, std::uint64_t seed, const Ba2MotifOptions& opt = {});

struct BamsOptions {
    int total_nodes = 40;
    int attach_m = 1;
};

/// Label 1 iff exactly two of {house, wheel, grid} are planted.
Dataset generate_bams(int count, std::uint64_t seed, const BamsOptions& opt = {});

} // namespace faithgnn::graphs
