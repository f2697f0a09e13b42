#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace epnet {

using NodeId = std::uint32_t;

enum class TopologyTag { Square, Honeycomb, Triangular, ErdosRenyi, WattsStrogatz, Custom };

std::string_view to_string(TopologyTag tag);
/// Accepts the lower-case names used on the command line ("square", "honeycomb", ...).
TopologyTag parse_topology(std::string_view name);

enum class Sublattice : std::int8_t { None = -1, A = 0, B = 1 };

/// One entangled pair shared by nodes u and v.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;
    double scp = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Multigraph quantum network. Parallel edges are separate entries in `edges`.
///
/// Generators emit the parallel bonds of one link consecutively. SCPs start at
/// zero and `scps_assigned` stays false until a protocol assigns them.
struct QuantumNetwork {
    std::size_t node_count = 0;
    std::vector<Edge> edges;
    TopologyTag topology = TopologyTag::Custom;
    int bonds_per_link = 1;
    int side = 0;  // lattice size parameter; 0 for random graphs
    bool scps_assigned = false;
    // Honeycomb only: A/B label per node. Empty otherwise.
    std::vector<Sublattice> sublattice;

    /// Throws InvalidArgument if any node id, self-loop, or SCP is out of contract.
    void validate() const;

    /// Distinct unordered node pairs.
    std::size_t link_count() const;
};

/// Post-conversion graph: the singlets that survived.
struct ClassicalGraph {
    std::size_t node_count = 0;
    std::vector<std::pair<NodeId, NodeId>> open_edges;
};

struct ComponentReport {
    std::vector<std::uint32_t> component_of;  // dense ids 0..k-1, by first appearance
    std::vector<std::size_t> component_sizes;
    std::size_t largest_size = 0;
    double percolation_strength = 0.0;
};

/// Union-find with path halving and union by size.
class DisjointSet {
public:
    explicit DisjointSet(std::size_t n);

    std::uint32_t find(std::uint32_t x);
    /// Returns false if already in the same set.
    bool unite(std::uint32_t a, std::uint32_t b);
    std::size_t size_of(std::uint32_t x) { return size_[find(x)]; }
    std::size_t largest() const { return largest_; }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
    std::size_t largest_ = 1;
};

// Generators. Lattices use open boundaries and row-major node ids.

/// L x L square lattice, 2L(L-1) links.
QuantumNetwork make_square(int side_length, int bonds_per_link = 1);

/// Brick-wall honeycomb with `cells_per_side` x `cells_per_side` hexagonal
/// cells: (n+1) rows of 2n+2 nodes. Node (r, c) always links to (r, c+1) and
/// links down to (r+1, c) when r+c is even. Sublattice A is r+c even.
QuantumNetwork make_honeycomb(int cells_per_side, int bonds_per_link = 1);

/// L x L triangular lattice: square grid plus the (r, c)-(r+1, c+1) diagonal.
QuantumNetwork make_triangular(int side_length);

QuantumNetwork make_erdos_renyi(std::size_t n, double edge_probability, std::uint64_t seed);

QuantumNetwork make_watts_strogatz(std::size_t n, int ring_degree, double rewire_probability,
                                   std::uint64_t seed);

/// Row-major coordinates (row, col) of a lattice node.
inline std::pair<int, int> honeycomb_coords(NodeId id, int cells_per_side) {
    const int cols = 2 * cells_per_side + 2;
    return {static_cast<int>(id) / cols, static_cast<int>(id) % cols};
}

ComponentReport components(const ClassicalGraph& graph);

/// Fraction of nodes in the largest component. Throws on an empty graph.
double percolation_strength(const ClassicalGraph& graph);

/// Largest component size only; skips the labelling pass.
std::size_t largest_component_size(std::size_t node_count,
                                   std::span<const std::pair<NodeId, NodeId>> edges);

// JSON: {"node_count", "topology", "edges": [[u, v, scp], ...], "meta": {...}}
std::string to_json(const QuantumNetwork& net, int indent = -1);
QuantumNetwork network_from_json(std::string_view text);
void save_network(const QuantumNetwork& net, const std::string& path);
QuantumNetwork load_network(const std::string& path);

}  // namespace epnet
