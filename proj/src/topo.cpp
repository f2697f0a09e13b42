#include "epnet/topo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "epnet/errors.hpp"
#include "epnet/rng.hpp"

namespace epnet {

namespace {

constexpr std::uint64_t pair_key(NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

void add_link(QuantumNetwork& net, NodeId u, NodeId v) {
    for (int k = 0; k < net.bonds_per_link; ++k) net.edges.push_back({u, v, 0.0});
}

void require_bonds(int bonds_per_link) {
    if (bonds_per_link < 1) throw InvalidArgument("bonds_per_link must be >= 1");
}

}  // namespace

std::string_view to_string(TopologyTag tag) {
    switch (tag) {
        case TopologyTag::Square: return "square";
        case TopologyTag::Honeycomb: return "honeycomb";
        case TopologyTag::Triangular: return "triangular";
        case TopologyTag::ErdosRenyi: return "erdos_renyi";
        case TopologyTag::WattsStrogatz: return "watts_strogatz";
        case TopologyTag::Custom: return "custom";
    }
    return "custom";
}

TopologyTag parse_topology(std::string_view name) {
    if (name == "square") return TopologyTag::Square;
    if (name == "honeycomb" || name == "hexagon") return TopologyTag::Honeycomb;
    if (name == "triangular" || name == "triangle") return TopologyTag::Triangular;
    if (name == "erdos_renyi" || name == "er") return TopologyTag::ErdosRenyi;
    if (name == "watts_strogatz" || name == "ws") return TopologyTag::WattsStrogatz;
    if (name == "custom") return TopologyTag::Custom;
    throw InvalidArgument("unknown topology '" + std::string(name) + "'");
}

void QuantumNetwork::validate() const {
    for (const Edge& e : edges) {
        if (e.u >= node_count || e.v >= node_count)
            throw InvalidArgument("edge endpoint out of range");
        if (e.u == e.v) throw InvalidArgument("self-loop on node " + std::to_string(e.u));
        if (!(e.scp >= 0.0 && e.scp <= 1.0)) throw InvalidArgument("edge scp outside [0, 1]");
    }
    if (!sublattice.empty() && sublattice.size() != node_count)
        throw InvalidArgument("sublattice labels do not match node_count");
    if (bonds_per_link < 1) throw InvalidArgument("bonds_per_link must be >= 1");
}

std::size_t QuantumNetwork::link_count() const {
    std::vector<std::uint64_t> keys;
    keys.reserve(edges.size());
    for (const Edge& e : edges) keys.push_back(pair_key(e.u, e.v));
    std::sort(keys.begin(), keys.end());
    return static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
}

// ---------------------------------------------------------------------------

DisjointSet::DisjointSet(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0U);
    largest_ = n == 0 ? 0 : 1;
}

std::uint32_t DisjointSet::find(std::uint32_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool DisjointSet::unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    largest_ = std::max<std::size_t>(largest_, size_[a]);
    return true;
}

// ---------------------------------------------------------------------------

QuantumNetwork make_square(int side_length, int bonds_per_link) {
    if (side_length < 2) throw InvalidArgument("square side_length must be >= 2");
    require_bonds(bonds_per_link);
    QuantumNetwork net;
    const auto L = static_cast<NodeId>(side_length);
    net.node_count = static_cast<std::size_t>(L) * L;
    net.topology = TopologyTag::Square;
    net.bonds_per_link = bonds_per_link;
    net.side = side_length;
    net.edges.reserve(2 * L * (L - 1) * bonds_per_link);
    for (NodeId r = 0; r < L; ++r) {
        for (NodeId c = 0; c < L; ++c) {
            const NodeId id = r * L + c;
            if (c + 1 < L) add_link(net, id, id + 1);
            if (r + 1 < L) add_link(net, id, id + L);
        }
    }
    return net;
}

QuantumNetwork make_honeycomb(int cells_per_side, int bonds_per_link) {
    if (cells_per_side < 2) throw InvalidArgument("honeycomb cells_per_side must be >= 2");
    require_bonds(bonds_per_link);
    QuantumNetwork net;
    const int rows = cells_per_side + 1;
    const int cols = 2 * cells_per_side + 2;
    net.node_count = static_cast<std::size_t>(rows) * cols;
    net.topology = TopologyTag::Honeycomb;
    net.bonds_per_link = bonds_per_link;
    net.side = cells_per_side;
    net.sublattice.resize(net.node_count);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const auto id = static_cast<NodeId>(r * cols + c);
            const bool even = (r + c) % 2 == 0;
            net.sublattice[id] = even ? Sublattice::A : Sublattice::B;
            if (c + 1 < cols) add_link(net, id, id + 1);
            if (even && r + 1 < rows) add_link(net, id, id + static_cast<NodeId>(cols));
        }
    }
    return net;
}

QuantumNetwork make_triangular(int side_length) {
    if (side_length < 2) throw InvalidArgument("triangular side_length must be >= 2");
    QuantumNetwork net;
    const auto L = static_cast<NodeId>(side_length);
    net.node_count = static_cast<std::size_t>(L) * L;
    net.topology = TopologyTag::Triangular;
    net.side = side_length;
    for (NodeId r = 0; r < L; ++r) {
        for (NodeId c = 0; c < L; ++c) {
            const NodeId id = r * L + c;
            if (c + 1 < L) add_link(net, id, id + 1);
            if (r + 1 < L) add_link(net, id, id + L);
            if (r + 1 < L && c + 1 < L) add_link(net, id, id + L + 1);
        }
    }
    return net;
}

QuantumNetwork make_erdos_renyi(std::size_t n, double edge_probability, std::uint64_t seed) {
    if (!(edge_probability >= 0.0 && edge_probability <= 1.0))
        throw InvalidArgument("edge_probability must be in [0, 1]");
    QuantumNetwork net;
    net.node_count = n;
    net.topology = TopologyTag::ErdosRenyi;
    if (n < 2 || edge_probability == 0.0) return net;
    if (edge_probability == 1.0) {
        for (NodeId v = 1; v < n; ++v)
            for (NodeId w = 0; w < v; ++w) net.edges.push_back({w, v, 0.0});
        return net;
    }
    // Geometric skipping over the lower-triangle pair sequence (Batagelj-Brandes).
    Rng rng(seed);
    const double log_q = std::log1p(-edge_probability);
    std::int64_t v = 1;
    std::int64_t w = -1;
    const auto nn = static_cast<std::int64_t>(n);
    while (v < nn) {
        const double skip = std::floor(std::log(rng.uniform_pos()) / log_q);
        w += 1 + static_cast<std::int64_t>(std::min(skip, 9.0e15));
        while (w >= v && v < nn) {
            w -= v;
            ++v;
        }
        if (v < nn) net.edges.push_back({static_cast<NodeId>(w), static_cast<NodeId>(v), 0.0});
    }
    return net;
}

QuantumNetwork make_watts_strogatz(std::size_t n, int ring_degree, double rewire_probability,
                                   std::uint64_t seed) {
    if (ring_degree < 2 || ring_degree % 2 != 0)
        throw InvalidArgument("ring_degree must be a positive even integer");
    if (static_cast<std::size_t>(ring_degree) >= n)
        throw InvalidArgument("ring_degree must be < n");
    if (!(rewire_probability >= 0.0 && rewire_probability <= 1.0))
        throw InvalidArgument("rewire_probability must be in [0, 1]");

    QuantumNetwork net;
    net.node_count = n;
    net.topology = TopologyTag::WattsStrogatz;
    const int half = ring_degree / 2;
    std::unordered_set<std::uint64_t> present;
    std::vector<std::size_t> degree(n, static_cast<std::size_t>(ring_degree));
    for (NodeId i = 0; i < n; ++i) {
        for (int j = 1; j <= half; ++j) {
            const auto t = static_cast<NodeId>((i + j) % n);
            net.edges.push_back({i, t, 0.0});
            present.insert(pair_key(i, t));
        }
    }

    Rng rng(seed);
    for (int j = 1; j <= half; ++j) {
        for (NodeId i = 0; i < n; ++i) {
            Edge& e = net.edges[static_cast<std::size_t>(i) * half + (j - 1)];
            if (!rng.bernoulli(rewire_probability)) continue;
            if (degree[i] >= n - 1) continue;  // nowhere to go
            NodeId target;
            do {
                target = static_cast<NodeId>(rng.below(n));
            } while (target == i || present.contains(pair_key(i, target)));
            present.erase(pair_key(e.u, e.v));
            --degree[e.v];
            e.v = target;
            ++degree[target];
            present.insert(pair_key(i, target));
        }
    }
    return net;
}

// ---------------------------------------------------------------------------

ComponentReport components(const ClassicalGraph& graph) {
    const std::size_t n = graph.node_count;
    DisjointSet dsu(n);
    for (auto [a, b] : graph.open_edges) {
        if (a >= n || b >= n) throw InvalidArgument("open edge endpoint out of range");
        dsu.unite(a, b);
    }
    ComponentReport report;
    report.component_of.assign(n, 0);
    std::vector<std::uint32_t> label_of_root(n, UINT32_MAX);
    for (std::uint32_t v = 0; v < n; ++v) {
        const std::uint32_t root = dsu.find(v);
        if (label_of_root[root] == UINT32_MAX) {
            label_of_root[root] = static_cast<std::uint32_t>(report.component_sizes.size());
            report.component_sizes.push_back(0);
        }
        const std::uint32_t label = label_of_root[root];
        report.component_of[v] = label;
        ++report.component_sizes[label];
    }
    report.largest_size = n == 0 ? 0 : dsu.largest();
    report.percolation_strength =
        n == 0 ? 0.0 : static_cast<double>(report.largest_size) / static_cast<double>(n);
    return report;
}

double percolation_strength(const ClassicalGraph& graph) {
    if (graph.node_count == 0) throw InvalidArgument("percolation strength of an empty graph");
    return static_cast<double>(largest_component_size(graph.node_count, graph.open_edges)) /
           static_cast<double>(graph.node_count);
}

std::size_t largest_component_size(std::size_t node_count,
                                   std::span<const std::pair<NodeId, NodeId>> edges) {
    if (node_count == 0) return 0;
    DisjointSet dsu(node_count);
    for (auto [a, b] : edges) {
        if (a >= node_count || b >= node_count)
            throw InvalidArgument("open edge endpoint out of range");
        dsu.unite(a, b);
    }
    return dsu.largest();
}

}  // namespace epnet
