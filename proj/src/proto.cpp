#include "epnet/proto.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "epnet/errors.hpp"
#include "epnet/states.hpp"

namespace epnet {

std::string_view to_string(MultiedgeMode mode) {
    return mode == MultiedgeMode::Equal ? "equal" : "independent";
}

MultiedgeMode parse_multiedge_mode(std::string_view name) {
    if (name == "equal") return MultiedgeMode::Equal;
    if (name == "independent") return MultiedgeMode::Independent;
    throw InvalidArgument("unknown multiedge mode '" + std::string(name) + "'");
}

LinkIndex build_link_index(const QuantumNetwork& network) {
    const auto& edges = network.edges;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed;
    keyed.reserve(edges.size());
    for (std::uint32_t i = 0; i < edges.size(); ++i) {
        NodeId a = edges[i].u, b = edges[i].v;
        if (a > b) std::swap(a, b);
        keyed.emplace_back((static_cast<std::uint64_t>(a) << 32) | b, i);
    }
    std::sort(keyed.begin(), keyed.end());

    // Runs of equal keys are the links; reorder the runs by first edge index.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> runs;  // (begin, end) in `keyed`
    for (std::uint32_t i = 0; i < keyed.size();) {
        std::uint32_t j = i + 1;
        while (j < keyed.size() && keyed[j].first == keyed[i].first) ++j;
        runs.emplace_back(i, j);
        i = j;
    }
    std::sort(runs.begin(), runs.end(),
              [&](const auto& x, const auto& y) { return keyed[x.first].second < keyed[y.first].second; });

    LinkIndex index;
    index.edge_order.reserve(edges.size());
    index.offsets.reserve(runs.size() + 1);
    index.offsets.push_back(0);
    for (auto [b, e] : runs) {
        for (std::uint32_t k = b; k < e; ++k) index.edge_order.push_back(keyed[k].second);
        index.offsets.push_back(static_cast<std::uint32_t>(index.edge_order.size()));
    }
    return index;
}

// --- SCP assignment ---------------------------------------------------------

QuantumNetwork assign_scps(const QuantumNetwork& network, const ScpDistribution& dist, MultiedgeMode mode,
                           Rng& rng) {
    if (mode == MultiedgeMode::Independent) {
        QuantumNetwork out = network;
        for (Edge& e : out.edges) e.scp = sample(dist, rng);
        out.scps_assigned = true;
        return out;
    }
    return assign_scps(network, build_link_index(network), dist, mode, rng);
}

QuantumNetwork assign_scps(const QuantumNetwork& network, const LinkIndex& links, const ScpDistribution& dist,
                           MultiedgeMode mode, Rng& rng) {
    QuantumNetwork out = network;
    if (mode == MultiedgeMode::Independent) {
        for (Edge& e : out.edges) e.scp = sample(dist, rng);
    } else {
        for (std::size_t g = 0; g < links.link_count(); ++g) {
            const double p = sample(dist, rng);
            for (std::uint32_t k = links.offsets[g]; k < links.offsets[g + 1]; ++k)
                out.edges[links.edge_order[k]].scp = p;
        }
    }
    out.scps_assigned = true;
    return out;
}

// --- CEP --------------------------------------------------------------------

namespace {

double link_probability(const QuantumNetwork& network, const LinkIndex& links, std::size_t g,
                        std::vector<double>& scratch) {
    const std::uint32_t b = links.offsets[g], e = links.offsets[g + 1];
    if (e - b == 1) return network.edges[links.edge_order[b]].scp;
    scratch.clear();
    for (std::uint32_t k = b; k < e; ++k) scratch.push_back(network.edges[links.edge_order[k]].scp);
    return distill_many(scratch);
}

void check_assigned(const QuantumNetwork& network, bool strict) {
    if (strict && !network.scps_assigned)
        throw InvalidArgument("network SCPs were never assigned");
}

}  // namespace

ProtocolOutcome cep(const QuantumNetwork& network, Rng& rng, bool strict) {
    return cep(network, build_link_index(network), rng, strict);
}

ProtocolOutcome cep(const QuantumNetwork& network, const LinkIndex& links, Rng& rng, bool strict) {
    check_assigned(network, strict);
    ProtocolOutcome outcome;
    outcome.open_graph.node_count = network.node_count;
    outcome.edges_attempted = links.link_count();
    std::vector<double> scratch;
    for (std::size_t g = 0; g < links.link_count(); ++g) {
        const double p = link_probability(network, links, g, scratch);
        if (rng.uniform() < p) {
            const Edge& e = network.edges[links.edge_order[links.offsets[g]]];
            outcome.open_graph.open_edges.emplace_back(e.u, e.v);
        }
    }
    outcome.edges_converted = outcome.open_graph.open_edges.size();
    outcome.report = components(outcome.open_graph);
    return outcome;
}

std::pair<std::size_t, std::size_t> cep_largest_cluster(const QuantumNetwork& network, const LinkIndex& links,
                                                        Rng& rng) {
    DisjointSet dsu(network.node_count);
    std::size_t converted = 0;
    std::vector<double> scratch;
    for (std::size_t g = 0; g < links.link_count(); ++g) {
        const double p = link_probability(network, links, g, scratch);
        if (rng.uniform() < p) {
            const Edge& e = network.edges[links.edge_order[links.offsets[g]]];
            dsu.unite(e.u, e.v);
            ++converted;
        }
    }
    return {network.node_count == 0 ? 0 : dsu.largest(), converted};
}

// --- q-swaps ----------------------------------------------------------------

namespace {

/// Mutable multigraph with tombstones, so a batch of swaps costs O(degree) each.
/// Tracks for every edge the pair of original edges whose minimum it carries.
class SwapWorkspace {
public:
    using Origin = std::pair<std::uint32_t, std::uint32_t>;

    explicit SwapWorkspace(const QuantumNetwork& net)
        : net_(net), edge_alive_(net.edges.size(), true), node_alive_(net.node_count, true), incident_(net.node_count) {
        origin_.reserve(net_.edges.size());
        for (std::uint32_t i = 0; i < net_.edges.size(); ++i) {
            incident_[net_.edges[i].u].push_back(i);
            incident_[net_.edges[i].v].push_back(i);
            origin_.emplace_back(i, i);
        }
    }

    /// Neighbor -> incident bond indices (stored order), neighbors ascending.
    std::map<NodeId, std::vector<std::uint32_t>> bonds_by_neighbor(NodeId center) const {
        std::map<NodeId, std::vector<std::uint32_t>> out;
        for (std::uint32_t i : incident_[center]) {
            if (!edge_alive_[i]) continue;
            const Edge& e = net_.edges[i];
            out[e.u == center ? e.v : e.u].push_back(i);
        }
        return out;
    }

    void remove_node(NodeId center) {
        for (std::uint32_t i : incident_[center]) edge_alive_[i] = false;
        incident_[center].clear();
        node_alive_[center] = false;
    }

    void swap(NodeId center, BondPairing pairing) {
        if (center >= net_.node_count || !node_alive_[center])
            throw InvalidArgument("q-swap centre " + std::to_string(center) + " is not a node");
        auto groups = bonds_by_neighbor(center);
        const std::size_t q = groups.size();
        if (q < 2) throw InvalidArgument("q-swap needs at least 2 neighbors, node has " + std::to_string(q));
        const std::size_t m = groups.begin()->second.size();
        for (const auto& [nb, bonds] : groups)
            if (bonds.size() != m) throw InvalidArgument("q-swap centre has mixed bond multiplicities");
        if (m != 1 && m != 2) throw InvalidArgument("q-swap supports single or double bonds only");
        if (m == 1 && q != 2) throw InvalidArgument("single-bond q-swap is only defined for q = 2");

        std::vector<NodeId> nbs;
        std::vector<std::vector<std::uint32_t>> bonds;
        for (auto& [nb, b] : groups) {
            if (pairing == BondPairing::Sorted)
                std::stable_sort(b.begin(), b.end(),
                                 [&](std::uint32_t x, std::uint32_t y) { return net_.edges[x].scp < net_.edges[y].scp; });
            nbs.push_back(nb);
            bonds.push_back(std::move(b));
        }
        remove_node(center);

        if (m == 1) {
            add_swapped(nbs[0], nbs[1], bonds[0][0], bonds[1][0]);
            return;
        }
        // Cycle edge i joins n_i and n_{i+1}. Neighbor j spends bond 0 on its
        // lower-indexed cycle edge: edge 0 for j = 0 (its other one is q-1),
        // edge j-1 otherwise.
        for (std::size_t i = 0; i < q; ++i) {
            const std::size_t j = (i + 1) % q;
            const std::uint32_t from_i = i == 0 ? bonds[i][0] : bonds[i][1];
            const std::uint32_t from_j = j == 0 ? bonds[j][1] : bonds[j][0];
            add_swapped(nbs[i], nbs[j], from_i, from_j);
        }
    }

    /// Drops dead nodes/edges and renumbers survivors densely. `origins`, if
    /// given, receives the source pair of every surviving edge.
    QuantumNetwork compact(std::vector<Origin>* origins = nullptr) const {
        QuantumNetwork out;
        out.topology = TopologyTag::Custom;
        out.bonds_per_link = net_.bonds_per_link;
        out.scps_assigned = net_.scps_assigned;
        std::vector<NodeId> new_id(net_.node_count, UINT32_MAX);
        NodeId next = 0;
        for (NodeId v = 0; v < net_.node_count; ++v) {
            if (!node_alive_[v]) continue;
            new_id[v] = next++;
            if (!net_.sublattice.empty()) out.sublattice.push_back(net_.sublattice[v]);
        }
        out.node_count = next;
        for (std::uint32_t i = 0; i < net_.edges.size(); ++i) {
            if (!edge_alive_[i]) continue;
            const Edge& e = net_.edges[i];
            out.edges.push_back({new_id[e.u], new_id[e.v], e.scp});
            if (origins) origins->push_back(origin_[i]);
        }
        return out;
    }

private:
    void add_swapped(NodeId a, NodeId b, std::uint32_t bond_a, std::uint32_t bond_b) {
        const auto idx = static_cast<std::uint32_t>(net_.edges.size());
        net_.edges.push_back({a, b, std::min(net_.edges[bond_a].scp, net_.edges[bond_b].scp)});
        edge_alive_.push_back(true);
        // Exact only while swaps consume original bonds, which holds for the
        // honeycomb transformation (B nodes never touch swapped edges).
        origin_.emplace_back(origin_[bond_a].first, origin_[bond_b].first);
        incident_[a].push_back(idx);
        incident_[b].push_back(idx);
    }

    QuantumNetwork net_;
    std::vector<bool> edge_alive_;
    std::vector<bool> node_alive_;
    std::vector<std::vector<std::uint32_t>> incident_;
    std::vector<Origin> origin_;
};

SwapWorkspace run_honeycomb_swaps(const QuantumNetwork& network, BondPairing pairing) {
    if (network.topology != TopologyTag::Honeycomb || network.sublattice.size() != network.node_count)
        throw UnsupportedOperation("QEP transformation needs a honeycomb network with sublattice labels");
    if (network.bonds_per_link != 2)
        throw UnsupportedOperation("QEP transformation needs a double-bond honeycomb");

    SwapWorkspace ws(network);
    for (NodeId v = 0; v < network.node_count; ++v) {
        if (network.sublattice[v] != Sublattice::B) continue;
        if (ws.bonds_by_neighbor(v).size() < 2) {
            ws.remove_node(v);
        } else {
            ws.swap(v, pairing);
        }
    }
    return ws;
}

void mark_triangular(QuantumNetwork& out) {
    out.topology = TopologyTag::Triangular;
    out.bonds_per_link = 1;
    out.sublattice.clear();
}

}  // namespace

QuantumNetwork q_swap(const QuantumNetwork& network, NodeId center, BondPairing pairing) {
    SwapWorkspace ws(network);
    ws.swap(center, pairing);
    QuantumNetwork out = ws.compact();
    out.side = network.side;
    return out;
}

QuantumNetwork qep_honeycomb(const QuantumNetwork& network, BondPairing pairing) {
    QuantumNetwork out = run_honeycomb_swaps(network, pairing).compact();
    mark_triangular(out);
    return out;
}

QepPlan build_qep_plan(const QuantumNetwork& honeycomb) {
    QepPlan plan;
    plan.input_edges = honeycomb.edges.size();
    plan.output = run_honeycomb_swaps(honeycomb, BondPairing::Stored).compact(&plan.sources);
    mark_triangular(plan.output);
    return plan;
}

QuantumNetwork apply_qep_plan(const QepPlan& plan, const QuantumNetwork& honeycomb) {
    if (honeycomb.edges.size() != plan.input_edges)
        throw InvalidArgument("network does not match the QEP plan it is applied to");
    QuantumNetwork out = plan.output;
    for (std::size_t k = 0; k < out.edges.size(); ++k) {
        const auto [a, b] = plan.sources[k];
        out.edges[k].scp = std::min(honeycomb.edges[a].scp, honeycomb.edges[b].scp);
    }
    out.scps_assigned = honeycomb.scps_assigned;
    return out;
}

}  // namespace epnet
