#pragma once

#include <cstdint>
#include <vector>

#include "epnet/dist.hpp"
#include "epnet/rng.hpp"
#include "epnet/topo.hpp"

namespace epnet {

/// How parallel bonds of one link get their SCPs.
enum class MultiedgeMode {
    Equal,        // one draw per link, copied to every bond
    Independent,  // one draw per bond
};

std::string_view to_string(MultiedgeMode mode);
MultiedgeMode parse_multiedge_mode(std::string_view name);

/// Edges grouped by unordered node pair. Groups appear in order of their first
/// edge; inside a group edges keep their stored order.
struct LinkIndex {
    std::vector<std::uint32_t> edge_order;
    std::vector<std::uint32_t> offsets;  // group g is edge_order[offsets[g] .. offsets[g+1])

    std::size_t link_count() const { return offsets.empty() ? 0 : offsets.size() - 1; }
};

LinkIndex build_link_index(const QuantumNetwork& network);

struct ProtocolOutcome {
    ClassicalGraph open_graph;
    ComponentReport report;
    std::size_t edges_attempted = 0;  // links given a conversion attempt
    std::size_t edges_converted = 0;  // links that became a singlet
};

QuantumNetwork assign_scps(const QuantumNetwork& network, const ScpDistribution& dist, MultiedgeMode mode,
                           Rng& rng);
/// Same, reusing a link index of `network` (lets sweeps skip the regrouping).
QuantumNetwork assign_scps(const QuantumNetwork& network, const LinkIndex& links, const ScpDistribution& dist,
                           MultiedgeMode mode, Rng& rng);

/// Classical entanglement percolation: every link is jointly distilled over its
/// parallel bonds and kept with that probability (one Bernoulli trial per link).
/// With `strict`, a network whose SCPs were never assigned is rejected;
/// otherwise unassigned SCPs simply read as 0.
ProtocolOutcome cep(const QuantumNetwork& network, Rng& rng, bool strict = false);
ProtocolOutcome cep(const QuantumNetwork& network, const LinkIndex& links, Rng& rng, bool strict = false);

/// Lean CEP for sweeps: returns (largest cluster size, converted links) without
/// materializing the open graph or the component labels.
std::pair<std::size_t, std::size_t> cep_largest_cluster(const QuantumNetwork& network, const LinkIndex& links,
                                                        Rng& rng);

enum class BondPairing {
    Stored,  // bonds consumed in stored order (default)
    Sorted,  // experimental: each neighbor's bonds sorted ascending first
};

/// Entanglement swapping at the centre of a star.
///
/// Neighbors are taken in ascending id order n_0..n_{q-1}. With single bonds
/// only q = 2 is allowed and yields one edge. With double bonds the star
/// becomes the cycle n_0-n_1-...-n_{q-1}-n_0; cycle edge i takes one bond of
/// n_i and one of n_{i+1}, each neighbor spending its first bond on its
/// lower-indexed cycle edge, and gets the minimum of the two SCPs.
///
/// The centre is removed and node ids above it shift down by one.
QuantumNetwork q_swap(const QuantumNetwork& network, NodeId center, BondPairing pairing = BondPairing::Stored);

/// q-swaps every B node of a double-bond honeycomb, ascending by id. Degree-2
/// boundary nodes swap with q = 2, degree-1 nodes are dropped. The result keeps
/// the A nodes only (in ascending order) and, in the bulk, is a triangular lattice.
/// Throws UnsupportedOperation for anything but a double-bond honeycomb.
QuantumNetwork qep_honeycomb(const QuantumNetwork& network, BondPairing pairing = BondPairing::Stored);

/// The honeycomb transformation with stored pairing depends only on the
/// structure, so it can be computed once and replayed on new SCPs: output
/// edge k carries min(scp[sources[k].first], scp[sources[k].second]).
struct QepPlan {
    QuantumNetwork output;  // SCPs meaningless
    std::vector<std::pair<std::uint32_t, std::uint32_t>> sources;
    std::size_t input_edges = 0;
};

QepPlan build_qep_plan(const QuantumNetwork& honeycomb);
/// Equals qep_honeycomb(honeycomb) for any SCPs on the planned structure.
QuantumNetwork apply_qep_plan(const QepPlan& plan, const QuantumNetwork& honeycomb);

}  // namespace epnet
