#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "bfs_oracle.hpp"
#include "epnet/errors.hpp"
#include "epnet/rng.hpp"
#include "epnet/topo.hpp"

using namespace epnet;

namespace {

std::map<std::pair<NodeId, NodeId>, int> multiplicities(const QuantumNetwork& net) {
    std::map<std::pair<NodeId, NodeId>, int> m;
    for (const Edge& e : net.edges) ++m[{std::min(e.u, e.v), std::max(e.u, e.v)}];
    return m;
}

std::vector<std::size_t> link_degrees(const QuantumNetwork& net) {
    std::vector<std::size_t> deg(net.node_count, 0);
    for (const auto& [key, count] : multiplicities(net)) {
        ++deg[key.first];
        ++deg[key.second];
    }
    return deg;
}

ClassicalGraph all_open(const QuantumNetwork& net) {
    ClassicalGraph g{net.node_count, {}};
    for (const Edge& e : net.edges) g.open_edges.emplace_back(e.u, e.v);
    return g;
}

}  // namespace

TEST(Square, Counts) {
    const auto big = make_square(100, 1);
    EXPECT_EQ(big.node_count, 10000u);
    EXPECT_EQ(big.link_count(), 19800u);
    EXPECT_EQ(big.edges.size(), 19800u);

    const auto tiny = make_square(2, 1);
    EXPECT_EQ(tiny.node_count, 4u);
    EXPECT_EQ(tiny.link_count(), 4u);
}

TEST(Square, DoubleBondThreeByThree) {
    const auto net = make_square(3, 2);
    EXPECT_EQ(net.node_count, 9u);
    // rows: 3 rows x 2 horizontal links, columns: 3 x 2 vertical links
    std::set<std::pair<NodeId, NodeId>> expected;
    for (NodeId r = 0; r < 3; ++r)
        for (NodeId c = 0; c < 3; ++c) {
            if (c + 1 < 3) expected.insert({3 * r + c, 3 * r + c + 1});
            if (r + 1 < 3) expected.insert({3 * r + c, 3 * (r + 1) + c});
        }
    ASSERT_EQ(expected.size(), 12u);
    const auto m = multiplicities(net);
    ASSERT_EQ(m.size(), 12u);
    for (const auto& [key, count] : m) {
        EXPECT_TRUE(expected.count(key));
        EXPECT_EQ(count, 2);
    }
    EXPECT_EQ(net.edges.size(), 24u);
    for (const Edge& e : net.edges) EXPECT_EQ(e.scp, 0.0);
    EXPECT_FALSE(net.scps_assigned);
}

TEST(Square, EdgeCountFormula) {
    for (int L = 2; L <= 12; ++L)
        for (int b = 1; b <= 3; ++b)
            EXPECT_EQ(make_square(L, b).edges.size(), static_cast<std::size_t>(b * 2 * L * (L - 1)));
}

TEST(Square, RejectsTinySide) {
    EXPECT_THROW(make_square(1), InvalidArgument);
    EXPECT_THROW(make_square(3, 0), InvalidArgument);
}

TEST(Honeycomb, NodeCountByEnumeration) {
    for (int n = 2; n <= 9; ++n) {
        const auto net = make_honeycomb(n, 1);
        std::set<std::pair<int, int>> coords;
        for (NodeId v = 0; v < net.node_count; ++v) coords.insert(honeycomb_coords(v, n));
        int rows = 0, cols = 0;
        for (auto [r, c] : coords) {
            rows = std::max(rows, r + 1);
            cols = std::max(cols, c + 1);
        }
        EXPECT_EQ(coords.size(), static_cast<std::size_t>(rows * cols));
        EXPECT_EQ(net.node_count, static_cast<std::size_t>(2 * (n + 1) * (n + 1)));
        // Euler's formula on the connected planar embedding: bounded faces = E - V + 1.
        EXPECT_EQ(net.link_count() + 1 - net.node_count, static_cast<std::size_t>(n * n));
        EXPECT_EQ(components(all_open(net)).component_sizes.size(), 1u);
    }
}

TEST(Honeycomb, BipartiteWithDegreeThreeInterior) {
    const int n = 6;
    const auto net = make_honeycomb(n, 1);
    ASSERT_EQ(net.sublattice.size(), net.node_count);
    for (const Edge& e : net.edges) EXPECT_NE(net.sublattice[e.u], net.sublattice[e.v]);
    const auto deg = link_degrees(net);
    for (NodeId v = 0; v < net.node_count; ++v) {
        EXPECT_LE(deg[v], 3u);
        const auto [r, c] = honeycomb_coords(v, n);
        if (r > 0 && r < n && c > 0 && c < 2 * n + 1) EXPECT_EQ(deg[v], 3u) << r << "," << c;
    }
}

TEST(Honeycomb, DoubleBondMultiplicity) {
    const auto net = make_honeycomb(5, 2);
    EXPECT_EQ(net.bonds_per_link, 2);
    for (const auto& [key, count] : multiplicities(net)) EXPECT_EQ(count, 2);
    EXPECT_EQ(net.edges.size(), 2 * net.link_count());
    EXPECT_THROW(make_honeycomb(1), InvalidArgument);
}

TEST(Triangular, TwoByTwo) {
    const auto net = make_triangular(2);
    EXPECT_EQ(net.node_count, 4u);
    EXPECT_EQ(net.link_count(), 5u);
    const auto deg = link_degrees(net);
    // the diagonal endpoints belong to both triangles
    EXPECT_EQ(std::count(deg.begin(), deg.end(), 3u), 2);
    EXPECT_EQ(std::count(deg.begin(), deg.end(), 2u), 2);
}

TEST(Triangular, InteriorDegreeSix) {
    const int L = 7;
    const auto net = make_triangular(L);
    const auto deg = link_degrees(net);
    for (int r = 1; r < L - 1; ++r)
        for (int c = 1; c < L - 1; ++c) EXPECT_EQ(deg[r * L + c], 6u);
    EXPECT_THROW(make_triangular(1), InvalidArgument);
}

TEST(ErdosRenyi, Extremes) {
    EXPECT_EQ(make_erdos_renyi(50, 0.0, 1).edges.size(), 0u);
    const auto k5 = make_erdos_renyi(5, 1.0, 1);
    EXPECT_EQ(k5.edges.size(), 10u);
    EXPECT_EQ(k5.link_count(), 10u);
    EXPECT_THROW(make_erdos_renyi(5, 1.5, 1), InvalidArgument);
    EXPECT_THROW(make_erdos_renyi(5, -0.1, 1), InvalidArgument);
}

TEST(ErdosRenyi, MeanDegree) {
    const std::size_t n = 10000;
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto net = make_erdos_renyi(n, 3.0 / n, seed);
        net.validate();
        EXPECT_EQ(net.link_count(), net.edges.size());
        total += 2.0 * static_cast<double>(net.edges.size()) / n;
    }
    EXPECT_NEAR(total / 20.0, 3.0, 0.15);
}

TEST(WattsStrogatz, RingWithoutRewiring) {
    const auto net = make_watts_strogatz(20, 4, 0.0, 3);
    EXPECT_EQ(net.edges.size(), 40u);
    for (std::size_t d : link_degrees(net)) EXPECT_EQ(d, 4u);
}

TEST(WattsStrogatz, RewiringKeepsEdgeCount) {
    double variance_sum = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        for (double beta : {0.1, 0.5, 1.0}) {
            const auto net = make_watts_strogatz(20, 4, beta, seed);
            net.validate();
            ASSERT_EQ(net.edges.size(), 40u);
            ASSERT_EQ(net.link_count(), 40u);
        }
        const auto deg = link_degrees(make_watts_strogatz(20, 4, 1.0, seed));
        double m = 0, s = 0;
        for (auto d : deg) m += d;
        m /= deg.size();
        for (auto d : deg) s += (d - m) * (d - m);
        variance_sum += s / deg.size();
    }
    EXPECT_GT(variance_sum, 0.0);
}

TEST(WattsStrogatz, RejectsBadParameters) {
    EXPECT_THROW(make_watts_strogatz(20, 3, 0.1, 1), InvalidArgument);
    EXPECT_THROW(make_watts_strogatz(4, 4, 0.1, 1), InvalidArgument);
    EXPECT_THROW(make_watts_strogatz(20, 4, 1.1, 1), InvalidArgument);
}

TEST(Generators, PureFunctionsOfArguments) {
    EXPECT_EQ(make_erdos_renyi(300, 0.02, 9).edges, make_erdos_renyi(300, 0.02, 9).edges);
    EXPECT_EQ(make_watts_strogatz(300, 6, 0.3, 9).edges, make_watts_strogatz(300, 6, 0.3, 9).edges);
    EXPECT_NE(make_erdos_renyi(300, 0.02, 9).edges, make_erdos_renyi(300, 0.02, 10).edges);
    EXPECT_EQ(make_honeycomb(4, 2).edges, make_honeycomb(4, 2).edges);
}

TEST(Components, HandCounted) {
    const ClassicalGraph g{5, {{0, 1}, {1, 2}, {3, 4}}};
    const auto rep = components(g);
    EXPECT_EQ(rep.largest_size, 3u);
    EXPECT_DOUBLE_EQ(rep.percolation_strength, 0.6);
    EXPECT_EQ(rep.component_of[0], rep.component_of[2]);
    EXPECT_NE(rep.component_of[0], rep.component_of[3]);
}

TEST(Components, FullAndEmpty) {
    EXPECT_DOUBLE_EQ(percolation_strength(all_open(make_square(10))), 1.0);
    EXPECT_DOUBLE_EQ(percolation_strength(ClassicalGraph{40, {}}), 1.0 / 40);
    EXPECT_THROW(percolation_strength(ClassicalGraph{0, {}}), InvalidArgument);
    EXPECT_THROW(components(ClassicalGraph{3, {{0, 3}}}), InvalidArgument);
}

TEST(Components, DuplicateEdgesChangeNothing) {
    const ClassicalGraph once{6, {{0, 1}, {2, 3}, {3, 4}}};
    const ClassicalGraph twice{6, {{0, 1}, {1, 0}, {2, 3}, {3, 4}, {2, 3}, {4, 3}}};
    EXPECT_EQ(components(once).component_of, components(twice).component_of);
    EXPECT_EQ(components(once).component_sizes, components(twice).component_sizes);
}

TEST(Components, MatchesBfsOnRandomGraphs) {
    Rng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng.below(64);
        const std::size_t m = rng.below(2 * n + 1);
        ClassicalGraph g{n, {}};
        for (std::size_t k = 0; k < m; ++k)
            g.open_edges.emplace_back(static_cast<NodeId>(rng.below(n)), static_cast<NodeId>(rng.below(n)));

        const auto rep = components(g);
        auto sizes = rep.component_sizes;
        std::sort(sizes.begin(), sizes.end());
        ASSERT_EQ(sizes, oracle::bfs_component_sizes(g)) << "trial " << trial;

        std::size_t total = 0;
        for (auto s : rep.component_sizes) total += s;
        EXPECT_EQ(total, n);
        EXPECT_EQ(rep.largest_size, sizes.back());
        EXPECT_EQ(largest_component_size(n, g.open_edges), sizes.back());
        EXPECT_GE(rep.percolation_strength, 1.0 / n);
        EXPECT_LE(rep.percolation_strength, 1.0);
        for (auto [a, b] : g.open_edges) EXPECT_EQ(rep.component_of[a], rep.component_of[b]);
    }
}

TEST(DisjointSet, TracksLargest) {
    DisjointSet ds(6);
    EXPECT_EQ(ds.largest(), 1u);
    EXPECT_TRUE(ds.unite(0, 1));
    EXPECT_TRUE(ds.unite(2, 3));
    EXPECT_TRUE(ds.unite(1, 3));
    EXPECT_FALSE(ds.unite(0, 2));
    EXPECT_EQ(ds.largest(), 4u);
    EXPECT_EQ(ds.size_of(2), 4u);
    EXPECT_EQ(ds.size_of(5), 1u);
}

TEST(NetworkJson, RoundTrip) {
    auto net = make_honeycomb(3, 2);
    for (std::size_t i = 0; i < net.edges.size(); ++i) net.edges[i].scp = 0.1 + 0.8 * i / net.edges.size();
    net.scps_assigned = true;
    const auto back = network_from_json(to_json(net));
    EXPECT_EQ(back.node_count, net.node_count);
    EXPECT_EQ(back.edges, net.edges);
    EXPECT_EQ(back.topology, TopologyTag::Honeycomb);
    EXPECT_EQ(back.bonds_per_link, 2);
    EXPECT_EQ(back.side, 3);
    EXPECT_TRUE(back.scps_assigned);
    EXPECT_EQ(back.sublattice, net.sublattice);
}

TEST(NetworkJson, RejectsBrokenNetworks) {
    EXPECT_THROW(network_from_json(R"({"node_count":2,"topology":"custom","edges":[[0,2,0.5]]})"), InvalidArgument);
    EXPECT_THROW(network_from_json(R"({"node_count":2,"topology":"custom","edges":[[1,1,0.5]]})"), InvalidArgument);
    EXPECT_THROW(network_from_json(R"({"node_count":2,"topology":"custom","edges":[[0,1,1.5]]})"), InvalidArgument);
    EXPECT_THROW(network_from_json("not json"), InvalidArgument);
}

TEST(Topology, NamesRoundTrip) {
    for (auto tag : {TopologyTag::Square, TopologyTag::Honeycomb, TopologyTag::Triangular, TopologyTag::ErdosRenyi,
                     TopologyTag::WattsStrogatz, TopologyTag::Custom})
        EXPECT_EQ(parse_topology(to_string(tag)), tag);
    EXPECT_THROW(parse_topology("kagome"), InvalidArgument);
}
