#include <fstream>
#include <sstream>

#include <json.hpp>

#include "epnet/errors.hpp"
#include "epnet/topo.hpp"

namespace epnet {

using nlohmann::json;

std::string to_json(const QuantumNetwork& net, int indent) {
    json edges = json::array();
    for (const Edge& e : net.edges) edges.push_back({e.u, e.v, e.scp});
    json meta = {
        {"bonds_per_link", net.bonds_per_link},
        {"side", net.side},
        {"scps_assigned", net.scps_assigned},
    };
    if (!net.sublattice.empty()) {
        std::string labels;
        labels.reserve(net.sublattice.size());
        for (Sublattice s : net.sublattice)
            labels.push_back(s == Sublattice::A ? 'A' : s == Sublattice::B ? 'B' : '-');
        meta["sublattice"] = labels;
    }
    json doc = {
        {"node_count", net.node_count},
        {"topology", std::string(to_string(net.topology))},
        {"edges", std::move(edges)},
        {"meta", std::move(meta)},
    };
    return doc.dump(indent);
}

QuantumNetwork network_from_json(std::string_view text) {
    QuantumNetwork net;
    try {
        const json doc = json::parse(text);
        net.node_count = doc.at("node_count").get<std::size_t>();
        net.topology = parse_topology(doc.at("topology").get<std::string>());
        for (const json& e : doc.at("edges")) {
            if (!e.is_array() || e.size() != 3) throw InvalidArgument("edge must be [u, v, scp]");
            net.edges.push_back({e[0].get<NodeId>(), e[1].get<NodeId>(), e[2].get<double>()});
        }
        if (doc.contains("meta")) {
            const json& meta = doc["meta"];
            net.bonds_per_link = meta.value("bonds_per_link", 1);
            net.side = meta.value("side", 0);
            net.scps_assigned = meta.value("scps_assigned", true);
            if (meta.contains("sublattice")) {
                for (char c : meta["sublattice"].get<std::string>()) {
                    net.sublattice.push_back(c == 'A'   ? Sublattice::A
                                             : c == 'B' ? Sublattice::B
                                                        : Sublattice::None);
                }
            }
        } else {
            net.scps_assigned = true;
        }
    } catch (const json::exception& ex) {
        throw InvalidArgument(std::string("malformed network JSON: ") + ex.what());
    }
    net.validate();
    return net;
}

void save_network(const QuantumNetwork& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << to_json(net) << '\n';
}

QuantumNetwork load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return network_from_json(buf.str());
}

}  // namespace epnet
