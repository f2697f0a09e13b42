#include "epnet/results_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "epnet/errors.hpp"

namespace epnet {

using nlohmann::json;

std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

namespace {

json config_json(const SweepConfig& c) {
    return {
        {"topology", std::string(to_string(c.topology.kind))},
        {"size", c.topology.size},
        {"bonds", c.topology.bonds},
        {"er_mean_degree", c.topology.er_mean_degree},
        {"ws_ring_degree", c.topology.ws_ring_degree},
        {"ws_rewire", c.topology.ws_rewire},
        {"protocol", std::string(to_string(c.protocol))},
        {"dist_family", std::string(to_string(c.family))},
        {"p_mean", {{"start", c.p_mean.start}, {"stop", c.p_mean.stop}, {"step", c.p_mean.step}}},
        {"widths", c.widths},
        {"trials", c.trials},
        {"master_seed", c.master_seed},
        {"mode", std::string(to_string(c.mode))},
    };
}

double parse_double(const std::string& s) {
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw InvalidArgument("bad number '" + s + "' in results CSV");
    return x;
}

}  // namespace

void write_results_csv(const SweepResult& result, std::ostream& out) {
    const SweepConfig& c = result.config;
    out << kResultsCsvHeader << '\n';
    for (const SweepRow& r : result.rows) {
        std::string threshold;
        for (std::size_t wi = 0; wi < c.widths.size(); ++wi)
            if (c.widths[wi] == r.width && result.thresholds.at(wi)) threshold = format_double(*result.thresholds[wi]);
        out << to_string(c.topology.kind) << ',' << to_string(c.protocol) << ',' << to_string(c.family) << ','
            << to_string(c.mode) << ',' << format_double(r.p_mean) << ',' << format_double(r.width) << ','
            << r.trials << ',' << format_double(r.p_inf_mean) << ',' << format_double(r.p_inf_std) << ','
            << threshold << ',' << c.master_seed << '\n';
    }
}

std::vector<ResultsCsvRow> read_results_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kResultsCsvHeader) throw InvalidArgument("results CSV header mismatch");
    std::vector<ResultsCsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.emplace_back();
        if (cells.size() != 11) throw InvalidArgument("results CSV row has " + std::to_string(cells.size()) + " cells");
        ResultsCsvRow r;
        r.topology = cells[0];
        r.protocol = cells[1];
        r.dist = cells[2];
        r.mode = cells[3];
        r.p_mean = parse_double(cells[4]);
        r.width = parse_double(cells[5]);
        r.trials = std::stoi(cells[6]);
        r.p_inf_mean = parse_double(cells[7]);
        r.p_inf_std = parse_double(cells[8]);
        if (!cells[9].empty()) r.threshold_estimate = parse_double(cells[9]);
        r.seed = std::stoull(cells[10]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string config_to_json(const SweepConfig& config, int indent) { return config_json(config).dump(indent); }

std::string results_to_json(const SweepResult& result, int indent) {
    json rows = json::array();
    for (const SweepRow& r : result.rows) {
        rows.push_back({{"p_mean", r.p_mean},
                        {"width", r.width},
                        {"trials", r.trials},
                        {"p_inf_mean", r.p_inf_mean},
                        {"p_inf_std", r.p_inf_std},
                        {"edges_converted_mean", r.edges_converted_mean}});
    }
    json thresholds = json::array();
    for (std::size_t wi = 0; wi < result.config.widths.size(); ++wi) {
        thresholds.push_back({{"width", result.config.widths[wi]},
                              {"threshold_estimate", result.thresholds[wi] ? json(*result.thresholds[wi]) : json()}});
    }
    json doc = {
        {"config", config_json(result.config)},
        {"rows", std::move(rows)},
        {"thresholds", std::move(thresholds)},
        {"wall_seconds", result.wall_seconds},
    };
    return doc.dump(indent);
}

}  // namespace epnet
