#include "epnet/mc.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "epnet/errors.hpp"
#include "epnet/states.hpp"

namespace epnet {

namespace {

constexpr double kSupportTol = 1e-12;

double round12(double x) { return std::round(x * 1e12) / 1e12; }

}  // namespace

bool in_support(Family family, double p_mean, double width) {
    if (family == Family::Const) return width == 0.0;
    return p_mean - width / 2.0 >= -kSupportTol && p_mean + width / 2.0 <= 1.0 + kSupportTol;
}

namespace {

}  // namespace

std::string_view to_string(Protocol protocol) { return protocol == Protocol::CEP ? "cep" : "qep"; }

Protocol parse_protocol(std::string_view name) {
    if (name == "cep") return Protocol::CEP;
    if (name == "qep") return Protocol::QEP;
    throw InvalidArgument("unknown protocol '" + std::string(name) + "'");
}

std::string_view to_string(Family family) {
    switch (family) {
        case Family::Uniform: return "uniform";
        case Family::Gauss: return "gauss";
        case Family::Bimodal: return "bimodal";
        case Family::Const: return "const";
    }
    return "uniform";
}

Family parse_family(std::string_view name) {
    if (name == "uniform") return Family::Uniform;
    if (name == "gauss") return Family::Gauss;
    if (name == "bimodal") return Family::Bimodal;
    if (name == "const") return Family::Const;
    throw InvalidArgument("unknown distribution family '" + std::string(name) +
                          "' (sweeps accept uniform, gauss, bimodal, const)");
}

ScpDistribution family_distribution(Family family, double p_mean, double width) {
    if (!(p_mean >= 0.0 && p_mean <= 1.0)) throw InvalidArgument("p_mean outside [0, 1]");
    if (!(width >= 0.0 && width <= 1.0)) throw InvalidArgument("width outside [0, 1]");
    if (family == Family::Const && width != 0.0) throw InvalidArgument("const family needs width 0");
    if (width == 0.0) return degenerate(p_mean);

    double lo = p_mean - width / 2.0;
    double hi = p_mean + width / 2.0;
    if (lo < -kSupportTol || hi > 1.0 + kSupportTol)
        throw InvalidArgument("support [" + std::to_string(lo) + ", " + std::to_string(hi) +
                              "] of (p_mean=" + std::to_string(p_mean) + ", width=" + std::to_string(width) +
                              ") exceeds [0, 1]");
    lo = std::max(lo, 0.0);
    hi = std::min(hi, 1.0);
    switch (family) {
        case Family::Uniform: return uniform(lo, hi);
        case Family::Gauss: return truncated_gaussian(p_mean, width / 4.0, lo, hi);
        case Family::Bimodal: return bimodal(lo, hi, 0.5);
        case Family::Const: break;
    }
    return degenerate(p_mean);
}

QuantumNetwork TopologySpec::build(std::uint64_t seed) const {
    switch (kind) {
        case TopologyTag::Square: return make_square(size, bonds);
        case TopologyTag::Honeycomb: return make_honeycomb(size, bonds);
        case TopologyTag::Triangular:
            if (bonds != 1) throw InvalidArgument("triangular lattice is single-bond only");
            return make_triangular(size);
        case TopologyTag::ErdosRenyi: {
            if (size < 2) throw InvalidArgument("Erdos-Renyi needs at least 2 nodes");
            const double p = std::min(1.0, er_mean_degree / static_cast<double>(size - 1));
            return make_erdos_renyi(static_cast<std::size_t>(size), p, seed);
        }
        case TopologyTag::WattsStrogatz:
            return make_watts_strogatz(static_cast<std::size_t>(size), ws_ring_degree, ws_rewire, seed);
        case TopologyTag::Custom: break;
    }
    throw InvalidArgument("custom topologies cannot be swept");
}

std::vector<double> Grid::points() const {
    if (!(step > 0.0)) throw InvalidArgument("grid step must be > 0");
    if (!(stop >= start)) throw InvalidArgument("grid stop must be >= start");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(round12(start + static_cast<double>(i) * step));
    return pts;
}

Grid Grid::parse(std::string_view text) {
    std::vector<double> parts;
    std::string item;
    for (char c : std::string(text) + ":") {
        if (c != ':') {
            item.push_back(c);
            continue;
        }
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidArgument("grid '" + std::string(text) + "' is not start:stop:step");
        }
        item.clear();
    }
    if (parts.size() == 1) return Grid{parts[0], parts[0], 1.0};
    if (parts.size() != 3) throw InvalidArgument("grid '" + std::string(text) + "' is not start:stop:step");
    return Grid{parts[0], parts[1], parts[2]};
}

void SweepConfig::validate() const {
    if (trials < 1) throw InvalidArgument("trials must be >= 1");
    if (widths.empty()) throw InvalidArgument("at least one width is required");
    if (protocol == Protocol::QEP && (topology.kind != TopologyTag::Honeycomb || topology.bonds != 2))
        throw UnsupportedOperation("QEP is only defined for the double-bond honeycomb");
    const auto pts = p_mean.points();
    for (double p : pts)
        if (p < 0.0 || p > 1.0) throw InvalidArgument("p_mean grid leaves [0, 1]");
    for (double w : widths) {
        if (!(w >= 0.0 && w <= 1.0)) throw InvalidArgument("width " + std::to_string(w) + " outside [0, 1]");
        if (family == Family::Const && w != 0.0) throw InvalidArgument("const family needs width 0");
        if (std::none_of(pts.begin(), pts.end(), [&](double p) { return in_support(family, p, w); }))
            family_distribution(family, pts.front(), w);  // throws with the offending support
    }
    if (topology.kind == TopologyTag::Custom) throw InvalidArgument("custom topologies cannot be swept");
    if (topology.bonds < 1) throw InvalidArgument("bonds must be >= 1");
}

std::vector<std::pair<double, double>> SweepResult::curve(std::size_t width_index) const {
    std::vector<std::pair<double, double>> out;
    const double w = config.widths.at(width_index);
    for (const SweepRow& r : rows)
        if (r.width == w) out.emplace_back(r.p_mean, r.p_inf_mean);
    return out;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t p_index, std::size_t w_index, std::size_t trial) {
    return mix_seed(master_seed, {p_index, w_index, trial});
}

SweepTopology SweepTopology::prepare(const SweepConfig& config, std::uint64_t seed) {
    SweepTopology t;
    t.network = config.topology.build(seed);
    t.links = build_link_index(t.network);
    if (config.protocol == Protocol::QEP) {
        t.qep = build_qep_plan(t.network);
        t.qep_links = build_link_index(t.qep->output);
    }
    return t;
}

std::pair<double, std::size_t> run_trial(const SweepConfig& config, const SweepTopology* fixed,
                                         const ScpDistribution& dist, std::uint64_t seed) {
    Rng rng(seed);
    std::optional<SweepTopology> built;
    if (fixed == nullptr) fixed = &built.emplace(SweepTopology::prepare(config, mix_seed(seed, {0x70b0ULL})));

    const QuantumNetwork net = assign_scps(fixed->network, fixed->links, dist, config.mode, rng);
    if (config.protocol == Protocol::QEP) {
        const QuantumNetwork swapped = apply_qep_plan(*fixed->qep, net);
        const auto [largest, converted] = cep_largest_cluster(swapped, fixed->qep_links, rng);
        return {static_cast<double>(largest) / static_cast<double>(swapped.node_count), converted};
    }
    const auto [largest, converted] = cep_largest_cluster(net, fixed->links, rng);
    return {static_cast<double>(largest) / static_cast<double>(net.node_count), converted};
}

SweepResult run_sweep(const SweepConfig& config) {
    config.validate();
    const auto started = std::chrono::steady_clock::now();

    std::optional<SweepTopology> fixed;
    if (!config.topology.is_random()) fixed = SweepTopology::prepare(config, 0);

    const auto pts = config.p_mean.points();
    struct Point {
        std::size_t p_index;
        std::size_t w_index;
        ScpDistribution dist;
    };
    // Width-major so rows come out grouped per curve.
    std::vector<Point> points;
    for (std::size_t wi = 0; wi < config.widths.size(); ++wi)
        for (std::size_t pi = 0; pi < pts.size(); ++pi)
            if (in_support(config.family, pts[pi], config.widths[wi]))
                points.push_back({pi, wi, family_distribution(config.family, pts[pi], config.widths[wi])});

    const std::size_t trials = static_cast<std::size_t>(config.trials);
    const std::size_t total = points.size() * trials;
    std::vector<double> p_inf(total);
    std::vector<double> converted(total);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t task = next++; task < total; task = next++) {
            const Point& pt = points[task / trials];
            const std::size_t t = task % trials;
            const auto [p, c] = run_trial(config, fixed ? &*fixed : nullptr, pt.dist,
                                          trial_seed(config.master_seed, pt.p_index, pt.w_index, t));
            p_inf[task] = p;
            converted[task] = static_cast<double>(c);
        }
    };
    unsigned workers = config.workers == 0 ? std::max(1U, std::thread::hardware_concurrency()) : config.workers;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(total, 1)));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    }

    SweepResult result;
    result.config = config;
    for (std::size_t k = 0; k < points.size(); ++k) {
        // Reduce in trial order so the sums are independent of scheduling.
        double sum = 0.0, sum_conv = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            sum += p_inf[k * trials + t];
            sum_conv += converted[k * trials + t];
        }
        const double m = sum / static_cast<double>(trials);
        double ss = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            const double d = p_inf[k * trials + t] - m;
            ss += d * d;
        }
        const double sd = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1)) : 0.0;
        result.rows.push_back({pts[points[k].p_index], config.widths[points[k].w_index], config.trials, m, sd,
                               sum_conv / static_cast<double>(trials)});
    }
    for (std::size_t wi = 0; wi < config.widths.size(); ++wi) {
        const auto c = result.curve(wi);
        try {
            result.thresholds.push_back(estimate_threshold(c));
        } catch (const NoTransition&) {
            result.thresholds.push_back(std::nullopt);
        } catch (const InvalidArgument&) {
            result.thresholds.push_back(std::nullopt);  // too few points to estimate
        }
    }
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

double estimate_threshold(std::span<const std::pair<double, double>> curve) {
    if (curve.size() < 5) throw InvalidArgument("threshold estimation needs at least 5 grid points");
    for (std::size_t i = 1; i < curve.size(); ++i)
        if (!(curve[i].first > curve[i - 1].first)) throw InvalidArgument("curve grid must be strictly increasing");

    double best_slope = -std::numeric_limits<double>::infinity();
    double best_p = curve[1].first;
    for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
        const double slope =
            (curve[i + 1].second - curve[i - 1].second) / (curve[i + 1].first - curve[i - 1].first);
        if (slope > best_slope) {  // strict: ties stay at the lower p
            best_slope = slope;
            best_p = curve[i].first;
        }
    }
    if (best_slope < 1e-6) throw NoTransition("no transition detected (max slope " + std::to_string(best_slope) + ")");
    return best_p;
}

// --- analytic thresholds ------------------------------------------------------

double square_threshold() { return 0.5; }
double triangular_threshold() { return 2.0 * std::sin(std::numbers::pi / 18.0); }
double honeycomb_threshold() { return 1.0 - 2.0 * std::sin(std::numbers::pi / 18.0); }

Prediction predict(TopologyTag topology, int bonds, Protocol protocol, double width) {
    if (!(width >= 0.0 && width <= 1.0)) throw InvalidArgument("width outside [0, 1]");
    if (protocol == Protocol::QEP) {
        if (topology == TopologyTag::Honeycomb && bonds == 2)
            return {"qep double-bond honeycomb", triangular_threshold() + width / 6.0, "2 sin(pi/18) + w/6"};
        throw UnsupportedOperation("no analytic QEP prediction for this topology");
    }
    double p_c = 0.0;
    std::string name;
    switch (topology) {
        case TopologyTag::Square: p_c = square_threshold(), name = "square"; break;
        case TopologyTag::Honeycomb: p_c = honeycomb_threshold(), name = "honeycomb"; break;
        case TopologyTag::Triangular: p_c = triangular_threshold(), name = "triangular"; break;
        default: throw UnsupportedOperation("no analytic prediction for " + std::string(to_string(topology)));
    }
    if (bonds == 1) return {"cep " + name, p_c, "p_c"};
    if (bonds == 2) return {"cep double-bond " + name, double_bond_cep_threshold(p_c), "2 - sqrt(4 - 2 p_c)"};
    throw UnsupportedOperation("no analytic prediction for " + std::to_string(bonds) + " bonds per link");
}

std::optional<double> crossover_width(double cep_threshold, double qep_base) {
    if (!(cep_threshold >= 0.0 && cep_threshold <= 1.0 && qep_base >= 0.0 && qep_base <= 1.0))
        throw InvalidArgument("thresholds must be in [0, 1]");
    const double w = 6.0 * (cep_threshold - qep_base);
    if (w < 0.0) return std::nullopt;
    return w;
}

}  // namespace epnet
