// epnet: entanglement percolation on random quantum networks.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage/config error,
// 3 unsupported operation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "epnet/dist.hpp"
#include "epnet/errors.hpp"
#include "epnet/mc.hpp"
#include "epnet/proto.hpp"
#include "epnet/results_io.hpp"
#include "epnet/topo.hpp"
#include "epnet/verify.hpp"

namespace {

constexpr const char* kToolVersion = "0.3.0";

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2, kUnsupported = 3 };

/// Usage error that names the flag responsible.
struct FlagError : epnet::InvalidArgument {
    FlagError(const std::string& flag, const std::string& what) : epnet::InvalidArgument(flag + ": " + what) {}
};

template <class F>
auto with_flag(const std::string& flag, F&& f) {
    try {
        return f();
    } catch (const epnet::InvalidArgument& e) {
        throw FlagError(flag, e.what());
    }
}

/// Records how an output was produced, written next to it as <path>.manifest.json.
struct RunManifest {
    std::string subcommand;
    nlohmann::json config;
    std::uint64_t master_seed = 0;
    std::vector<std::string> outputs;

    void write_beside(const std::string& path) const {
        nlohmann::json doc = {
            {"subcommand", subcommand}, {"config", config},   {"master_seed", master_seed},
            {"tool_version", kToolVersion}, {"outputs", outputs},
        };
        std::ofstream out(path + ".manifest.json");
        out << doc.dump(2) << '\n';
    }
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
    if (seed) return *seed;
    const std::uint64_t s = epnet::entropy_seed();
    std::cerr << "seed: " << s << " (drawn from entropy; pass --seed " << s << " to reproduce)\n";
    return s;
}

struct TopologyFlags {
    std::string topology = "square";
    int size = 100;
    int bonds = 1;
    double er_degree = 4.0;
    int ws_k = 4;
    double ws_beta = 0.1;

    void add_to(CLI::App* app) {
        app->add_option("--topology", topology, "square | honeycomb | triangular | er | ws")->capture_default_str();
        app->add_option("--size", size, "side length, cells per side, or node count")->capture_default_str();
        app->add_option("--bonds", bonds, "parallel bonds per link")->capture_default_str();
        app->add_option("--er-degree", er_degree, "Erdos-Renyi mean degree")->capture_default_str();
        app->add_option("--ws-k", ws_k, "Watts-Strogatz ring degree (even)")->capture_default_str();
        app->add_option("--ws-beta", ws_beta, "Watts-Strogatz rewiring probability")->capture_default_str();
    }

    epnet::TopologySpec spec() const {
        epnet::TopologySpec s;
        s.kind = with_flag("--topology", [&] { return epnet::parse_topology(topology); });
        s.size = size;
        s.bonds = bonds;
        s.er_mean_degree = er_degree;
        s.ws_ring_degree = ws_k;
        s.ws_rewire = ws_beta;
        return s;
    }

    nlohmann::json to_json() const {
        return {{"topology", topology}, {"size", size},       {"bonds", bonds},
                {"er_degree", er_degree}, {"ws_k", ws_k}, {"ws_beta", ws_beta}};
    }
};

epnet::QuantumNetwork build_network(const TopologyFlags& flags, std::uint64_t seed) {
    const epnet::TopologySpec spec = flags.spec();
    return with_flag("--" + std::string(spec.kind == epnet::TopologyTag::Honeycomb ? "size/--bonds" : "size"),
                     [&] { return spec.build(epnet::mix_seed(seed, {0x70b0ULL})); });
}

// --- generate -----------------------------------------------------------------

struct GenerateCmd {
    TopologyFlags topo;
    std::string dist;
    std::string mode = "independent";
    std::optional<std::uint64_t> seed;
    std::string output;

    void add_to(CLI::App& root) {
        CLI::App* app = root.add_subcommand("generate", "build a network and assign edge SCPs");
        topo.add_to(app);
        app->add_option("--dist", dist, "SCP law, e.g. uniform:a=0.3,b=0.7")->required();
        app->add_option("--mode", mode, "multiedge mode: independent | equal")->capture_default_str();
        app->add_option("--seed", seed, "master seed");
        app->add_option("-o,--output", output, "network JSON path")->required();
        app->callback([this] { run(); });
    }

    void run() const {
        const std::uint64_t s = resolve_seed(seed);
        const auto law = with_flag("--dist", [&] { return epnet::parse_distribution(dist); });
        const auto m = with_flag("--mode", [&] { return epnet::parse_multiedge_mode(mode); });
        const auto base = build_network(topo, s);
        epnet::Rng rng(s);
        const auto net = epnet::assign_scps(base, law, m, rng);
        with_flag("--output", [&] {
            epnet::save_network(net, output);
            return 0;
        });
        nlohmann::json cfg = topo.to_json();
        cfg["dist"] = epnet::to_string(law);
        cfg["mode"] = mode;
        RunManifest{"generate", cfg, s, {output}}.write_beside(output);
        std::cout << "wrote " << output << ": " << net.node_count << " nodes, " << net.edges.size() << " edges, "
                  << net.link_count() << " links\n";
    }
};

// --- run ----------------------------------------------------------------------

struct RunCmd {
    TopologyFlags topo;
    std::string network;
    std::string protocol = "cep";
    std::string dist;
    std::string mode = "independent";
    std::optional<std::uint64_t> seed;
    bool strict = false;

    void add_to(CLI::App& root) {
        CLI::App* app = root.add_subcommand("run", "run CEP or QEP once and report the largest cluster");
        topo.add_to(app);
        app->add_option("--network", network, "network JSON (otherwise built from the topology flags)");
        app->add_option("--protocol", protocol, "cep | qep")->capture_default_str();
        app->add_option("--dist", dist, "SCP law; required without --network, reassigns SCPs with it");
        app->add_option("--mode", mode, "multiedge mode: independent | equal")->capture_default_str();
        app->add_option("--seed", seed, "master seed");
        app->add_flag("--strict", strict, "reject networks whose SCPs were never assigned");
        app->callback([this] { run(); });
    }

    void run() const {
        const std::uint64_t s = resolve_seed(seed);
        const auto proto = with_flag("--protocol", [&] { return epnet::parse_protocol(protocol); });
        const auto m = with_flag("--mode", [&] { return epnet::parse_multiedge_mode(mode); });
        epnet::Rng rng(s);
        epnet::QuantumNetwork net;
        if (!network.empty()) {
            net = with_flag("--network", [&] { return epnet::load_network(network); });
        } else {
            if (dist.empty()) throw FlagError("--dist", "required when no --network is given");
            net = build_network(topo, s);
        }
        if (!dist.empty()) {
            const auto law = with_flag("--dist", [&] { return epnet::parse_distribution(dist); });
            net = epnet::assign_scps(net, law, m, rng);
        }
        if (proto == epnet::Protocol::QEP) net = epnet::qep_honeycomb(net);
        const auto outcome = epnet::cep(net, rng, strict);
        nlohmann::json out = {
            {"p_inf", outcome.report.percolation_strength},
            {"largest_cluster", outcome.report.largest_size},
            {"edges_converted", outcome.edges_converted},
            {"seed", s},
        };
        std::cout << out.dump() << '\n';
    }
};

// --- sweep --------------------------------------------------------------------

std::vector<double> parse_widths(const std::vector<std::string>& items) {
    std::vector<double> widths;
    for (const auto& item : items) {
        std::stringstream ss(item);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            try {
                std::size_t used = 0;
                widths.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw FlagError("--widths", "bad width '" + tok + "'");
            }
        }
    }
    return widths;
}

struct SweepCmd {
    TopologyFlags topo;
    std::string protocol = "cep";
    std::string family = "uniform";
    std::string p_mean = "0.3:0.7:0.01";
    std::vector<std::string> widths{"0"};
    int trials = 20;
    std::optional<std::uint64_t> seed;
    std::string mode = "independent";
    unsigned workers = 0;
    std::string output;
    std::string json_output;
    std::string config_file;
    CLI::App* app = nullptr;

    void add_to(CLI::App& root) {
        app = root.add_subcommand("sweep", "Monte Carlo sweep over mean SCP and distribution width");
        app->add_option("--config", config_file, "flat key = value file mirroring the flag names (flags win)");
        topo.add_to(app);
        app->add_option("--protocol", protocol, "cep | qep")->capture_default_str();
        app->add_option("--dist-family", family, "uniform | gauss | bimodal | const")->capture_default_str();
        app->add_option("--p-mean", p_mean, "mean-SCP grid start:stop:step")->capture_default_str();
        app->add_option("--widths", widths, "comma-separated widths")->delimiter(',');
        app->add_option("--trials", trials, "trials per grid point")->capture_default_str();
        app->add_option("--seed", seed, "master seed");
        app->add_option("--mode", mode, "multiedge mode: independent | equal")->capture_default_str();
        app->add_option("--workers", workers, "concurrent trials (0 = all cores)")->capture_default_str();
        app->add_option("-o,--output", output, "results CSV path")->required();
        app->add_option("--json", json_output, "also write results JSON here");
        app->callback([this] { run(); });
    }

    /// Fills every option not given on the command line from the config file.
    void apply_config_file() const {
        std::ifstream in(config_file);
        if (!in) throw FlagError("--config", "cannot read " + config_file);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            line = trim(line.substr(0, line.find('#')));
            if (line.empty() || line.front() == '[') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw FlagError("--config", config_file + ":" + std::to_string(lineno) + ": expected key = value");
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            for (char& c : key)
                if (c == '_') c = '-';
            if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front())
                value = value.substr(1, value.size() - 2);
            if (value.size() >= 2 && value.front() == '[' && value.back() == ']') value = value.substr(1, value.size() - 2);
            if (key == "config" || key == "output" || key == "o")
                throw FlagError("--config", "key '" + key + "' is not allowed in a config file");
            CLI::Option* opt = nullptr;
            try {
                opt = app->get_option("--" + key);
            } catch (const CLI::OptionNotFound&) {
                throw FlagError("--config", config_file + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
            }
            if (opt->count() > 0) continue;  // command line wins
            opt->add_result(value);
            try {
                opt->run_callback();
            } catch (const CLI::ParseError& e) {
                throw FlagError("--" + key, e.what());
            }
        }
    }

    void run() const {
        if (!config_file.empty()) apply_config_file();
        epnet::SweepConfig cfg;
        cfg.topology = topo.spec();
        cfg.protocol = with_flag("--protocol", [&] { return epnet::parse_protocol(protocol); });
        cfg.family = with_flag("--dist-family", [&] { return epnet::parse_family(family); });
        cfg.p_mean = with_flag("--p-mean", [&] { return epnet::Grid::parse(p_mean); });
        cfg.widths = parse_widths(widths);
        cfg.trials = trials;
        cfg.mode = with_flag("--mode", [&] { return epnet::parse_multiedge_mode(mode); });
        cfg.workers = workers;
        cfg.master_seed = resolve_seed(seed);
        with_flag("--p-mean/--widths", [&] {
            cfg.validate();
            return 0;
        });

        const epnet::SweepResult result = epnet::run_sweep(cfg);
        {
            std::ofstream out(output);
            if (!out) throw FlagError("--output", "cannot write " + output);
            epnet::write_results_csv(result, out);
        }
        std::vector<std::string> outputs{output};
        if (!json_output.empty()) {
            std::ofstream out(json_output);
            if (!out) throw FlagError("--json", "cannot write " + json_output);
            out << epnet::results_to_json(result, 2) << '\n';
            outputs.push_back(json_output);
        }
        RunManifest{"sweep", nlohmann::json::parse(epnet::config_to_json(cfg)), cfg.master_seed, outputs}
            .write_beside(output);

        std::printf("%-8s %-12s %-12s %s\n", "width", "threshold", "predicted", "formula");
        for (std::size_t wi = 0; wi < cfg.widths.size(); ++wi) {
            std::string est = result.thresholds[wi] ? epnet::format_double(*result.thresholds[wi]) : "none";
            std::string pred = "-", formula = "";
            try {
                const auto p = epnet::predict(cfg.topology.kind, cfg.topology.bonds, cfg.protocol, cfg.widths[wi]);
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.4f", p.value);
                pred = buf;
                formula = p.formula;
            } catch (const epnet::UnsupportedOperation&) {
            }
            std::printf("%-8g %-12s %-12s %s\n", cfg.widths[wi], est.c_str(), pred.c_str(), formula.c_str());
        }
        std::printf("%zu rows, %.2f s, seed %llu -> %s\n", result.rows.size(), result.wall_seconds,
                    static_cast<unsigned long long>(cfg.master_seed), output.c_str());
    }
};

// --- predict ------------------------------------------------------------------

struct PredictCmd {
    std::string topology = "honeycomb";
    int bonds = 2;
    std::string protocol = "cep";
    double width = 0.0;
    bool crossover = false;

    void add_to(CLI::App& root) {
        CLI::App* app = root.add_subcommand("predict", "analytic percolation thresholds");
        app->add_option("--topology", topology, "square | honeycomb | triangular")->capture_default_str();
        app->add_option("--bonds", bonds, "parallel bonds per link")->capture_default_str();
        app->add_option("--protocol", protocol, "cep | qep")->capture_default_str();
        app->add_option("--width", width, "width of the uniform SCP law")->capture_default_str();
        app->add_flag("--crossover", crossover, "also report the CEP/QEP crossover width");
        app->callback([this] { run(); });
    }

    void run() const {
        const auto kind = with_flag("--topology", [&] { return epnet::parse_topology(topology); });
        const auto proto = with_flag("--protocol", [&] { return epnet::parse_protocol(protocol); });
        const auto p = with_flag("--width", [&] { return epnet::predict(kind, bonds, proto, width); });
        nlohmann::json out = {{"label", p.label}, {"threshold", p.value}, {"formula", p.formula}};
        if (crossover) {
            const double cep = epnet::predict(kind, bonds, epnet::Protocol::CEP, 0.0).value;
            const double qep = epnet::predict(kind, bonds, epnet::Protocol::QEP, 0.0).value;
            const auto w = epnet::crossover_width(cep, qep);
            out["crossover_width"] = w ? nlohmann::json(*w) : nlohmann::json("QEP never better");
        }
        std::cout << out.dump() << '\n';
    }
};

// --- verify -------------------------------------------------------------------

struct VerifyCmd {
    std::vector<std::string> only;
    std::uint64_t seed = 20240601;
    bool inject_fault = false;
    int* exit_code = nullptr;

    void add_to(CLI::App& root, int& code) {
        exit_code = &code;
        CLI::App* app = root.add_subcommand("verify", "run the built-in algebraic and statistical checks");
        app->add_option("--only", only, "restrict to suites: procrustean, haar, min2, vidal, dsu, distill")
            ->delimiter(',');
        app->add_option("--seed", seed, "seed for the statistical suites")->capture_default_str();
        app->add_flag("--inject-fault", inject_fault)->group("");  // harness self-test
        app->callback([this] { run(); });
    }

    void run() const {
        const auto checks = with_flag("--only", [&] { return epnet::run_verification(only, seed, inject_fault); });
        bool ok = true;
        for (const auto& c : checks) {
            std::printf("[%s] %-11s %-58s %.6g %s\n", c.passed ? "PASS" : "FAIL", c.suite.c_str(), c.name.c_str(),
                        c.measured, c.bound.c_str());
            ok = ok && c.passed;
        }
        std::printf("%zu checks, %s\n", checks.size(), ok ? "all passed" : "FAILURES");
        if (!ok) *exit_code = kVerifyFailed;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement percolation on random quantum networks", "epnet"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    int code = kOk;
    GenerateCmd generate;
    RunCmd run;
    SweepCmd sweep;
    PredictCmd predict;
    VerifyCmd verify;
    generate.add_to(app);
    run.add_to(app);
    sweep.add_to(app);
    predict.add_to(app);
    verify.add_to(app, code);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    } catch (const epnet::UnsupportedOperation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUnsupported;
    } catch (const epnet::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return code;
}
