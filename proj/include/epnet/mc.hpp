#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "epnet/dist.hpp"
#include "epnet/proto.hpp"
#include "epnet/topo.hpp"

namespace epnet {

enum class Protocol { CEP, QEP };

std::string_view to_string(Protocol protocol);
Protocol parse_protocol(std::string_view name);

/// Distribution families a sweep can parameterize by (mean, width).
enum class Family { Uniform, Gauss, Bimodal, Const };

std::string_view to_string(Family family);
Family parse_family(std::string_view name);

/// Law with the given mean and width:
///   uniform  U(p - w/2, p + w/2)
///   gauss    N(p, w/4) truncated to [p - w/2, p + w/2]
///   bimodal  {p - w/2, p + w/2} with equal weight
///   const    p (width must be 0)
/// Width 0 always gives the degenerate law. Supports that leave [0, 1] are
/// rejected, never clipped.
ScpDistribution family_distribution(Family family, double p_mean, double width);

/// Whether (p_mean, width) keeps the family's support inside [0, 1].
bool in_support(Family family, double p_mean, double width);

struct TopologySpec {
    TopologyTag kind = TopologyTag::Square;
    int size = 100;  // side / cells per side / node count for random graphs
    int bonds = 1;
    double er_mean_degree = 4.0;
    int ws_ring_degree = 4;
    double ws_rewire = 0.1;

    QuantumNetwork build(std::uint64_t seed) const;
    bool is_random() const { return kind == TopologyTag::ErdosRenyi || kind == TopologyTag::WattsStrogatz; }
};

/// Inclusive arithmetic grid start, start + step, ..., stop.
struct Grid {
    double start = 0.3;
    double stop = 0.7;
    double step = 0.01;

    /// Points rounded to 12 decimals so accumulated float error never leaks
    /// into support checks or output.
    std::vector<double> points() const;
    /// "start:stop:step"
    static Grid parse(std::string_view text);
};

struct SweepConfig {
    TopologySpec topology;
    Protocol protocol = Protocol::CEP;
    Family family = Family::Uniform;
    Grid p_mean;
    std::vector<double> widths{0.0};
    int trials = 20;
    std::uint64_t master_seed = 1;
    MultiedgeMode mode = MultiedgeMode::Independent;
    unsigned workers = 0;  // 0 = hardware concurrency

    /// Throws InvalidArgument on a bad grid or widths, or when a width admits
    /// no grid point at all; UnsupportedOperation for QEP off the double-bond
    /// honeycomb. Individual (p_mean, width) pairs whose law would leave
    /// [0, 1] are skipped by run_sweep, never clipped.
    void validate() const;
};

struct SweepRow {
    double p_mean;
    double width;
    int trials;
    double p_inf_mean;
    double p_inf_std;  // sample standard deviation, 0 for a single trial
    double edges_converted_mean;
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepRow> rows;  // width-major, p_mean ascending, in-support points only
    std::vector<std::optional<double>> thresholds;  // one per config.widths entry
    double wall_seconds = 0.0;

    std::vector<std::pair<double, double>> curve(std::size_t width_index) const;
};

/// Seed of one trial; adding grid points never changes existing trials.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t p_index, std::size_t w_index, std::size_t trial);

/// Structure shared by all trials on one topology realization.
struct SweepTopology {
    QuantumNetwork network;
    LinkIndex links;
    std::optional<QepPlan> qep;  // QEP only
    LinkIndex qep_links;

    static SweepTopology prepare(const SweepConfig& config, std::uint64_t seed);
};

/// Runs one protocol realization and returns (P_inf, converted links).
/// `fixed` may be null, in which case the topology is built from the trial
/// seed (random graphs).
std::pair<double, std::size_t> run_trial(const SweepConfig& config, const SweepTopology* fixed,
                                         const ScpDistribution& dist, std::uint64_t seed);

SweepResult run_sweep(const SweepConfig& config);

/// Location of the steepest rise of P_inf(p): the grid point with the largest
/// central difference, ties to the lower p. Needs >= 5 strictly increasing
/// points; throws NoTransition if the maximal slope is below 1e-6.
double estimate_threshold(std::span<const std::pair<double, double>> curve);

struct Prediction {
    std::string label;
    double value;
    std::string formula;
};

/// Bond percolation thresholds of the three lattices.
double square_threshold();
double honeycomb_threshold();
double triangular_threshold();

/// Analytic threshold in mean-SCP space. Throws UnsupportedOperation when no
/// closed form is known for the combination.
Prediction predict(TopologyTag topology, int bonds, Protocol protocol, double width);

/// Width at which the QEP line qep_base + w/6 reaches the CEP threshold;
/// nullopt when QEP is never better.
std::optional<double> crossover_width(double cep_threshold, double qep_base);

}  // namespace epnet
