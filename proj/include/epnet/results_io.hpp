#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "epnet/mc.hpp"

namespace epnet {

inline constexpr const char* kResultsCsvHeader =
    "topology,protocol,dist,mode,p_mean,width,trials,p_inf_mean,p_inf_std,threshold_estimate,seed";

/// One parsed line of a results CSV.
struct ResultsCsvRow {
    std::string topology;
    std::string protocol;
    std::string dist;
    std::string mode;
    double p_mean = 0.0;
    double width = 0.0;
    int trials = 0;
    double p_inf_mean = 0.0;
    double p_inf_std = 0.0;
    std::optional<double> threshold_estimate;  // empty cell when no transition was found
    std::uint64_t seed = 0;
};

/// Doubles are written in shortest round-trip form, so reading back is exact.
void write_results_csv(const SweepResult& result, std::ostream& out);
std::vector<ResultsCsvRow> read_results_csv(std::istream& in);

std::string config_to_json(const SweepConfig& config, int indent = -1);
std::string results_to_json(const SweepResult& result, int indent = -1);

std::string format_double(double x);

}  // namespace epnet
