#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "epnet/rng.hpp"

namespace epnet {

struct ScpDistribution;

/// Flat density 1/(b-a) on [a, b].
struct Uniform {
    double a;
    double b;
};
/// SCP of a Haar-random two-qubit state: p = 2 lambda2, lambda2 ~ 6(1 - 2 lambda2)^2.
struct HaarQubitPair {};
/// Normal(mu, sigma) conditioned on [lo, hi].
struct TruncatedGaussian {
    double mu;
    double sigma;
    double lo;
    double hi;
};
/// Two-point law: p_low with probability weight_low, else p_high.
struct Bimodal {
    double p_low;
    double p_high;
    double weight_low;
};
struct Degenerate {
    double p;
};
/// Law of min(X1, X2) for X1, X2 iid from `inner`.
struct MinOfTwo {
    std::shared_ptr<const ScpDistribution> inner;
};

/// Random law of an edge SCP. Immutable; build through the factory functions
/// below, which validate parameters.
struct ScpDistribution {
    std::variant<Uniform, HaarQubitPair, TruncatedGaussian, Bimodal, Degenerate, MinOfTwo> law;
};

ScpDistribution uniform(double a, double b);
ScpDistribution haar();
ScpDistribution truncated_gaussian(double mu, double sigma, double lo = 0.0, double hi = 1.0);
ScpDistribution bimodal(double p_low, double p_high, double weight_low = 0.5);
ScpDistribution degenerate(double p);
ScpDistribution min_transform(const ScpDistribution& dist);

struct DistributionSummary {
    double mean;
    double second_moment;
    double width;
};

double sample(const ScpDistribution& dist, Rng& rng);

/// Density at x in [0, 1]. Throws NoDensity for laws with atoms.
double pdf(const ScpDistribution& dist, double x);
double cdf(const ScpDistribution& dist, double x);
double mean(const ScpDistribution& dist);
double second_moment(const ScpDistribution& dist);
DistributionSummary summarize(const ScpDistribution& dist);

/// Closed interval outside of which the density vanishes.
std::pair<double, double> support(const ScpDistribution& dist);
bool is_discrete(const ScpDistribution& dist);
/// (value, probability) pairs of a discrete law, ascending by value.
std::vector<std::pair<double, double>> atoms(const ScpDistribution& dist);

/// Parses `uniform:a=0.3,b=0.7`, `haar`, `gauss:mu=..,sigma=..,lo=..,hi=..`,
/// `bimodal:lo=..,hi=..,wlo=..`, `const:p=..`, `min2(<spec>)`.
ScpDistribution parse_distribution(std::string_view spec);
/// Inverse of parse_distribution (shortest round-trip decimals).
std::string to_string(const ScpDistribution& dist);

}  // namespace epnet
