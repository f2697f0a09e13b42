#include "epnet/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <queue>

#include <boost/math/distributions/chi_squared.hpp>

#include "epnet/dist.hpp"
#include "epnet/errors.hpp"
#include "epnet/rng.hpp"
#include "epnet/states.hpp"
#include "epnet/topo.hpp"

namespace epnet {

namespace {

using Checks = std::vector<CheckResult>;

void check_le(Checks& out, const std::string& suite, const std::string& name, double measured, double bound) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "<= %g", bound);
    out.push_back({suite, name, measured <= bound, measured, buf});
}

void suite_procrustean(Checks& out) {
    double residual = 0.0, prob_err = 0.0, state_err = 0.0, sum_err = 0.0;
    bool product = true;
    for (int i = 1; i <= 100; ++i) {
        const double l2 = 0.005 * i;
        const auto o = procrustean_oracle(QubitPairState::from_lambda2(l2));
        residual = std::max(residual, o.completeness_residual);
        prob_err = std::max(prob_err, std::abs(o.p_success - scp(QubitPairState::from_lambda2(l2)).value()));
        sum_err = std::max(sum_err, std::abs(o.p_success + o.p_failure - 1.0));
        state_err = std::max({state_err, std::abs(o.success_state[0] - 0.5), std::abs(o.success_state[1] - 0.5)});
        product = product && o.failure_is_product;
    }
    check_le(out, "procrustean", "completeness residual", residual, 1e-12);
    check_le(out, "procrustean", "|p_success - scp|", prob_err, 1e-12);
    check_le(out, "procrustean", "|p_success + p_failure - 1|", sum_err, 1e-12);
    check_le(out, "procrustean", "success Schmidt deviation from (1/2, 1/2)", state_err, 1e-10);
    out.push_back({"procrustean", "failure outcome is a product state", product, product ? 1.0 : 0.0, "== 1"});
}

void suite_haar(Checks& out, std::uint64_t seed) {
    constexpr int kSamples = 1'000'000;
    constexpr int kBins = 100;
    Rng rng(mix_seed(seed, {1}));
    const ScpDistribution d = haar();
    std::vector<double> counts(kBins, 0.0);
    double sum = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const double p = sample(d, rng);
        sum += p;
        const double lambda2 = p / 2.0;
        counts[std::min(kBins - 1, static_cast<int>(lambda2 / 0.5 * kBins))] += 1.0;
    }
    check_le(out, "haar", "|mean SCP - 1/4|", std::abs(sum / kSamples - 0.25), 0.001);

    // Bin masses from the lambda2 law 6(1 - 2x)^2, whose CDF is 1 - (1 - 2x)^3.
    auto lambda_cdf = [](double x) { return 1.0 - std::pow(1.0 - 2.0 * x, 3); };
    double chi2 = 0.0;
    for (int b = 0; b < kBins; ++b) {
        const double expected = kSamples * (lambda_cdf(0.5 * (b + 1) / kBins) - lambda_cdf(0.5 * b / kBins));
        chi2 += (counts[b] - expected) * (counts[b] - expected) / expected;
    }
    const double critical = boost::math::quantile(boost::math::chi_squared(kBins - 1), 0.999);
    check_le(out, "haar", "lambda2 histogram chi-square (100 bins)", chi2, critical);
}

void suite_min2(Checks& out, std::uint64_t seed) {
    constexpr int kSamples = 1'000'000;
    const ScpDistribution d = min_transform(uniform(0.3, 0.7));
    Rng rng(mix_seed(seed, {2}));
    double sum = 0.0;
    for (int i = 0; i < kSamples; ++i) sum += sample(d, rng);
    check_le(out, "min2", "|analytic mean - 13/30|", std::abs(mean(d) - 13.0 / 30.0), 1e-12);
    check_le(out, "min2", "|empirical mean - analytic|", std::abs(sum / kSamples - mean(d)), 0.001);
}

SchmidtVector random_schmidt(Rng& rng, std::size_t len) {
    std::vector<double> v(len);
    double s = 0.0;
    for (double& x : v) s += (x = rng.uniform_pos());
    for (double& x : v) x /= s;
    std::sort(v.begin(), v.end(), std::greater<>());
    return SchmidtVector(v);
}

void suite_vidal(Checks& out, std::uint64_t seed) {
    const SchmidtVector singlet{0.5, 0.5};
    double err = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double l2 = 0.5 * i / 999.0;
        const SchmidtVector s{1.0 - l2, l2};
        err = std::max(err, std::abs(vidal_probability(s, singlet) - std::min(1.0, 2.0 * l2)));
    }
    check_le(out, "vidal", "max |vidal(psi, singlet) - min{1, 2 lambda2}|", err, 1e-12);

    Rng rng(mix_seed(seed, {3}));
    double worst = 0.0;
    int majorized = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto psi = random_schmidt(rng, 1 + rng.below(4));
        const auto phi = random_schmidt(rng, 1 + rng.below(4));
        if (majorizes(phi, psi)) {
            ++majorized;
            worst = std::max(worst, 1.0 - vidal_probability(psi, phi));
        }
    }
    check_le(out, "vidal", "majorized pairs: max (1 - conversion probability)", worst, 1e-12);
    out.push_back({"vidal", "majorized pairs found", majorized > 0, static_cast<double>(majorized), "> 0"});
}

std::vector<std::size_t> bfs_sizes(const ClassicalGraph& g) {
    std::vector<std::vector<NodeId>> adj(g.node_count);
    for (auto [a, b] : g.open_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> seen(g.node_count, false);
    std::vector<std::size_t> sizes;
    for (NodeId s = 0; s < g.node_count; ++s) {
        if (seen[s]) continue;
        std::size_t n = 0;
        std::queue<NodeId> q;
        q.push(s);
        seen[s] = true;
        while (!q.empty()) {
            const NodeId v = q.front();
            q.pop();
            ++n;
            for (NodeId w : adj[v])
                if (!seen[w]) seen[w] = true, q.push(w);
        }
        sizes.push_back(n);
    }
    return sizes;
}

void suite_dsu(Checks& out, std::uint64_t seed) {
    Rng rng(mix_seed(seed, {4}));
    int mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
        ClassicalGraph g;
        g.node_count = 1 + rng.below(64);
        const std::size_t m = rng.below(2 * g.node_count + 1);
        for (std::size_t k = 0; k < m && g.node_count > 1; ++k) {
            const auto a = static_cast<NodeId>(rng.below(g.node_count));
            const auto b = static_cast<NodeId>(rng.below(g.node_count));
            if (a != b) g.open_edges.emplace_back(a, b);
        }
        auto expected = bfs_sizes(g);
        auto got = components(g).component_sizes;
        std::sort(expected.begin(), expected.end());
        std::sort(got.begin(), got.end());
        mismatches += expected != got;
    }
    check_le(out, "dsu", "union-find vs BFS component-size mismatches (1000 graphs)", mismatches, 0.0);
}

void suite_distill(Checks& out) {
    double eq_err = 0.0, dominance = -1.0;
    for (int i = 0; i <= 100; ++i) {
        const Scp p(i / 100.0);
        eq_err = std::max(eq_err, std::abs(distill_independent(p, p) - distill_equal(p, 2)));
        for (int j = 0; j <= 100; ++j) {
            const Scp q(j / 100.0);
            const double d = distill_independent(p, q);
            dominance = std::max({dominance, std::max(p.value(), q.value()) - d, separate_conversion(p, q) - d});
        }
    }
    check_le(out, "distill", "max |independent(p, p) - equal(p, 2)|", eq_err, 1e-12);
    check_le(out, "distill", "max shortfall of optimal vs max/separate", dominance, 1e-12);
    const double t = double_bond_cep_threshold(1.0 - 2.0 * std::sin(std::acos(-1.0) / 18.0));
    check_le(out, "distill", "|double-bond honeycomb CEP threshold - 0.358|", std::abs(t - 0.358), 0.001);
}

}  // namespace

const std::vector<std::string>& verification_suites() {
    static const std::vector<std::string> names{"procrustean", "haar", "min2", "vidal", "dsu", "distill"};
    return names;
}

std::vector<CheckResult> run_verification(const std::vector<std::string>& only, std::uint64_t seed, bool inject_fault) {
    for (const auto& name : only)
        if (std::find(verification_suites().begin(), verification_suites().end(), name) == verification_suites().end())
            throw InvalidArgument("unknown verification suite '" + name + "'");
    auto wanted = [&](const std::string& name) {
        return only.empty() || std::find(only.begin(), only.end(), name) != only.end();
    };
    Checks out;
    if (wanted("procrustean")) suite_procrustean(out);
    if (wanted("haar")) suite_haar(out, seed);
    if (wanted("min2")) suite_min2(out, seed);
    if (wanted("vidal")) suite_vidal(out, seed);
    if (wanted("dsu")) suite_dsu(out, seed);
    if (wanted("distill")) suite_distill(out);
    if (inject_fault && !out.empty()) {
        out.front().measured = std::numeric_limits<double>::infinity();
        out.front().passed = false;
    }
    return out;
}

}  // namespace epnet
