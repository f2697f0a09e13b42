#include "epnet/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "epnet/errors.hpp"

namespace epnet {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

Scp::Scp(double p) : p_(p) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("scp " + std::to_string(p) + " outside [0, 1]");
}

QubitPairState::QubitPairState(double l1, double l2) : lambda1(l1), lambda2(l2) {
    if (!(l2 >= 0.0) || !(l1 >= l2) || std::abs(l1 + l2 - 1.0) > kInputTol)
        throw InvalidArgument("invalid Schmidt pair (" + std::to_string(l1) + ", " +
                              std::to_string(l2) + ")");
}

SchmidtVector::SchmidtVector(std::vector<double> coefficients) : c_(std::move(coefficients)) {
    if (c_.empty()) throw InvalidArgument("empty Schmidt vector");
    double sum = 0.0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!(c_[i] >= 0.0)) throw InvalidArgument("negative Schmidt coefficient");
        if (i > 0 && c_[i] > c_[i - 1] + kExactTol)
            throw InvalidArgument("Schmidt coefficients must be nonincreasing");
        sum += c_[i];
    }
    if (std::abs(sum - 1.0) > kInputTol) throw InvalidArgument("Schmidt coefficients must sum to 1");
}

Scp scp(const QubitPairState& state) { return Scp(std::min(1.0, 2.0 * state.lambda2)); }

double vidal_probability(const SchmidtVector& source, const SchmidtVector& target) {
    const std::size_t d = std::max(source.size(), target.size());
    double best = 1.0;
    double tail_src = 0.0;
    double tail_tgt = 0.0;
    // Tail sums accumulated from the back.
    for (std::size_t k = d; k-- > 0;) {
        tail_src += source[k];
        tail_tgt += target[k];
        if (tail_tgt <= 0.0) continue;
        best = std::min(best, tail_src / tail_tgt);
    }
    return clamp01(best);
}

bool majorizes(const SchmidtVector& phi, const SchmidtVector& psi) {
    const std::size_t d = std::max(phi.size(), psi.size());
    double prefix_phi = 0.0;
    double prefix_psi = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        prefix_phi += phi[k];
        prefix_psi += psi[k];
        if (prefix_psi > prefix_phi + kExactTol) return false;
    }
    return true;
}

ProcrusteanOutcome procrustean_oracle(const QubitPairState& state) {
    if (state.lambda2 <= 0.0)
        throw UnentangledInput("product state: conversion probability is 0, no filter exists");

    const double ratio = state.lambda2 / state.lambda1;
    Eigen::Matrix2d m1 = Eigen::Matrix2d::Zero();
    m1(0, 0) = std::sqrt(ratio);
    m1(1, 1) = 1.0;
    Eigen::Matrix2d m2 = Eigen::Matrix2d::Zero();
    m2(0, 0) = std::sqrt(std::max(0.0, 1.0 - ratio));

    const Eigen::Matrix2d completeness =
        m1.transpose() * m1 + m2.transpose() * m2 - Eigen::Matrix2d::Identity();

    // Basis order |00>, |01>, |10>, |11>; first qubit is the filtered one.
    Eigen::Vector4d psi(std::sqrt(state.lambda1), 0.0, 0.0, std::sqrt(state.lambda2));
    auto on_first = [](const Eigen::Matrix2d& m) {
        Eigen::Matrix4d k = Eigen::Matrix4d::Zero();
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) k.block<2, 2>(2 * a, 2 * b) = m(a, b) * Eigen::Matrix2d::Identity();
        return k;
    };
    const Eigen::Vector4d out1 = on_first(m1) * psi;
    const Eigen::Vector4d out2 = on_first(m2) * psi;

    // Schmidt probabilities of a normalized 2x2 amplitude matrix.
    auto schmidt = [](const Eigen::Vector4d& amplitudes) {
        Eigen::Matrix2d c;
        c << amplitudes(0), amplitudes(1), amplitudes(2), amplitudes(3);
        const Eigen::Vector2d s = Eigen::JacobiSVD<Eigen::Matrix2d>(c).singularValues();
        std::vector<double> probs{s(0) * s(0), s(1) * s(1)};
        const double norm = probs[0] + probs[1];
        for (double& x : probs) x /= norm;
        return probs;
    };

    const double p_success = out1.squaredNorm();
    const double p_failure = out2.squaredNorm();
    const auto success = schmidt(out1 / std::sqrt(p_success));
    const bool failure_is_product = p_failure == 0.0 || schmidt(out2 / std::sqrt(p_failure))[1] < kExactTol;

    return ProcrusteanOutcome{
        completeness.cwiseAbs().maxCoeff(),
        p_success,
        p_failure,
        SchmidtVector(success),
        failure_is_product,
    };
}

Scp swap_scp(Scp a, Scp b) { return Scp(std::min(a.value(), b.value())); }

Scp distill_equal(Scp p, int n) {
    if (n < 1) throw InvalidArgument("distillation needs at least one copy");
    const double lambda1 = 1.0 - p.value() / 2.0;
    return Scp(clamp01(2.0 * (1.0 - std::pow(lambda1, n))));
}

Scp distill_independent(Scp p1, Scp p2) {
    return Scp(clamp01(p1.value() + p2.value() - p1.value() * p2.value() / 2.0));
}

double distill_many(std::span<const double> scps) {
    if (scps.empty()) return 0.0;
    if (scps.size() == 1) return clamp01(scps[0]);
    double prod_lambda1 = 1.0;
    for (double p : scps) prod_lambda1 *= 1.0 - p / 2.0;
    return clamp01(2.0 * (1.0 - prod_lambda1));
}

Scp separate_conversion(Scp p1, Scp p2) {
    return Scp(clamp01(1.0 - (1.0 - p1.value()) * (1.0 - p2.value())));
}

double double_bond_cep_threshold(double p_c) {
    if (!(p_c >= 0.0 && p_c <= 1.0)) throw InvalidArgument("p_c must be in [0, 1]");
    return 2.0 - std::sqrt(4.0 - 2.0 * p_c);
}

}  // namespace epnet
