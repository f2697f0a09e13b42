#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace epnet {

/// Exact-algebra tolerance.
inline constexpr double kExactTol = 1e-12;
/// Normalization slack accepted on inputs (absorbs decimal literals).
inline constexpr double kInputTol = 1e-9;

/// Singlet conversion probability, a value in [0, 1].
class Scp {
public:
    /// Throws InvalidArgument outside [0, 1].
    explicit Scp(double p);
    double value() const noexcept { return p_; }
    operator double() const noexcept { return p_; }

private:
    double p_;
};

/// Two-qubit pure state by its Schmidt probabilities, lambda1 >= lambda2 >= 0,
/// lambda1 + lambda2 = 1. Probabilities, not amplitudes.
struct QubitPairState {
    double lambda1;
    double lambda2;

    /// Validating constructor.
    QubitPairState(double l1, double l2);
    static QubitPairState from_lambda2(double l2) { return {1.0 - l2, l2}; }
};

/// Descending, normalized Schmidt probabilities of a bipartite pure state.
class SchmidtVector {
public:
    /// Throws InvalidArgument unless nonnegative, nonincreasing and summing to 1.
    explicit SchmidtVector(std::vector<double> coefficients);
    SchmidtVector(std::initializer_list<double> coefficients)
        : SchmidtVector(std::vector<double>(coefficients)) {}

    std::span<const double> coefficients() const noexcept { return c_; }
    std::size_t size() const noexcept { return c_.size(); }
    double operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0.0; }

private:
    std::vector<double> c_;
};

Scp scp(const QubitPairState& state);

/// Optimal SLOCC probability of converting `source` into `target`: the
/// minimum over k of the ratio of tail sums from k, with shorter vectors
/// zero-padded.
double vidal_probability(const SchmidtVector& source, const SchmidtVector& target);

/// True iff psi is majorized by phi, i.e. psi -> phi is deterministic under LOCC.
bool majorizes(const SchmidtVector& phi, const SchmidtVector& psi);

struct ProcrusteanOutcome {
    double completeness_residual;  // max-norm of M1^T M1 + M2^T M2 - I
    double p_success;
    double p_failure;
    SchmidtVector success_state;
    bool failure_is_product;  // failure state has Schmidt rank 1 (vacuously true at zero weight)
};

/// Builds the two-outcome local filter on Alice's qubit, applies it to the
/// 4-amplitude state and reports the outcome statistics. Throws
/// UnentangledInput for lambda2 = 0.
ProcrusteanOutcome procrustean_oracle(const QubitPairState& state);

/// SCP after swapping two pairs.
Scp swap_scp(Scp a, Scp b);

/// Joint distillation of n identical copies: min{1, 2(1 - lambda1^n)}.
Scp distill_equal(Scp p, int n);

/// Joint distillation of two different pairs: min{1, p1 + p2 - p1 p2 / 2}.
Scp distill_independent(Scp p1, Scp p2);

/// Joint distillation of any number of pairs: min{1, 2(1 - prod lambda1_i)}.
/// Reduces to distill_equal / distill_independent; returns 0 for an empty set.
double distill_many(std::span<const double> scps);

/// At least one of two separately converted pairs succeeds.
Scp separate_conversion(Scp p1, Scp p2);

/// Per-bond SCP at which a double-bond lattice with bond threshold p_c percolates.
double double_bond_cep_threshold(double p_c);

}  // namespace epnet
