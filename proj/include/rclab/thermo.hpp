#pragma once

/// @file thermo.hpp
/// @brief Gibbs entropies, the entropy triangle inequality, Landauer erasure accounting and budgets.
///
/// Entropies are in bits. Budgets default to normalized units with
/// k_B * T_env * ln 2 = 1, so one unit of heat pays for one erased bit.
/// Passing T_env (kelvin) switches to SI joules via kBoltzmann.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rclab/circuit.hpp"

namespace rclab {

inline constexpr double kBoltzmann = 1.380649e-23;  ///< J/K

/// Joint distribution of n variables over {0..a-1}.
///
/// probs is dense: the outcome (x_0, ..., x_{n-1}) has index
/// sum_i x_i * a^(n-1-i), so x_0 is the most significant digit.
struct FiniteDistribution {
    int n_vars = 1;
    int alphabet = 2;
    std::vector<double> probs;

    /// Throws Error unless probabilities are >= 0 and sum to 1 within 1e-12.
    void validate() const;
    std::vector<int> outcome(std::size_t index) const;

    static FiniteDistribution uniform(int n_vars, int alphabet);
};

double joint_entropy(const FiniteDistribution& dist);
std::vector<double> marginal_entropies(const FiniteDistribution& dist);

struct TriangleResult {
    double joint = 0;
    double marginal_sum = 0;
    bool holds = false;     ///< joint <= marginal_sum + 1e-9
    bool equality = false;  ///< |joint - marginal_sum| <= 1e-9
};

TriangleResult triangle_check(const FiniteDistribution& dist);

/// Entropy of a probability vector (zeros skipped). No normalization check.
double entropy_bits(const std::vector<double>& p);

enum class ErasureRule { Conservative, InfoTheoretic };

std::string_view erasure_rule_name(ErasureRule r);
std::optional<ErasureRule> parse_erasure_rule(std::string_view name);

/// Weighted set of circuit input vectors (weights normalized on use).
struct InputSet {
    std::vector<std::vector<std::uint8_t>> vectors;
    std::vector<double> weights;

    /// All 2^n vectors with equal weight; n <= 20.
    static InputSet uniform(int n_inputs);
    /// `count` vectors drawn uniformly with a fixed seed, equal weight.
    static InputSet sampled(int n_inputs, int count, std::uint64_t seed);
};

struct ErasureLedger {
    ErasureRule rule = ErasureRule::Conservative;
    int d = 3;
    double eta = 1;
    std::optional<double> T_env;     ///< empty: normalized units
    std::vector<double> per_gate;    ///< bits erased by each gate's firing
    std::vector<double> erased;      ///< per tick; index = tick (gate level)
    std::vector<double> cumulative;  ///< E(t), non-decreasing

    double total() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

/// One firing per gate at tick = its level.
///
/// Conservative: max(0, fan-in - distinct output signals) for irreversible
/// gates, which is 1 bit per NAND firing and 0 for copies and buffers.
/// Info-theoretic: H(gate inputs) - H(gate output) under `inputs`
/// (uniform over all input vectors when omitted).
ErasureLedger erasures_from_trace(const Circuit& circuit, ErasureRule rule = ErasureRule::Conservative,
                                  const InputSet* inputs = nullptr, int d = 3, double eta = 1,
                                  std::optional<double> T_env = std::nullopt);

/// eta * t^(d-1) / (k_B T_env ln 2) bits per tick; normalized when T_env is empty.
double erasure_rate_budget(double t, int d, double eta, std::optional<double> T_env = std::nullopt);

/// Integral of the rate over [0, T]: eta * T^d / (d k_B T_env ln 2).
double erasure_cumulative_budget(double T, int d, double eta, std::optional<double> T_env = std::nullopt);

/// "# rclab-erasure v1" then tick,erased,cumulative,budget rows (budget = rate budget).
std::string ledger_csv(const ErasureLedger& ledger);

}  // namespace rclab
