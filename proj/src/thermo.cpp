#include "rclab/thermo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "rclab/error.hpp"

namespace rclab {

void FiniteDistribution::validate() const {
    if (n_vars < 1 || alphabet < 1) throw Error("distribution needs n_vars >= 1 and alphabet >= 1");
    double expect = 1;
    for (int i = 0; i < n_vars; ++i) expect *= alphabet;
    if (static_cast<double>(probs.size()) != expect) {
        throw Error("distribution has " + std::to_string(probs.size()) + " entries, expected " +
                    std::to_string(static_cast<long long>(expect)));
    }
    double sum = 0;
    for (double p : probs) {
        if (!(p >= 0)) throw Error("negative or NaN probability");
        sum += p;
    }
    if (std::abs(sum - 1) > 1e-12) throw Error("probabilities sum to " + std::to_string(sum) + ", not 1");
}

std::vector<int> FiniteDistribution::outcome(std::size_t index) const {
    std::vector<int> x(n_vars);
    for (int i = n_vars - 1; i >= 0; --i) {
        x[i] = static_cast<int>(index % alphabet);
        index /= alphabet;
    }
    return x;
}

FiniteDistribution FiniteDistribution::uniform(int n_vars, int alphabet) {
    std::size_t n = 1;
    for (int i = 0; i < n_vars; ++i) n *= alphabet;
    return {n_vars, alphabet, std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

double entropy_bits(const std::vector<double>& p) {
    double h = 0;
    for (double x : p) {
        if (x > 0) h -= x * std::log2(x);
    }
    return h;
}

double joint_entropy(const FiniteDistribution& dist) {
    dist.validate();
    return entropy_bits(dist.probs);
}

std::vector<double> marginal_entropies(const FiniteDistribution& dist) {
    dist.validate();
    std::vector<std::vector<double>> m(dist.n_vars, std::vector<double>(dist.alphabet, 0.0));
    for (std::size_t k = 0; k < dist.probs.size(); ++k) {
        auto x = dist.outcome(k);
        for (int i = 0; i < dist.n_vars; ++i) m[i][x[i]] += dist.probs[k];
    }
    std::vector<double> h;
    for (const auto& p : m) h.push_back(entropy_bits(p));
    return h;
}

TriangleResult triangle_check(const FiniteDistribution& dist) {
    TriangleResult r;
    r.joint = joint_entropy(dist);
    for (double h : marginal_entropies(dist)) r.marginal_sum += h;
    r.holds = r.joint <= r.marginal_sum + 1e-9;
    r.equality = std::abs(r.joint - r.marginal_sum) <= 1e-9;
    return r;
}

std::string_view erasure_rule_name(ErasureRule r) {
    return r == ErasureRule::Conservative ? "conservative" : "info-theoretic";
}

std::optional<ErasureRule> parse_erasure_rule(std::string_view name) {
    if (name == "conservative") return ErasureRule::Conservative;
    if (name == "info-theoretic" || name == "info") return ErasureRule::InfoTheoretic;
    return std::nullopt;
}

InputSet InputSet::uniform(int n_inputs) {
    if (n_inputs < 0 || n_inputs > 20) throw Error("uniform input set supports 0..20 inputs");
    InputSet s;
    for (std::uint64_t w = 0; w < (1ULL << n_inputs); ++w) {
        std::vector<std::uint8_t> v(n_inputs);
        for (int i = 0; i < n_inputs; ++i) v[i] = (w >> i) & 1U;
        s.vectors.push_back(std::move(v));
    }
    s.weights.assign(s.vectors.size(), 1.0);
    return s;
}

InputSet InputSet::sampled(int n_inputs, int count, std::uint64_t seed) {
    if (count < 1) throw Error("sample count must be positive");
    std::mt19937_64 rng(seed);
    InputSet s;
    for (int k = 0; k < count; ++k) {
        std::vector<std::uint8_t> v(n_inputs);
        for (auto& b : v) b = rng() & 1U;
        s.vectors.push_back(std::move(v));
    }
    s.weights.assign(s.vectors.size(), 1.0);
    return s;
}

namespace {

/// Fan-in minus the single output signal; a gate's output is one signal however many read it.
double conservative_bits(const Gate& g) {
    if (!is_irreversible(g.kind)) return 0;
    return std::max(0, static_cast<int>(g.inputs.size()) - 1);
}

std::vector<double> info_bits(const Circuit& c, const InputSet& in) {
    if (in.vectors.size() != in.weights.size()) throw Error("input set weights do not match vectors");
    double wsum = 0;
    for (double w : in.weights) {
        if (!(w >= 0)) throw Error("negative input weight");
        wsum += w;
    }
    if (wsum <= 0) throw Error("input set has zero total weight");

    const std::size_t n = c.size();
    // Per gate: joint histogram of its input values (<= 2 bits) and of its output.
    std::vector<std::array<double, 4>> joint(n, {0, 0, 0, 0});
    std::vector<std::array<double, 2>> out(n, {0, 0});
    for (std::size_t k = 0; k < in.vectors.size(); ++k) {
        const double w = in.weights[k] / wsum;
        auto v = evaluate_all(c, in.vectors[k]);
        for (const auto& g : c.gates()) {
            unsigned idx = 0;
            for (auto src : g.inputs) idx = idx * 2 + v[src];
            joint[g.id][idx] += w;
            out[g.id][v[g.id]] += w;
        }
    }
    std::vector<double> bits(n, 0.0);
    for (const auto& g : c.gates()) {
        if (g.inputs.empty()) continue;
        const double hin = entropy_bits({joint[g.id].begin(), joint[g.id].end()});
        const double hout = entropy_bits({out[g.id].begin(), out[g.id].end()});
        bits[g.id] = std::max(0.0, hin - hout);
    }
    return bits;
}

double heat_scale(std::optional<double> T_env) {
    if (!T_env) return 1.0;
    if (!(*T_env > 0)) throw Error("T_env must be positive");
    return 1.0 / (kBoltzmann * *T_env * std::numbers::ln2);
}

}  // namespace

ErasureLedger erasures_from_trace(const Circuit& circuit, ErasureRule rule, const InputSet* inputs, int d,
                                  double eta, std::optional<double> T_env) {
    if (!circuit.topological_order()) throw Error("erasure accounting needs an acyclic circuit");
    if (!circuit.feedback_edges().empty()) throw Error("erasure accounting needs a circuit without feedback");
    ErasureLedger L;
    L.rule = rule;
    L.d = d;
    L.eta = eta;
    L.T_env = T_env;
    if (rule == ErasureRule::Conservative) {
        for (const auto& g : circuit.gates()) L.per_gate.push_back(conservative_bits(g));
    } else if (inputs) {
        L.per_gate = info_bits(circuit, *inputs);
    } else {
        L.per_gate = info_bits(circuit, InputSet::uniform(circuit.n_inputs()));
    }
    const auto lv = circuit.levels();
    L.erased.assign(circuit.depth() + 1, 0.0);
    for (std::size_t g = 0; g < circuit.size(); ++g) L.erased[lv[g]] += L.per_gate[g];
    double acc = 0;
    for (double e : L.erased) L.cumulative.push_back(acc += e);
    return L;
}

double erasure_rate_budget(double t, int d, double eta, std::optional<double> T_env) {
    if (t < 1) throw Error("rate budget needs t >= 1");
    if (d < 1) throw Error("dimension must be at least 1");
    return eta * std::pow(t, d - 1) * heat_scale(T_env);
}

double erasure_cumulative_budget(double T, int d, double eta, std::optional<double> T_env) {
    if (T < 1) throw Error("cumulative budget needs T >= 1");
    if (d < 1) throw Error("dimension must be at least 1");
    return eta * std::pow(T, d) / d * heat_scale(T_env);
}

std::string ledger_csv(const ErasureLedger& ledger) {
    std::ostringstream out;
    out.precision(12);
    out << "# rclab-erasure v1\ntick,erased,cumulative,budget\n";
    for (std::size_t t = 1; t < ledger.erased.size(); ++t) {
        out << t << ',' << ledger.erased[t] << ',' << ledger.cumulative[t] << ','
            << erasure_rate_budget(static_cast<double>(t), ledger.d, ledger.eta, ledger.T_env) << '\n';
    }
    return out.str();
}

}  // namespace rclab
