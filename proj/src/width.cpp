#include "rclab/width.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <random>

#include "rclab/error.hpp"

namespace rclab {

namespace {

void check_sets(const Circuit& c, const std::vector<GateId>& sources, const std::vector<GateId>& sinks) {
    if (sources.empty() || sinks.empty()) throw Error("cut: source and sink sets must be nonempty");
    std::vector<char> mark(c.size(), 0);
    for (GateId s : sources) {
        if (s >= c.size()) throw Error("cut: source id out of range");
        mark[s] = 1;
    }
    for (GateId t : sinks) {
        if (t >= c.size()) throw Error("cut: sink id out of range");
        if (mark[t]) throw Error("cut: gate " + std::to_string(t) + " is both source and sink");
    }
}

class Dinic {
public:
    explicit Dinic(int n) : adj_(n), level_(n), it_(n) {}

    int add_edge(int u, int v, std::int64_t cap) {
        adj_[u].push_back(static_cast<int>(edges_.size()));
        edges_.push_back({v, cap});
        adj_[v].push_back(static_cast<int>(edges_.size()));
        edges_.push_back({u, 0});
        return static_cast<int>(edges_.size()) - 2;
    }

    std::int64_t run(int s, int t) {
        std::int64_t flow = 0;
        while (bfs(s, t)) {
            std::fill(it_.begin(), it_.end(), 0);
            while (auto f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) flow += f;
        }
        return flow;
    }

    /// Nodes reachable from s in the residual graph.
    std::vector<char> reachable(int s) const {
        std::vector<char> seen(adj_.size(), 0);
        std::queue<int> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int id : adj_[u]) {
                const auto& e = edges_[id];
                if (e.cap > 0 && !seen[e.to]) {
                    seen[e.to] = 1;
                    q.push(e.to);
                }
            }
        }
        return seen;
    }

private:
    struct Edge {
        int to;
        std::int64_t cap;
    };

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int id : adj_[u]) {
                const auto& e = edges_[id];
                if (e.cap > 0 && level_[e.to] < 0) {
                    level_[e.to] = level_[u] + 1;
                    q.push(e.to);
                }
            }
        }
        return level_[t] >= 0;
    }

    std::int64_t dfs(int u, int t, std::int64_t pushed) {
        if (u == t) return pushed;
        for (auto& i = it_[u]; i < adj_[u].size(); ++i) {
            int id = adj_[u][i];
            auto& e = edges_[id];
            if (e.cap <= 0 || level_[e.to] != level_[u] + 1) continue;
            if (auto f = dfs(e.to, t, std::min(pushed, e.cap))) {
                e.cap -= f;
                edges_[id ^ 1].cap += f;
                return f;
            }
        }
        return 0;
    }

    std::vector<std::vector<int>> adj_;
    std::vector<Edge> edges_;
    std::vector<int> level_;
    std::vector<std::size_t> it_;
};

}  // namespace

std::string_view cut_method_name(CutMethod m) { return m == CutMethod::MaxFlow ? "maxflow" : "bruteforce"; }

CutReport cut_width(const Circuit& circuit, const std::vector<GateId>& sources, const std::vector<GateId>& sinks) {
    check_sets(circuit, sources, sinks);
    const int n = static_cast<int>(circuit.size());
    const int S = n, T = n + 1;
    // Larger than any possible cut, so terminal edges are never saturated.
    const std::int64_t inf = static_cast<std::int64_t>(circuit.size()) * 4 + 16;
    Dinic g(n + 2);
    auto wires = circuit.wires();
    std::vector<int> edge_of(wires.size());
    for (std::size_t i = 0; i < wires.size(); ++i) {
        edge_of[i] = g.add_edge(static_cast<int>(wires[i].src), static_cast<int>(wires[i].dst), 1);
    }
    for (GateId s : sources) g.add_edge(S, static_cast<int>(s), inf);
    for (GateId t : sinks) g.add_edge(static_cast<int>(t), T, inf);
    CutReport rep;
    rep.method = CutMethod::MaxFlow;
    rep.sources = sources;
    rep.sinks = sinks;
    rep.value = static_cast<int>(g.run(S, T));
    auto side = g.reachable(S);
    for (const Wire& w : wires) {
        if (side[w.src] && !side[w.dst]) rep.witness.push_back(w);
    }
    return rep;
}

bool separates(const Circuit& circuit, const std::vector<Wire>& removed, const std::vector<GateId>& sources,
               const std::vector<GateId>& sinks) {
    auto wires = circuit.wires();
    std::vector<std::vector<GateId>> out(circuit.size());
    for (const Wire& w : wires) {
        if (std::find(removed.begin(), removed.end(), w) == removed.end()) out[w.src].push_back(w.dst);
    }
    std::vector<char> seen(circuit.size(), 0);
    std::vector<GateId> stack(sources.begin(), sources.end());
    for (GateId s : sources) seen[s] = 1;
    while (!stack.empty()) {
        GateId u = stack.back();
        stack.pop_back();
        for (GateId v : out[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                stack.push_back(v);
            }
        }
    }
    for (GateId t : sinks) {
        if (seen[t]) return false;
    }
    return true;
}

CutReport brute_force_cut(const Circuit& circuit, const std::vector<GateId>& sources,
                          const std::vector<GateId>& sinks) {
    if (circuit.size() > kBruteForceMaxGates) {
        throw Error("brute_force_cut: at most " + std::to_string(kBruteForceMaxGates) + " gates, got " +
                    std::to_string(circuit.size()));
    }
    check_sets(circuit, sources, sinks);
    auto wires = circuit.wires();
    const int m = static_cast<int>(wires.size());
    CutReport rep;
    rep.method = CutMethod::BruteForce;
    rep.sources = sources;
    rep.sinks = sinks;
    for (int k = 0; k <= m; ++k) {
        // Lexicographic k-subsets of wire indices.
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            std::vector<Wire> removed;
            for (int i : idx) removed.push_back(wires[i]);
            if (separates(circuit, removed, sources, sinks)) {
                rep.value = k;
                rep.witness = std::move(removed);
                return rep;
            }
            int i = k - 1;
            while (i >= 0 && idx[i] == m - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    throw Error("brute_force_cut: no separating set found");
}

CutReport input_output_cut(const Circuit& circuit) { return cut_width(circuit, circuit.inputs(), circuit.outputs()); }

bool depends_on_all_inputs(const Circuit& circuit, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> x(circuit.n_inputs());
    for (auto& b : x) b = rng() & 1U;
    auto base = evaluate(circuit, x);
    for (auto& b : x) {
        b ^= 1U;
        bool changed = evaluate(circuit, x) != base;
        b ^= 1U;
        if (!changed) return false;
    }
    return true;
}

std::int64_t min_delivery_ticks(std::int64_t n, std::int64_t w) {
    if (w <= 0) throw Error("min_delivery_ticks: cut width must be positive");
    return (n + w - 1) / w;
}

}  // namespace rclab
