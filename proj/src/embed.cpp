#include "rclab/embed.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "rclab/error.hpp"

namespace rclab {

namespace {

constexpr int kCoordBias = 1 << 11;
constexpr int kMaxTick = (1 << 16) - 1;

std::uint64_t site_key(const Site& s) {
    std::uint64_t k = 0;
    for (int i = 0; i < kMaxDim; ++i) {
        int v = s[i] + kCoordBias;
        if (v < 0 || v >= 2 * kCoordBias) throw Error("embed: coordinate out of supported range");
        k = (k << 12) | static_cast<std::uint64_t>(v);
    }
    return k;
}

std::uint64_t cell_tick_key(const Site& s, int tick) {
    if (tick < 0 || tick > kMaxTick) throw Error("embed: tick out of supported range");
    return (site_key(s) << 16) | static_cast<std::uint64_t>(tick);
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

bool is_io(GateKind k) { return k == GateKind::Input || k == GateKind::Output; }

/// All offsets of the 3^d L-infinity neighbourhood, the zero offset first.
std::vector<Site> neighbourhood(int d) {
    std::vector<Site> out{Site{}};
    int total = 1;
    for (int i = 0; i < d; ++i) total *= 3;
    for (int code = 0; code < total; ++code) {
        Site s{};
        int x = code;
        bool zero = true;
        for (int i = 0; i < d; ++i) {
            s[i] = x % 3 - 1;
            x /= 3;
            zero = zero && s[i] == 0;
        }
        if (!zero) out.push_back(s);
    }
    return out;
}

Site add(const Site& a, const Site& b) {
    Site s{};
    for (int i = 0; i < kMaxDim; ++i) s[i] = a[i] + b[i];
    return s;
}

/// Per (cell, tick) reservations of routed signals, keyed by source gate.
class Router {
public:
    Router(int d, const EmbedOptions& opt) : d_(d), opt_(opt), nbr_(neighbourhood(d)) {}

    void mark_exempt(const Site& s) { exempt_.insert(site_key(s)); }

    Path route(GateId src, const Site& from, int t_src, const Site& to) {
        if (from == to) throw Error("embed: wire endpoints share a site");
        from_ = from;
        to_ = to;
        if (auto p = straight(src, from, t_src, to)) {
            commit(src, *p, t_src);
            return *p;
        }
        for (int margin : {1, 4, 16}) {
            if (auto p = search(src, from, t_src, to, margin)) {
                commit(src, *p, t_src);
                return *p;
            }
        }
        throw Error(report(src, from, t_src, to));
    }

private:
    int tick_of(int t_src, std::size_t k) const { return t_src + path_tick_offset(k, opt_.c); }

    bool free_at(GateId src, const Site& s, int tick) const {
        if (s == from_ || s == to_ || exempt_.count(site_key(s))) return true;
        auto it = res_.find(cell_tick_key(s, tick));
        if (it == res_.end()) return true;
        if (std::find(it->second.begin(), it->second.end(), src) != it->second.end()) return true;
        return static_cast<int>(it->second.size()) < opt_.congestion_cap;
    }

    std::optional<Path> straight(GateId src, const Site& from, int t_src, const Site& to) const {
        Path p{from};
        Site cur = from;
        while (cur != to) {
            for (int i = 0; i < d_; ++i) cur[i] += (to[i] > cur[i]) - (to[i] < cur[i]);
            p.push_back(cur);
        }
        for (std::size_t k = 1; k + 1 < p.size(); ++k) {
            if (!free_at(src, p[k], tick_of(t_src, k))) return std::nullopt;
        }
        return p;
    }

    /// Breadth-first search in space-time inside the endpoints' bounding box grown by `margin`.
    std::optional<Path> search(GateId src, const Site& from, int t_src, const Site& to, int margin) const {
        Site lo{}, hi{};
        for (int i = 0; i < d_; ++i) {
            lo[i] = std::min(from[i], to[i]) - margin;
            hi[i] = std::max(from[i], to[i]) + margin;
        }
        auto in_box = [&](const Site& s) {
            for (int i = 0; i < d_; ++i) {
                if (s[i] < lo[i] || s[i] > hi[i]) return false;
            }
            return true;
        };
        const std::size_t max_len =
            static_cast<std::size_t>(linf_distance(from, to, d_)) + static_cast<std::size_t>(opt_.c) * opt_.max_retries;
        // layers[k] maps a site reached at entry k to its predecessor at entry k-1.
        std::vector<std::unordered_map<std::uint64_t, std::pair<Site, Site>>> layers(1);
        std::vector<Site> frontier{from};
        layers[0].emplace(site_key(from), std::pair{from, from});
        for (std::size_t k = 1; k <= max_len && !frontier.empty(); ++k) {
            layers.emplace_back();
            auto& layer = layers.back();
            std::vector<Site> next;
            int tick = tick_of(t_src, k);
            for (const Site& s : frontier) {
                for (const Site& off : nbr_) {
                    Site n = add(s, off);
                    if (n == to) {
                        Path p(k + 1);
                        p[k] = to;
                        Site back = s;
                        for (std::size_t j = k; j-- > 0;) {
                            p[j] = back;
                            back = layers[j].at(site_key(back)).second;
                        }
                        return p;
                    }
                    if (!in_box(n)) continue;
                    auto key = site_key(n);
                    if (layer.count(key) || !free_at(src, n, tick)) continue;
                    layer.emplace(key, std::pair{n, s});
                    next.push_back(n);
                }
            }
            frontier = std::move(next);
        }
        return std::nullopt;
    }

    void commit(GateId src, const Path& p, int t_src) {
        for (std::size_t k = 1; k + 1 < p.size(); ++k) {
            if (p[k] == from_ || p[k] == to_) continue;
            auto& v = res_[cell_tick_key(p[k], tick_of(t_src, k))];
            if (std::find(v.begin(), v.end(), src) == v.end()) v.push_back(src);
        }
    }

    std::string report(GateId src, const Site& from, int t_src, const Site& to) const {
        std::string msg = "embed: routing failed for signal of gate " + std::to_string(src) + " from " +
                          format_site(from, d_) + " at tick " + std::to_string(t_src) + " to " + format_site(to, d_) +
                          " after " + std::to_string(opt_.max_retries) + " ticks of slack; congested sites:";
        auto p = straight_unchecked(from, to);
        int listed = 0;
        for (std::size_t k = 1; k + 1 < p.size() && listed < 8; ++k) {
            int tick = tick_of(t_src, k);
            if (!free_at(src, p[k], tick)) {
                msg += " " + format_site(p[k], d_) + "@" + std::to_string(tick);
                ++listed;
            }
        }
        return msg;
    }

    Path straight_unchecked(const Site& from, const Site& to) const {
        Path p{from};
        Site cur = from;
        while (cur != to) {
            for (int i = 0; i < d_; ++i) cur[i] += (to[i] > cur[i]) - (to[i] < cur[i]);
            p.push_back(cur);
        }
        return p;
    }

    int d_;
    EmbedOptions opt_;
    std::vector<Site> nbr_;
    std::unordered_set<std::uint64_t> exempt_;
    Site from_{}, to_{};  // endpoints of the wire being routed
    std::unordered_map<std::uint64_t, std::vector<GateId>> res_;
};

void check_options(int d, const EmbedOptions& opt) {
    check_dimension(d);
    if (opt.c < 1) throw Error("embed: signal speed must be >= 1");
    if (opt.congestion_cap < 1) throw Error("embed: congestion cap must be >= 1");
    if (opt.max_retries < 0) throw Error("embed: max retries must be >= 0");
}

/// Routes every input wire of `g`, then fixes its firing time.
void place_and_route(const Circuit& circuit, GateId g, const Site& site, Embedding& e, Router& router) {
    const Gate& gate = circuit.gate(g);
    e.placement[g] = site;
    int norm_time = ceil_div(linf_norm(site, e.d), e.c);
    if (gate.kind == GateKind::Input) {
        e.firing_time[g] = norm_time;
        return;
    }
    int ft = std::max(1, norm_time);
    for (std::uint32_t port = 0; port < gate.inputs.size(); ++port) {
        GateId src = gate.inputs[port];
        int t_src = e.firing_time[src];
        Path p = router.route(src, e.placement[src], t_src, site);
        ft = std::max({ft, t_src + 1, t_src + path_duration(p, e.c)});
        e.routes.emplace(Wire{src, g, port}, std::move(p));
    }
    e.firing_time[g] = ft;
}

std::vector<GateId> level_order(const Circuit& circuit) {
    auto topo = circuit.topological_order();
    if (!topo) throw Error("embed: circuit has a combinational cycle");
    auto lv = circuit.levels();
    std::vector<GateId> order(circuit.size());
    for (GateId i = 0; i < circuit.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](GateId a, GateId b) { return lv[a] < lv[b]; });
    return order;
}

double euclid2(const std::array<double, kMaxDim>& a, const Site& s, int d) {
    double sum = 0;
    for (int i = 0; i < d; ++i) sum += (a[i] - s[i]) * (a[i] - s[i]);
    return sum;
}

/// Free site of `candidates` nearest to `target`; ties go to the lexicographically smallest site.
std::optional<Site> nearest_free(const std::vector<Site>& candidates, const std::array<double, kMaxDim>& target,
                                 int d, const std::unordered_set<std::uint64_t>& used) {
    std::optional<Site> best;
    double best_d = 0;
    for (const Site& s : candidates) {
        if (used.count(site_key(s))) continue;
        double dd = euclid2(target, s, d);
        if (!best || dd < best_d - 1e-12 || (std::abs(dd - best_d) <= 1e-12 && s < *best)) {
            best = s;
            best_d = dd;
        }
    }
    return best;
}

/// Sources in the order a depth-first walk from the outputs first meets them.
std::vector<GateId> leaf_order(const Circuit& circuit, const std::vector<GateId>& layer0) {
    std::vector<char> seen(circuit.size(), 0);
    std::vector<GateId> out;
    std::vector<char> is_layer0(circuit.size(), 0);
    for (GateId g : layer0) is_layer0[g] = 1;
    std::vector<GateId> stack;
    for (GateId o : circuit.outputs()) {
        stack.push_back(o);
        while (!stack.empty()) {
            GateId g = stack.back();
            stack.pop_back();
            if (seen[g]) continue;
            seen[g] = 1;
            if (is_layer0[g]) out.push_back(g);
            const auto& in = circuit.gate(g).inputs;
            for (auto it = in.rbegin(); it != in.rend(); ++it) {
                if (!seen[*it]) stack.push_back(*it);
            }
        }
    }
    for (GateId g : layer0) {
        if (!seen[g]) out.push_back(g);
    }
    return out;
}

/// Target points spread along the first shell so that consecutive leaves land close together.
std::vector<std::array<double, kMaxDim>> spread_targets(int count, int d, int r) {
    std::vector<std::array<double, kMaxDim>> out(count);
    const double two_pi = 2 * std::numbers::pi;
    for (int j = 0; j < count; ++j) {
        std::array<double, kMaxDim> u{};
        if (d == 2) {
            double phi = two_pi * (j + 0.5) / count;
            u[0] = std::cos(phi);
            u[1] = std::sin(phi);
        } else {
            // Spherical spiral in the first three coordinates.
            double turns = std::max(1.0, std::sqrt(count / 2.0));
            double z = 1 - (2.0 * j + 1) / count;
            double rho = std::sqrt(std::max(0.0, 1 - z * z));
            double phi = two_pi * turns * (j + 0.5) / count;
            u[0] = rho * std::cos(phi);
            u[1] = rho * std::sin(phi);
            u[2] = z;
        }
        double m = 0;
        for (int i = 0; i < d; ++i) m = std::max(m, std::abs(u[i]));
        for (int i = 0; i < d; ++i) u[i] *= r / m;
        out[j] = u;
    }
    return out;
}

}  // namespace

int path_duration(const Path& p, int c) {
    if (p.empty()) return 0;
    return path_tick_offset(p.size() - 1, c);
}

Circuit level_circuit(const Circuit& circuit) {
    if (!circuit.topological_order()) throw Error("level_circuit: circuit has a combinational cycle");
    auto lv = circuit.levels();
    std::vector<Gate> gates = circuit.gates();
    auto fan = circuit.fanout_lists();
    const auto n = static_cast<GateId>(gates.size());
    for (GateId s = 0; s < n; ++s) {
        int far = 0;
        for (auto [dst, port] : fan[s]) far = std::max(far, lv[dst]);
        if (far <= lv[s] + 1) continue;
        // chain[j] carries the value of s at level lv[s] + j; chain[0] is s itself.
        std::vector<GateId> chain{s};
        for (int j = 1; j < far - lv[s]; ++j) {
            auto id = static_cast<GateId>(gates.size());
            gates.push_back({id, GateKind::Buf, {chain.back()}});
            chain.push_back(id);
        }
        for (auto [dst, port] : fan[s]) gates[dst].inputs[port] = chain[lv[dst] - lv[s] - 1];
    }
    return Circuit(std::move(gates), circuit.feedback_edges(), circuit.fanout_bound());
}

bool is_leveled(const Circuit& circuit) {
    if (!circuit.topological_order()) return false;
    auto lv = circuit.levels();
    for (const Wire& w : circuit.wires()) {
        if (lv[w.dst] != lv[w.src] + 1) return false;
    }
    return true;
}

ShellEmbedding embed_layered_shells(const Circuit& leveled, int d, const EmbedOptions& opt) {
    check_options(d, opt);
    if (d < 2) throw Error("embed_layered_shells: needs d >= 2");
    if (!is_leveled(leveled)) throw Error("embed_layered_shells: circuit is not leveled; run level_circuit first");
    if (leveled.size() == 0) throw Error("embed_layered_shells: empty circuit");

    auto lv = leveled.levels();
    int depth = *std::max_element(lv.begin(), lv.end());
    std::vector<std::vector<GateId>> layers(depth + 1);
    for (GateId g = 0; g < leveled.size(); ++g) layers[lv[g]].push_back(g);

    // Smallest stride whose shells hold every layer.
    const bool single_root = layers[0].size() == 1;
    int stride = 1;
    auto fits = [&](int s) {
        int r0 = single_root ? 0 : s;
        for (int i = 0; i <= depth; ++i) {
            if (shell_capacity(d, r0 + i * s) < static_cast<std::int64_t>(layers[i].size())) return false;
        }
        return true;
    };
    while (!fits(stride)) {
        ++stride;
        if ((single_root ? 0 : stride) + depth * stride >= kCoordBias - 2) {
            throw Error("embed_layered_shells: layers need a shell radius beyond the supported lattice (depth " +
                        std::to_string(depth) + ", widest layer " +
                        std::to_string(std::max_element(layers.begin(), layers.end(),
                                                        [](auto& a, auto& b) { return a.size() < b.size(); })
                                           ->size()) +
                        ")");
        }
    }
    const int r0 = single_root ? 0 : stride;

    ShellEmbedding out;
    out.circuit = leveled;
    out.stride = stride;
    out.r0 = r0;
    Embedding& e = out.embedding;
    e.d = d;
    e.c = opt.c;
    e.congestion_cap = opt.congestion_cap;
    e.placement.assign(leveled.size(), Site{});
    e.firing_time.assign(leveled.size(), 0);

    Router router(d, opt);
    std::unordered_set<std::uint64_t> used;
    for (int i = 0; i <= depth; ++i) {
        const int r = r0 + i * stride;
        std::vector<Site> shell = shell_sites(d, r);
        auto take = [&](GateId g, const std::array<double, kMaxDim>& target) {
            auto site = nearest_free(shell, target, d, used);
            if (!site) throw Error("embed_layered_shells: shell " + std::to_string(r) + " is full");
            used.insert(site_key(*site));
            if (is_io(leveled.gate(g).kind)) router.mark_exempt(*site);
            place_and_route(leveled, g, *site, e, router);
        };
        if (i == 0) {
            auto order = leaf_order(leveled, layers[0]);
            if (r == 0) {
                take(order[0], {});
                continue;
            }
            if (d == 2 || d == 3) {
                auto targets = spread_targets(static_cast<int>(order.size()), d, r);
                for (std::size_t j = 0; j < order.size(); ++j) take(order[j], targets[j]);
            } else {
                for (std::size_t j = 0; j < order.size(); ++j) {
                    const Site& s = shell[j * shell.size() / order.size()];
                    std::array<double, kMaxDim> t{};
                    for (int a = 0; a < d; ++a) t[a] = s[a];
                    take(order[j], t);
                }
            }
            continue;
        }
        for (GateId g : layers[i]) {
            std::array<double, kMaxDim> mean{};
            const auto& in = leveled.gate(g).inputs;
            for (GateId src : in) {
                for (int a = 0; a < d; ++a) mean[a] += e.placement[src][a];
            }
            double m = 0;
            for (int a = 0; a < d; ++a) {
                mean[a] /= static_cast<double>(in.size());
                m = std::max(m, std::abs(mean[a]));
            }
            if (m < 1e-9) {
                mean = {};
                mean[0] = 1;
                m = 1;
            }
            for (int a = 0; a < d; ++a) mean[a] *= r / m;
            take(g, mean);
        }
    }
    return out;
}

ShellEmbedding embed_shells(const Circuit& circuit, int d, const EmbedOptions& opt) {
    return embed_layered_shells(level_circuit(circuit), d, opt);
}

Embedding embed_greedy(const Circuit& circuit, int d, const EmbedOptions& opt,
                       const std::vector<std::optional<Site>>& pinned) {
    check_options(d, opt);
    if (!pinned.empty() && pinned.size() != circuit.size()) throw Error("embed_greedy: pinned list size mismatch");
    Embedding e;
    e.d = d;
    e.c = opt.c;
    e.congestion_cap = opt.congestion_cap;
    e.placement.assign(circuit.size(), Site{});
    e.firing_time.assign(circuit.size(), 0);

    Router router(d, opt);
    std::unordered_set<std::uint64_t> used;
    std::vector<std::vector<Site>> rings;
    auto ring = [&](int r) -> const std::vector<Site>& {
        while (static_cast<int>(rings.size()) <= r) rings.push_back(shell_sites(d, static_cast<int>(rings.size())));
        return rings[r];
    };
    for (GateId g = 0; g < circuit.size(); ++g) {
        if (!pinned.empty() && pinned[g]) {
            if (!used.insert(site_key(*pinned[g])).second) throw Error("embed_greedy: two gates pinned to one site");
        }
    }
    int source_ring = 0;
    std::size_t source_pos = 0;

    for (GateId g : level_order(circuit)) {
        const Gate& gate = circuit.gate(g);
        Site site{};
        if (!pinned.empty() && pinned[g]) {
            site = *pinned[g];
        } else if (gate.inputs.empty()) {
            // Next free site in (radius, lexicographic) order.
            while (true) {
                const auto& rs = ring(source_ring);
                if (source_pos >= rs.size()) {
                    ++source_ring;
                    source_pos = 0;
                    continue;
                }
                if (!used.count(site_key(rs[source_pos]))) break;
                ++source_pos;
            }
            site = ring(source_ring)[source_pos];
            used.insert(site_key(site));
        } else {
            std::array<double, kMaxDim> centroid{};
            for (GateId src : gate.inputs) {
                for (int a = 0; a < d; ++a) centroid[a] += e.placement[src][a];
            }
            Site base{};
            for (int a = 0; a < d; ++a) {
                centroid[a] /= static_cast<double>(gate.inputs.size());
                base[a] = static_cast<int>(std::lround(centroid[a]));
            }
            std::optional<Site> best;
            double best_d = 0;
            for (int r = 0;; ++r) {
                if (best && r > std::sqrt(best_d) + 1) break;
                for (const Site& off : ring(r)) {
                    Site s = add(base, off);
                    if (used.count(site_key(s))) continue;
                    double dd = euclid2(centroid, s, d);
                    if (!best || dd < best_d - 1e-12 || (std::abs(dd - best_d) <= 1e-12 && s < *best)) {
                        best = s;
                        best_d = dd;
                    }
                }
            }
            site = *best;
            used.insert(site_key(site));
        }
        if (is_io(gate.kind)) router.mark_exempt(site);
        place_and_route(circuit, g, site, e, router);
    }
    return e;
}

std::vector<Violation> verify_embedding(const Embedding& e, const Circuit& circuit) {
    std::vector<Violation> out;
    auto add_v = [&](GateId g, std::string rule, std::string detail) {
        out.push_back({g, std::move(rule), std::move(detail)});
    };
    if (e.d < 1 || e.d > kMaxDim || e.c < 1 || e.congestion_cap < 1 || e.placement.size() != circuit.size() ||
        e.firing_time.size() != circuit.size()) {
        add_v(0, "shape", "embedding parameters or array sizes do not match the circuit");
        return out;
    }
    const int d = e.d;
    std::map<Site, GateId> at;
    for (GateId g = 0; g < circuit.size(); ++g) {
        const Site& s = e.placement[g];
        for (int a = d; a < kMaxDim; ++a) {
            if (s[a] != 0) add_v(g, "shape", "site has nonzero coordinates beyond dimension " + std::to_string(d));
        }
        auto [it, fresh] = at.emplace(s, g);
        if (!fresh) {
            add_v(g, "separation", "shares site " + format_site(s, d) + " with gate " + std::to_string(it->second));
        }
        int ft = e.firing_time[g];
        if (ft < 0 || linf_norm(s, d) > e.c * ft) {
            add_v(g, "causal", "site " + format_site(s, d) + " lies outside the causal ball at tick " + std::to_string(ft));
        }
        const Gate& gate = circuit.gate(g);
        if (gate.kind != GateKind::Input) {
            int need = 1;
            for (GateId src : gate.inputs) {
                if (src < circuit.size()) need = std::max(need, e.firing_time[src] + 1);
            }
            if (ft < need) {
                add_v(g, "delay", "fires at " + std::to_string(ft) + ", needs >= " + std::to_string(need));
            }
        }
    }

    std::set<Wire> wanted;
    for (const Wire& w : circuit.wires()) wanted.insert(w);
    for (const auto& [w, p] : e.routes) {
        if (!wanted.count(w)) add_v(w.dst, "extra_route", "route for a wire the circuit does not have");
    }
    std::set<Site> exempt;
    for (GateId g = 0; g < circuit.size(); ++g) {
        if (is_io(circuit.gate(g).kind)) exempt.insert(e.placement[g]);
    }
    std::map<std::pair<Site, int>, std::set<GateId>> occupancy;
    for (const Wire& w : wanted) {
        auto it = e.routes.find(w);
        std::string tag = "wire " + std::to_string(w.src) + "->" + std::to_string(w.dst) + ":" + std::to_string(w.port);
        if (it == e.routes.end()) {
            add_v(w.dst, "missing_route", tag);
            continue;
        }
        const Path& p = it->second;
        if (p.empty() || p.front() != e.placement[w.src] || p.back() != e.placement[w.dst]) {
            add_v(w.dst, "endpoints", tag + " does not join the gate sites");
            if (p.empty()) continue;
        }
        for (std::size_t k = 1; k < p.size(); ++k) {
            if (linf_distance(p[k - 1], p[k], d) > 1) {
                add_v(w.dst, "adjacency", tag + " jumps between non-adjacent sites at entry " + std::to_string(k));
                break;
            }
        }
        int dt = e.firing_time[w.dst] - e.firing_time[w.src];
        int len = static_cast<int>(p.size()) - 1;
        if (len > e.c * dt) {
            add_v(w.dst, "speed",
                  tag + " has length " + std::to_string(len) + " over " + std::to_string(dt) + " ticks at c=" +
                      std::to_string(e.c));
        }
        for (std::size_t k = 1; k + 1 < p.size(); ++k) {
            if (exempt.count(p[k]) || p[k] == p.front() || p[k] == p.back()) continue;
            occupancy[{p[k], e.firing_time[w.src] + path_tick_offset(k, e.c)}].insert(w.src);
        }
    }
    for (const auto& [cell, srcs] : occupancy) {
        if (static_cast<int>(srcs.size()) > e.congestion_cap) {
            add_v(*srcs.begin(), "congestion",
                  std::to_string(srcs.size()) + " signals at " + format_site(cell.first, d) + " on tick " +
                      std::to_string(cell.second));
        }
    }
    return out;
}

std::vector<std::pair<int, int>> boundary_cut_profile(const Embedding& e) {
    int T = 0;
    for (int ft : e.firing_time) T = std::max(T, ft);
    std::vector<std::pair<int, int>> prof(T);
    for (int t = 1; t <= T; ++t) prof[t - 1] = {t, 0};
    for (const auto& [w, p] : e.routes) {
        int t_src = e.firing_time.at(w.src);
        for (std::size_t k = 1; k < p.size(); ++k) {
            if (p[k] == p[k - 1]) continue;
            int tick = t_src + path_tick_offset(k, e.c);
            int r = e.c * tick;
            bool a_in = linf_norm(p[k - 1], e.d) < r;
            bool b_in = linf_norm(p[k], e.d) < r;
            if (a_in != b_in && tick >= 1 && tick <= T) ++prof[tick - 1].second;
        }
    }
    return prof;
}

std::size_t total_route_moves(const Embedding& e) {
    std::size_t n = 0;
    for (const auto& [w, p] : e.routes) {
        for (std::size_t k = 1; k < p.size(); ++k) n += p[k] != p[k - 1];
    }
    return n;
}

EmbeddingStats embedding_stats(const Embedding& e) {
    EmbeddingStats s;
    for (int ft : e.firing_time) s.makespan = std::max(s.makespan, ft);
    for (const Site& x : e.placement) s.radius = std::max(s.radius, linf_norm(x, e.d));
    s.size = e.placement.size();
    for (auto [t, n] : boundary_cut_profile(e)) s.max_crossings = std::max(s.max_crossings, n);
    return s;
}

std::string_view placer_name(Placer p) { return p == Placer::Shell ? "shell" : "greedy"; }

std::optional<Placer> parse_placer(std::string_view name) {
    if (name == "shell") return Placer::Shell;
    if (name == "greedy") return Placer::Greedy;
    return std::nullopt;
}

SweepPoint sweep_point(Family family, int n, int d, Placer placer, const EmbedOptions& opt) {
    SweepPoint pt;
    pt.n = n;
    try {
        Circuit c = build_family_member(family, n);
        if (placer == Placer::Shell) {
            auto sh = embed_shells(c, d, opt);
            pt.stats = embedding_stats(sh.embedding);
            pt.basis = summarize_basis(sh.circuit);
        } else {
            auto e = embed_greedy(c, d, opt);
            pt.stats = embedding_stats(e);
            pt.basis = summarize_basis(c);
        }
    } catch (const Error& ex) {
        pt.error = ex.what();
    }
    return pt;
}

std::vector<SweepPoint> makespan_series(Family family, const std::vector<int>& sizes, int d, Placer placer,
                                        const EmbedOptions& opt, int threads) {
    for (std::size_t i = 1; i < sizes.size(); ++i) {
        if (sizes[i] <= sizes[i - 1]) throw Error("makespan_series: sizes must be strictly ascending");
    }
    threads = std::max(1, threads);
    std::vector<SweepPoint> out(sizes.size());
    for (std::size_t start = 0; start < sizes.size(); start += threads) {
        std::vector<std::future<SweepPoint>> jobs;
        for (std::size_t i = start; i < std::min(sizes.size(), start + threads); ++i) {
            jobs.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, sweep_point, family,
                                      sizes[i], d, placer, opt));
        }
        for (std::size_t j = 0; j < jobs.size(); ++j) out[start + j] = jobs[j].get();
    }
    return out;
}

}  // namespace rclab
