#include "rclab/flux.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "rclab/checker.hpp"
#include "rclab/error.hpp"

namespace rclab {

namespace {

int sgn(int x) { return (x > 0) - (x < 0); }

std::size_t box_index(const Site& s, int d, int L) {
    std::size_t idx = 0;
    for (int i = d - 1; i >= 0; --i) idx = idx * static_cast<std::size_t>(2 * L + 1) + static_cast<std::size_t>(s[i] + L);
    return idx;
}

std::size_t box_size(int d, int L) {
    std::size_t n = 1;
    for (int i = 0; i < d; ++i) n *= static_cast<std::size_t>(2 * L + 1);
    return n;
}

/// One counter-clockwise step along the L-infinity ring of the first two coordinates.
Site ring_step(Site s) {
    int m = std::max(std::abs(s[0]), std::abs(s[1]));
    if (m == 0) return s;
    int& x = s[0];
    int& y = s[1];
    if (x == m && y < m) {
        ++y;
    } else if (y == m && x > -m) {
        --x;
    } else if (x == -m && y > -m) {
        --y;
    } else {
        ++x;
    }
    return s;
}

Site drift_direction(const FluxConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> pick(-1, 1);
    Site dir{};
    bool zero = true;
    while (zero) {
        for (int i = 0; i < cfg.d; ++i) {
            dir[i] = pick(rng);
            zero = zero && dir[i] == 0;
        }
    }
    return dir;
}

void validate(const FluxConfig& cfg) {
    check_dimension(cfg.d);
    if (cfg.extent < 0) throw Error("flux: extent must be >= 0");
    if (cfg.rho_max < 1) throw Error("flux: rho_max must be >= 1");
    if (cfg.c_flow < 1) throw Error("flux: c_flow must be >= 1");
    if (cfg.c_ball < 0 || cfg.c_ball > cfg.c_flow) throw Error("flux: need 0 <= c_ball <= c_flow");
    if (cfg.r0 < 0) throw Error("flux: r0 must be >= 0");
    if (cfg.rule == FlowRule::Rotation && cfg.d < 2) throw Error("flux: rotation rule needs d >= 2");
    if (cfg.density < 0 || cfg.density > 1) throw Error("flux: density must lie in [0, 1]");
}

}  // namespace

std::string_view flow_rule_name(FlowRule r) {
    switch (r) {
        case FlowRule::Zero: return "zero";
        case FlowRule::RadialOut: return "radial-out";
        case FlowRule::RadialIn: return "radial-in";
        case FlowRule::RandomWalk: return "random-walk";
        case FlowRule::Rotation: return "rotation";
        case FlowRule::Drift: return "drift";
    }
    return "?";
}

std::optional<FlowRule> parse_flow_rule(std::string_view name) {
    for (auto r : {FlowRule::Zero, FlowRule::RadialOut, FlowRule::RadialIn, FlowRule::RandomWalk, FlowRule::Rotation,
                   FlowRule::Drift}) {
        if (flow_rule_name(r) == name) return r;
    }
    return std::nullopt;
}

bool FluxState::in_box(const Site& s) const {
    for (int i = 0; i < config.d; ++i) {
        if (s[i] < -config.extent || s[i] > config.extent) return false;
    }
    return true;
}

int FluxState::occupancy_at(const Site& s) const {
    if (!in_box(s)) return 0;
    return occupancy[box_index(s, config.d, config.extent)];
}

double flux_bound(const FluxConfig& cfg, int r) {
    const int band = cfg.c_flow + cfg.c_ball;
    return static_cast<double>(cfg.rho_max) * band * static_cast<double>(shell_capacity(cfg.d, r + band));
}

FluxState make_flux_state(const FluxConfig& cfg) {
    validate(cfg);
    FluxState st;
    st.config = cfg;
    const int d = cfg.d, L = cfg.extent;
    st.occupancy.assign(box_size(d, L), 0);
    auto put = [&](const Site& s) {
        if (!st.in_box(s)) throw Error("flux: token " + format_site(s, d) + " outside the box");
        int& occ = st.occupancy[box_index(s, d, L)];
        if (occ >= cfg.rho_max) throw Error("flux: initial occupancy above rho_max at " + format_site(s, d));
        ++occ;
        st.tokens.push_back(s);
    };
    if (cfg.fill == FillKind::Tokens) {
        for (const Site& s : cfg.tokens) put(s);
    } else if (cfg.fill != FillKind::Empty) {
        std::mt19937_64 rng(cfg.seed ^ 0x5eedf111ULL);
        std::uniform_real_distribution<double> u(0, 1);
        Site s{};
        for (int i = 0; i < d; ++i) s[i] = -L;
        for (std::size_t n = 0; n < st.occupancy.size(); ++n) {
            if (cfg.fill == FillKind::Uniform) {
                if (u(rng) < cfg.density) put(s);
            } else if (linf_norm(s, d) <= cfg.fill_radius) {
                for (int k = 0; k < cfg.rho_max; ++k) put(s);
            }
            for (int i = 0; i < d; ++i) {
                if (++s[i] <= L) break;
                s[i] = -L;
            }
        }
    }
    return st;
}

FluxState step(const FluxState& state, FluxRow* row) {
    FluxState next = state;
    const FluxConfig& cfg = state.config;
    const int d = cfg.d, L = cfg.extent, c = cfg.c_flow;
    const std::size_t n = state.tokens.size();

    std::mt19937_64 rng(cfg.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(state.tick));
    std::uniform_int_distribution<int> offset(-c, c);
    const Site dir = cfg.rule == FlowRule::Drift ? drift_direction(cfg) : Site{};

    std::vector<Site> target(n);
    for (std::size_t i = 0; i < n; ++i) {
        Site p = state.tokens[i];
        Site q = p;
        switch (cfg.rule) {
            case FlowRule::Zero: break;
            case FlowRule::RadialOut:
                for (int a = 0; a < d; ++a) q[a] = p[a] + sgn(p[a]) * c;
                break;
            case FlowRule::RadialIn:
                for (int a = 0; a < d; ++a) q[a] = p[a] - sgn(p[a]) * std::min(std::abs(p[a]), c);
                break;
            case FlowRule::RandomWalk:
                for (int a = 0; a < d; ++a) q[a] = p[a] + offset(rng);
                break;
            case FlowRule::Rotation:
                for (int k = 0; k < c; ++k) q = ring_step(q);
                break;
            case FlowRule::Drift:
                for (int a = 0; a < d; ++a) q[a] = p[a] + dir[a] * c;
                break;
        }
        target[i] = q;
    }

    std::vector<Site>& pos = next.tokens;
    std::vector<int>& occ = next.occupancy;
    std::vector<std::size_t> pending;
    std::int64_t blocked = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (target[i] == pos[i]) continue;
        if (!next.in_box(target[i])) {
            ++blocked;
            continue;
        }
        pending.push_back(i);
    }
    // Accept a move as soon as its target has room; vacated sites unlock more moves.
    for (bool progress = true; progress && !pending.empty();) {
        progress = false;
        std::vector<std::size_t> still;
        for (std::size_t i : pending) {
            auto to = box_index(target[i], d, L);
            if (occ[to] < cfg.rho_max) {
                --occ[box_index(pos[i], d, L)];
                ++occ[to];
                pos[i] = target[i];
                progress = true;
            } else {
                still.push_back(i);
            }
        }
        pending = std::move(still);
    }
    // With single occupancy, closed cycles of full sites rotate together.
    if (cfg.rho_max == 1 && !pending.empty()) {
        std::unordered_map<std::size_t, std::size_t> waiting_at;  // site -> pending token
        for (std::size_t i : pending) waiting_at.emplace(box_index(pos[i], d, L), i);
        std::unordered_map<std::size_t, int> state_of;  // 0 unseen, 1 on current walk, 2 done
        std::vector<char> moved(n, 0);
        for (std::size_t start : pending) {
            if (state_of[start]) continue;
            std::vector<std::size_t> walk;
            std::size_t cur = start;
            while (true) {
                state_of[cur] = 1;
                walk.push_back(cur);
                auto it = waiting_at.find(box_index(target[cur], d, L));
                if (it == waiting_at.end()) break;
                std::size_t nxt = it->second;
                if (state_of[nxt] == 1) {
                    auto from = std::find(walk.begin(), walk.end(), nxt);
                    for (auto w = from; w != walk.end(); ++w) moved[*w] = 1;
                    break;
                }
                if (state_of[nxt] == 2) break;
                cur = nxt;
            }
            for (std::size_t w : walk) state_of[w] = 2;
        }
        std::vector<std::size_t> still;
        for (std::size_t i : pending) {
            if (moved[i]) {
                pos[i] = target[i];
            } else {
                still.push_back(i);
            }
        }
        pending = std::move(still);
    }
    blocked += static_cast<std::int64_t>(pending.size());

    FluxRow r;
    r.t = state.tick;
    r.r = state.radius();
    r.blocked = blocked;
    r.bound = flux_bound(cfg, r.r);
    const int r_after = r.r + cfg.c_ball;
    for (std::size_t i = 0; i < n; ++i) {
        int na = linf_norm(state.tokens[i], d), nb = linf_norm(pos[i], d);
        bool in_before = na <= r.r, in_after = nb <= r_after;
        if (!in_before && in_after) ++r.crossings_in;
        if (in_before && !in_after) ++r.crossings_out;
        if (na <= r.r && nb > r.r) ++r.flow_out;
        if (nb <= r.r && na > r.r) ++r.flow_in;
    }
    next.tick = state.tick + 1;
    next.total_in += r.crossings_in;
    next.total_out += r.crossings_out;
    next.total_flow_in += r.flow_in;
    next.total_flow_out += r.flow_out;
    next.total_blocked += blocked;
    if (row) *row = r;
    return next;
}

FluxTrace run_flux(const FluxConfig& cfg, int T) {
    if (T < 1) throw Error("run_flux: T must be >= 1");
    FluxTrace tr;
    FluxState st = make_flux_state(cfg);
    tr.rows.reserve(T);
    for (int t = 0; t < T; ++t) {
        FluxRow row;
        st = step(st, &row);
        tr.rows.push_back(row);
    }
    tr.final_state = std::move(st);
    return tr;
}

std::string flux_csv(const FluxTrace& trace) {
    std::string out = "# rclab-flux v1\nt,r,in,out,flow_in,flow_out,blocked,bound\n";
    for (const auto& r : trace.rows) {
        out += std::to_string(r.t) + "," + std::to_string(r.r) + "," + std::to_string(r.crossings_in) + "," +
               std::to_string(r.crossings_out) + "," + std::to_string(r.flow_in) + "," + std::to_string(r.flow_out) +
               "," + std::to_string(r.blocked) + "," + std::to_string(static_cast<std::int64_t>(r.bound)) + "\n";
    }
    return out;
}

AchievabilityResult annulus_achievability(int d, double eps, int T, int c_ball, int r0, int rho_max) {
    if (!(eps > 0 && eps < 1)) throw Error("annulus_achievability: need 0 < eps < 1");
    if (T < 2) throw Error("annulus_achievability: T must be >= 2");
    AchievabilityResult res;
    res.threshold = 1 - eps - res.slack;
    std::vector<std::pair<double, double>> window;
    res.min_fraction = 1e300;
    for (int t = 1; t <= T; ++t) {
        FluxConfig cfg;
        cfg.d = d;
        cfg.rho_max = rho_max;
        cfg.c_flow = 1;
        cfg.c_ball = c_ball;
        cfg.r0 = r0 + c_ball * t;  // the ball as it stands at tick t
        cfg.rule = FlowRule::RadialIn;
        const int band = cfg.c_flow + c_ball;
        cfg.extent = cfg.r0 + band + 1;
        cfg.fill = FillKind::Tokens;
        for (int j = 1; j <= band; ++j) {
            for (const Site& s : shell_sites(d, cfg.r0 + j)) {
                for (int k = 0; k < rho_max; ++k) cfg.tokens.push_back(s);
            }
        }
        FluxRow row;
        step(make_flux_state(cfg), &row);
        double frac = row.crossings_in / row.bound;
        res.ticks.push_back(t);
        res.crossings.push_back(row.crossings_in);
        res.bound.push_back(row.bound);
        res.fraction.push_back(frac);
        if (2 * t >= T) {
            res.min_fraction = std::min(res.min_fraction, frac);
            window.emplace_back(t, static_cast<double>(row.crossings_in));
        }
    }
    res.fitted_exponent = window.size() >= 3 ? fit_scaling_exponent(window).slope : 0.0;
    res.pass = res.min_fraction >= res.threshold;
    return res;
}

}  // namespace rclab
