#include "rclab/attention.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "rclab/embed.hpp"
#include "rclab/error.hpp"
#include "rclab/families.hpp"
#include "rclab/thermo.hpp"
#include "rclab/width.hpp"

namespace rclab {

void AttentionParams::validate() const {
    if (d < 1) throw Error("attention params: d must be at least 1");
    auto positive = [](double v, const char* name) {
        if (!(v > 0) || !std::isfinite(v)) throw Error(std::string("attention params: ") + name + " must be positive");
    };
    positive(H, "H");
    positive(kappa, "kappa");
    positive(C_head, "C_head");
    positive(K_d, "K_d");
    positive(eta, "eta");
    if (T_env) positive(*T_env, "T_env");
    if (H < 1) throw Error("attention params: H must be at least 1");
    if (kappa < 1) throw Error("attention params: kappa must be at least 1");
}

AttentionParams parse_attention_params(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool header = false;
    AttentionParams p;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key, value, extra;
        if (!(ls >> key)) continue;
        if (!header) {
            if (!(ls >> value) || key + " " + value != "rclab-attention v1") throw Error("missing 'rclab-attention v1' header");
            header = true;
            continue;
        }
        if (!(ls >> value) || (ls >> extra)) throw Error("attention params: expected 'key value' in '" + line + "'");
        double v = 0;
        try {
            std::size_t used = 0;
            v = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw Error("attention params: bad number '" + value + "' for " + key);
        }
        if (key == "d") {
            p.d = static_cast<int>(v);
            if (p.d != v) throw Error("attention params: d must be an integer");
        } else if (key == "H") {
            p.H = v;
        } else if (key == "kappa") {
            p.kappa = v;
        } else if (key == "C_head") {
            p.C_head = v;
        } else if (key == "K_d") {
            p.K_d = v;
        } else if (key == "eta") {
            p.eta = v;
        } else if (key == "T_env") {
            p.T_env = v;
        } else {
            throw Error("attention params: unknown key '" + key + "'");
        }
    }
    if (!header) throw Error("missing 'rclab-attention v1' header");
    p.validate();
    return p;
}

std::string attention_params_text(const AttentionParams& p) {
    std::ostringstream out;
    out.precision(17);
    out << "rclab-attention v1\nd " << p.d << "\nH " << p.H << "\nkappa " << p.kappa << "\nC_head " << p.C_head
        << "\nK_d " << p.K_d << "\neta " << p.eta << '\n';
    if (p.T_env) out << "T_env " << *p.T_env << '\n';
    return out.str();
}

double cut_capacity(double T, const AttentionParams& p) {
    p.validate();
    if (T < 0) throw Error("cut_capacity: T must be non-negative");
    return p.K_d * p.C_head * p.kappa * p.H * std::pow(T, p.d);
}

double min_time_throughput(double I_star, const AttentionParams& p) {
    p.validate();
    if (I_star < 0) throw Error("min_time_throughput: I* must be non-negative");
    return std::pow(I_star / (p.K_d * p.C_head * p.kappa * p.H), 1.0 / p.d);
}

double min_time_landauer(double E_req, const AttentionParams& p) {
    p.validate();
    if (E_req < 0) throw Error("min_time_landauer: E_req must be non-negative");
    const double heat_per_bit = p.T_env ? kBoltzmann * *p.T_env * std::numbers::ln2 : 1.0;
    return std::pow(heat_per_bit * E_req / p.eta, 1.0 / p.d);
}

std::string_view binding_name(Binding b) {
    switch (b) {
        case Binding::Throughput: return "throughput";
        case Binding::Landauer: return "landauer";
        case Binding::Both: return "both";
    }
    return "?";
}

BoundResult joint_min_time(double I_star, double E_req, const AttentionParams& p) {
    BoundResult r;
    r.I_star = I_star;
    r.E_req = E_req;
    r.params = p;
    r.T_throughput = min_time_throughput(I_star, p);
    r.T_landauer = min_time_landauer(E_req, p);
    r.T_joint = std::max(r.T_throughput, r.T_landauer);
    const double gap = std::abs(r.T_throughput - r.T_landauer);
    if (gap <= 1e-12 * r.T_joint) {
        r.binding = Binding::Both;
    } else {
        r.binding = r.T_throughput > r.T_landauer ? Binding::Throughput : Binding::Landauer;
    }
    return r;
}

double disj_demand(int m, double c0) {
    if (m < 1) throw Error("disj_demand: m must be at least 1");
    if (!(c0 > 0)) throw Error("disj_demand: c0 must be positive");
    return c0 * m;
}

double pointer_demand(int R, double index_space, double c1) {
    if (R < 1) throw Error("pointer_demand: R must be at least 1");
    if (!(index_space >= 2)) throw Error("pointer_demand: |I| must be at least 2");
    if (!(c1 > 0)) throw Error("pointer_demand: c1 must be positive");
    return c1 * R * std::log2(index_space);
}

double threshold_erasure(int n, int L, double eps, double c1) {
    if (n < 1 || L < 1) throw Error("threshold_erasure: n and L must be at least 1");
    if (!(eps > 0 && eps < 0.5)) throw Error("threshold_erasure: eps must lie in (0, 0.5)");
    if (!(c1 > 0)) throw Error("threshold_erasure: c1 must be positive");
    return c1 * L * n * std::log2(1 / eps);
}

std::vector<HeadScalingPoint> head_scaling_curve(const std::vector<double>& H_values, double I_star,
                                                 const AttentionParams& p) {
    AttentionParams one = p;
    one.H = 1;
    const double T1 = min_time_throughput(I_star, one);
    std::vector<HeadScalingPoint> out;
    for (double H : H_values) {
        AttentionParams q = p;
        q.H = H;
        const double T = min_time_throughput(I_star, q);
        out.push_back({H, T, T1 > 0 ? T / T1 : std::pow(H, -1.0 / p.d)});
    }
    return out;
}

std::string head_scaling_csv(const std::vector<HeadScalingPoint>& curve) {
    std::ostringstream out;
    out.precision(12);
    out << "# rclab-heads v1\nH,T,ratio\n";
    for (const auto& pt : curve) out << pt.H << ',' << pt.T << ',' << pt.ratio << '\n';
    return out.str();
}

DisjCutResult disj_cut_experiment(int m, int d) {
    if (m < 1) throw Error("disj_cut_experiment: m must be at least 1");
    check_dimension(d);
    if (d < 2) throw Error("disj_cut_experiment needs d >= 2");
    const Circuit c = build_disjointness(m);
    std::vector<std::optional<Site>> pinned(c.size());
    const auto& ins = c.inputs();
    for (int i = 0; i < m; ++i) {
        Site a{}, b{};
        a[0] = -2;
        b[0] = 2;
        a[1] = b[1] = i - m / 2;
        pinned[ins[i]] = a;
        pinned[ins[m + i]] = b;
    }
    Site out{};
    out[0] = -4;
    pinned[c.outputs()[0]] = out;

    DisjCutResult r;
    r.m = m;
    r.d = d;
    const Embedding e = embed_greedy(c, d, {}, pinned);
    r.valid_embedding = verify_embedding(e, c).empty();
    r.makespan = embedding_stats(e).makespan;
    auto side = [](const Site& s) { return s[0] < 0; };
    for (const auto& [w, path] : e.routes) {
        for (std::size_t k = 1; k < path.size(); ++k) r.crossings += side(path[k - 1]) != side(path[k]);
    }
    std::vector<GateId> ys(ins.begin() + m, ins.end());
    r.cut = cut_width(c, ys, c.outputs()).value;
    r.pass = r.valid_embedding && r.cut >= 1 && r.crossings >= m;
    return r;
}

}  // namespace rclab
