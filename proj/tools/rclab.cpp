/// rclab: command-line driver for the realizable-circuits lab.
///
/// Exit codes: 0 success or pass, 1 a checked constraint failed, 2 usage or input error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "rclab/attention.hpp"
#include "rclab/checker.hpp"
#include "rclab/circuit_io.hpp"
#include "rclab/embed.hpp"
#include "rclab/embed_io.hpp"
#include "rclab/error.hpp"
#include "rclab/families.hpp"
#include "rclab/flux.hpp"
#include "rclab/recurrent.hpp"
#include "rclab/svg.hpp"
#include "rclab/thermo.hpp"
#include "rclab/width.hpp"

namespace fs = std::filesystem;
using namespace rclab;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

/// Requested thread count capped by RC_LAB_THREADS.
int thread_count(int requested) {
    int n = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* cap = std::getenv("RC_LAB_THREADS")) {
        try {
            n = std::min(n, std::max(1, std::stoi(cap)));
        } catch (const std::exception&) {
            throw Error(std::string("RC_LAB_THREADS is not an integer: ") + cap);
        }
    }
    return n;
}

Family family_arg(const std::string& name) {
    auto f = parse_family(name);
    if (!f) throw Error("unknown family '" + name + "' (parity, disjointness)");
    return *f;
}

Placer placer_arg(const std::string& name) {
    auto p = parse_placer(name);
    if (!p) throw Error("unknown placer '" + name + "' (shell, greedy)");
    return *p;
}

struct Formats {
    bool csv = true, json = true, svg = true;
};

Formats parse_formats(const std::string& list) {
    Formats f{false, false, false};
    std::stringstream ss(list);
    for (std::string tok; std::getline(ss, tok, ',');) {
        if (tok == "csv") f.csv = true;
        else if (tok == "json") f.json = true;
        else if (tok == "svg") f.svg = true;
        else if (!tok.empty()) throw Error("unknown format '" + tok + "' (csv, json, svg)");
    }
    return f;
}

void emit(const fs::path& dir, const std::string& name, const std::string& text) {
    fs::create_directories(dir);
    write_text_atomic(dir / name, text);
    std::cout << "wrote " << (dir / name).string() << '\n';
}

std::vector<int> default_sizes() { return {8, 16, 32, 64, 128, 256}; }

ChartSeries makespan_series_chart(const std::vector<SweepPoint>& pts, int d) {
    ChartSeries s{"d=" + std::to_string(d), {}, {}};
    for (const auto& p : pts) {
        if (!p.stats) continue;
        s.x.push_back(p.n);
        s.y.push_back(p.stats->makespan);
    }
    return s;
}

// ---------------------------------------------------------------- subcommands

struct GenArgs {
    std::string family = "parity";
    int n = 8;
    std::string erasure;
    int d = 3;
    double eta = 1;
    std::string out = ".";
};

int run_gen(const GenArgs& a) {
    const Family fam = family_arg(a.family);
    const Circuit c = build_family_member(fam, a.n);
    const fs::path dir(a.out);
    fs::create_directories(dir);
    const std::string name = std::string(family_name(fam)) + "-" + std::to_string(a.n) + ".rcc";
    write_circuit_file(dir / name, c);
    std::cout << "wrote " << (dir / name).string() << '\n';
    std::cout << "gates=" << c.size() << " inputs=" << c.n_inputs() << " outputs=" << c.n_outputs()
              << " depth=" << c.depth() << " width=" << input_output_cut(c).value << '\n';
    if (!a.erasure.empty()) {
        auto rule = parse_erasure_rule(a.erasure);
        if (!rule) throw Error("unknown erasure rule '" + a.erasure + "' (conservative, info-theoretic)");
        std::optional<InputSet> sample;
        if (*rule == ErasureRule::InfoTheoretic && c.n_inputs() > 16) sample = InputSet::sampled(c.n_inputs(), 4096, 1);
        auto L = erasures_from_trace(c, *rule, sample ? &*sample : nullptr, a.d, a.eta);
        std::cout << "erased_bits=" << fmt(L.total()) << " (" << erasure_rule_name(*rule) << ")\n";
        emit(dir, "erasure.csv", ledger_csv(L));
    }
    return 0;
}

struct EmbedArgs {
    std::string family = "parity";
    int n = 16;
    std::string circuit;
    int d = 3;
    std::string placer = "shell";
    int c = 1;
    int congestion = 1;
    std::string out = ".";
    std::string formats = "csv,json,svg";
};

int run_embed(const EmbedArgs& a) {
    const Formats f = parse_formats(a.formats);
    EmbedOptions opt;
    opt.c = a.c;
    opt.congestion_cap = a.congestion;
    Circuit c = a.circuit.empty() ? build_family_member(family_arg(a.family), a.n) : read_circuit_file(a.circuit);
    Embedding e;
    if (placer_arg(a.placer) == Placer::Shell) {
        auto se = embed_shells(c, a.d, opt);
        c = se.circuit;
        e = std::move(se.embedding);
    } else {
        e = embed_greedy(c, a.d, opt);
    }
    const auto violations = verify_embedding(e, c);
    const auto st = embedding_stats(e);
    const fs::path dir(a.out);
    emit(dir, "embedding.rce", embedding_to_text(e));
    const auto profile = boundary_cut_profile(e);
    if (f.csv) emit(dir, "cut_profile.csv", cut_profile_csv(profile));
    if (f.json) {
        nlohmann::ordered_json j;
        j["format"] = "rclab-embed-stats v1";
        j["d"] = a.d;
        j["makespan"] = st.makespan;
        j["radius"] = st.radius;
        j["size"] = st.size;
        j["max_crossings"] = st.max_crossings;
        j["violations"] = violations.size();
        emit(dir, "stats.json", j.dump(2) + "\n");
    }
    if (f.svg) {
        ChartSeries s{"crossings", {}, {}};
        for (auto [t, k] : profile) {
            s.x.push_back(t);
            s.y.push_back(k);
        }
        emit(dir, "cut_profile.svg", line_chart_svg({s}, {"boundary crossings per tick", "tick", "crossings"}));
    }
    std::cout << "T=" << st.makespan << " radius=" << st.radius << " size=" << st.size
              << " maxcut=" << st.max_crossings << " violations=" << violations.size() << '\n';
    for (const auto& v : violations) std::cout << "  gate " << v.gate << ' ' << v.rule << ": " << v.detail << '\n';
    return violations.empty() ? 0 : kExitFail;
}

struct SweepArgs {
    std::string family = "parity";
    std::vector<int> dims = {2, 3};
    std::vector<int> sizes = default_sizes();
    std::string placer = "shell";
    int threads = 0;
    double tol = 0.15;
    std::string out = ".";
    std::string formats = "csv,json,svg";
};

std::vector<SweepPoint> sweep_dim(const SweepArgs& a, int d, const fs::path& dir) {
    const Family fam = family_arg(a.family);
    auto pts = makespan_series(fam, a.sizes, d, placer_arg(a.placer), {}, thread_count(a.threads));
    // One file per point, each written atomically.
    for (const auto& p : pts) {
        emit(dir / "points", "d" + std::to_string(d) + "-n" + std::to_string(p.n) + ".csv", sweep_csv({p}));
    }
    return pts;
}

int run_sweep(const SweepArgs& a) {
    const Formats f = parse_formats(a.formats);
    const fs::path dir(a.out);
    std::vector<ChartSeries> chart;
    for (int d : a.dims) {
        auto pts = sweep_dim(a, d, dir);
        if (f.csv) emit(dir, "sweep-d" + std::to_string(d) + ".csv", sweep_csv(pts));
        chart.push_back(makespan_series_chart(pts, d));
        for (const auto& p : pts) {
            std::cout << "d=" << d << " n=" << p.n;
            if (p.stats) std::cout << " T=" << p.stats->makespan << " maxcut=" << p.stats->max_crossings;
            else std::cout << " error=" << p.error;
            std::cout << '\n';
        }
    }
    if (f.svg) {
        ChartOptions o{"makespan vs n", "n", "T", true, true};
        emit(dir, "makespan.svg", line_chart_svg(chart, o));
    }
    return 0;
}

int run_check(const SweepArgs& a) {
    const Formats f = parse_formats(a.formats);
    const fs::path dir(a.out);
    bool all = true;
    std::vector<ChartSeries> chart;
    for (int d : a.dims) {
        auto pts = sweep_dim(a, d, dir);
        auto rep = check_rc(rows_from_series(pts), d, a.tol);
        const std::string tag = "-d" + std::to_string(d);
        emit(dir, "report" + tag + ".json", report_text(rep));
        if (f.csv) {
            emit(dir, "report" + tag + ".csv", report_csv(rep));
            emit(dir, "sweep" + tag + ".csv", sweep_csv(pts));
        }
        chart.push_back(makespan_series_chart(pts, d));
        auto line = [](const char* name, const ConstraintRecord& r) {
            std::cout << "  " << name << ' ' << (r.pass ? "PASS" : "FAIL") << " exponent=" << fmt(r.fitted_exponent)
                      << " limit=" << fmt(r.limit) << '\n';
        };
        std::cout << "d=" << d << ' ' << (rep.pass() ? "PASS" : "FAIL") << '\n';
        line("size", rep.size);
        line("width", rep.width);
        std::cout << "  gates " << (rep.gates.pass ? "PASS" : "FAIL") << "\n  min-time "
                  << (rep.min_time.pass ? "PASS" : "FAIL") << " K_fit=" << fmt(rep.min_time.K_fit) << '\n';
        all = all && rep.pass();
    }
    if (f.svg) emit(dir, "makespan.svg", line_chart_svg(chart, {"makespan vs n", "n", "T", true, true}));
    return all ? 0 : kExitFail;
}

struct FluxArgs {
    int d = 2;
    int T = 50;
    int extent = 0;
    int rho_max = 1;
    int c_flow = 1;
    int c_ball = 1;
    int r0 = 0;
    std::string rule = "radial-in";
    std::uint64_t seed = 1;
    std::string fill = "uniform";
    double density = 0.2;
    int fill_radius = 0;
    bool achievability = false;
    double eps = 0.2;
    std::string out = ".";
    std::string formats = "csv,svg";
};

int run_flux_cmd(const FluxArgs& a) {
    const Formats f = parse_formats(a.formats);
    const fs::path dir(a.out);
    if (a.achievability) {
        auto r = annulus_achievability(a.d, a.eps, a.T, a.c_ball, a.r0, a.rho_max);
        std::ostringstream csv;
        csv.precision(12);
        csv << "# rclab-achievability v1\nt,crossings,bound,fraction\n";
        for (std::size_t i = 0; i < r.ticks.size(); ++i) {
            csv << r.ticks[i] << ',' << r.crossings[i] << ',' << r.bound[i] << ',' << r.fraction[i] << '\n';
        }
        if (f.csv) emit(dir, "achievability.csv", csv.str());
        std::cout << "min_fraction=" << fmt(r.min_fraction) << " threshold=" << fmt(r.threshold)
                  << " exponent=" << fmt(r.fitted_exponent) << ' ' << (r.pass ? "PASS" : "FAIL") << '\n';
        return r.pass ? 0 : kExitFail;
    }
    FluxConfig cfg;
    cfg.d = a.d;
    cfg.extent = a.extent > 0 ? a.extent : a.r0 + a.c_ball * a.T + 2;
    cfg.rho_max = a.rho_max;
    cfg.c_flow = a.c_flow;
    cfg.c_ball = a.c_ball;
    cfg.r0 = a.r0;
    auto rule = parse_flow_rule(a.rule);
    if (!rule) throw Error("unknown flow rule '" + a.rule + "'");
    cfg.rule = *rule;
    cfg.seed = a.seed;
    if (a.fill == "empty") cfg.fill = FillKind::Empty;
    else if (a.fill == "uniform") cfg.fill = FillKind::Uniform;
    else if (a.fill == "ball") cfg.fill = FillKind::Ball;
    else throw Error("unknown fill '" + a.fill + "' (empty, uniform, ball)");
    cfg.density = a.density;
    cfg.fill_radius = a.fill_radius;
    auto trace = run_flux(cfg, a.T);
    bool within = true;
    for (const auto& row : trace.rows) within = within && std::abs(static_cast<double>(row.net())) <= row.bound;
    if (f.csv) emit(dir, "flux.csv", flux_csv(trace));
    if (f.svg) {
        ChartSeries in{"crossings in", {}, {}}, bound{"bound", {}, {}};
        for (const auto& row : trace.rows) {
            in.x.push_back(row.t);
            in.y.push_back(static_cast<double>(row.crossings_in));
            bound.x.push_back(row.t);
            bound.y.push_back(row.bound);
        }
        emit(dir, "flux.svg", line_chart_svg({in, bound}, {"flux through the moving ball", "t", "tokens per tick"}));
    }
    std::cout << "tokens=" << trace.final_state.tokens.size() << " in=" << trace.final_state.total_in
              << " out=" << trace.final_state.total_out << " blocked=" << trace.final_state.total_blocked
              << " bound_ok=" << (within ? 1 : 0) << '\n';
    return within ? 0 : kExitFail;
}

struct TmArgs {
    std::string machine = "unary-increment";
    std::string file;
    std::string tape;
    int max_ticks = 10000;
    int margin = 16;
    std::string out;
};

int run_tm(const TmArgs& a) {
    const TuringMachine tm = a.file.empty() ? bundled_tm(a.machine) : parse_tm(read_text_file(a.file));
    auto rep = run_lockstep(tm, a.tape, a.max_ticks, a.margin, nullptr, !a.out.empty());
    if (!a.out.empty()) {
        emit(a.out, "trace.csv", trace_csv(rep));
        emit(a.out, (tm.name.empty() ? "machine" : tm.name) + ".tm", tm_to_text(tm));
    }
    std::cout << "machine=" << tm.name << " ticks=" << rep.ticks << " halted=" << (rep.halted ? 1 : 0)
              << " divergence=" << (rep.divergence ? std::to_string(*rep.divergence) : "none") << '\n';
    std::cout << "tape=" << rep.final_tape << '\n';
    return rep.divergence ? kExitFail : 0;
}

struct BoundsArgs {
    double I = 0;
    double E = 0;
    int disj_m = 0;
    AttentionParams p;
    double T_env = 0;
    std::string params;
    std::vector<double> heads;
    std::string out;
};

int run_bounds(BoundsArgs a) {
    AttentionParams p = a.params.empty() ? a.p : parse_attention_params(read_text_file(a.params));
    if (a.params.empty() && a.T_env > 0) p.T_env = a.T_env;
    double I = a.I;
    if (a.disj_m > 0) I += disj_demand(a.disj_m);
    auto r = joint_min_time(I, a.E, p);
    std::cout << "T_throughput=" << fmt(r.T_throughput) << '\n'
              << "T_landauer=" << fmt(r.T_landauer) << '\n'
              << "T=" << fmt(r.T_joint) << '\n'
              << "binding=" << binding_name(r.binding) << '\n';
    if (!a.heads.empty()) {
        auto curve = head_scaling_curve(a.heads, I, p);
        for (const auto& pt : curve) std::cout << "H=" << fmt(pt.H) << " T=" << fmt(pt.T) << " ratio=" << fmt(pt.ratio) << '\n';
        if (!a.out.empty()) {
            emit(a.out, "heads.csv", head_scaling_csv(curve));
            ChartSeries s{"T(H)/T(1)", {}, {}};
            for (const auto& pt : curve) {
                s.x.push_back(pt.H);
                s.y.push_back(pt.ratio);
            }
            emit(a.out, "heads.svg", line_chart_svg({s}, {"head scaling", "H", "ratio", true, true}));
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rclab: realizable circuits lab"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Generate a family member and write its canonical encoding");
    g->add_option("--family", gen.family, "parity | disjointness")->capture_default_str();
    g->add_option("--n", gen.n, "Input count (parity) or block length (disjointness)")->capture_default_str();
    g->add_option("--erasure", gen.erasure, "Also write an erasure ledger: conservative | info-theoretic");
    g->add_option("--d", gen.d, "Dimension for the ledger budget column")->capture_default_str();
    g->add_option("--eta", gen.eta, "Flux constant for the ledger budget column")->capture_default_str();
    g->add_option("--out", gen.out, "Output directory")->capture_default_str();

    EmbedArgs emb;
    auto* e = app.add_subcommand("embed", "Embed one circuit on Z^d and verify it");
    e->add_option("--family", emb.family)->capture_default_str();
    e->add_option("--n", emb.n)->capture_default_str();
    e->add_option("--circuit", emb.circuit, "Circuit file instead of a family member");
    e->add_option("--d", emb.d)->capture_default_str();
    e->add_option("--placer", emb.placer, "shell | greedy")->capture_default_str();
    e->add_option("--c", emb.c, "Signal speed (cells per tick)")->capture_default_str();
    e->add_option("--congestion", emb.congestion, "Signals per cell per tick")->capture_default_str();
    e->add_option("--out", emb.out)->capture_default_str();
    e->add_option("--format", emb.formats, "Comma list of csv,json,svg")->capture_default_str();

    SweepArgs sw;
    auto add_sweep_opts = [](CLI::App* s, SweepArgs& x) {
        s->add_option("--family", x.family)->capture_default_str();
        s->add_option("--d", x.dims, "Dimensions")->delimiter(',')->capture_default_str();
        s->add_option("--sizes", x.sizes, "Family sizes, ascending")->delimiter(',')->capture_default_str();
        s->add_option("--placer", x.placer, "shell | greedy")->capture_default_str();
        s->add_option("--threads", x.threads, "Worker threads (0: hardware), capped by RC_LAB_THREADS");
        s->add_option("--tol", x.tol, "Exponent tolerance")->capture_default_str();
        s->add_option("--out", x.out)->capture_default_str();
        s->add_option("--format", x.formats, "Comma list of csv,json,svg")->capture_default_str();
    };
    auto* s = app.add_subcommand("sweep", "Makespan series for a family");
    add_sweep_opts(s, sw);
    SweepArgs ck;
    auto* k = app.add_subcommand("check", "Sweep and check the realizability constraints");
    add_sweep_opts(k, ck);

    FluxArgs fx;
    auto* f = app.add_subcommand("flux", "Token flow simulation through a growing ball");
    f->add_option("--d", fx.d)->capture_default_str();
    f->add_option("--T", fx.T, "Ticks")->capture_default_str();
    f->add_option("--extent", fx.extent, "Box half-width (0: r0 + c_ball*T + 2)");
    f->add_option("--rho-max", fx.rho_max)->capture_default_str();
    f->add_option("--c-flow", fx.c_flow)->capture_default_str();
    f->add_option("--c-ball", fx.c_ball)->capture_default_str();
    f->add_option("--r0", fx.r0)->capture_default_str();
    f->add_option("--rule", fx.rule, "zero | radial-out | radial-in | random-walk | rotation | drift")->capture_default_str();
    f->add_option("--seed", fx.seed)->capture_default_str();
    f->add_option("--fill", fx.fill, "empty | uniform | ball")->capture_default_str();
    f->add_option("--density", fx.density)->capture_default_str();
    f->add_option("--fill-radius", fx.fill_radius)->capture_default_str();
    f->add_flag("--achievability", fx.achievability, "Run the annulus achievability check instead");
    f->add_option("--eps", fx.eps, "Achievability slack")->capture_default_str();
    f->add_option("--out", fx.out)->capture_default_str();
    f->add_option("--format", fx.formats, "Comma list of csv,svg")->capture_default_str();

    TmArgs tma;
    auto* t = app.add_subcommand("tm", "Run a Turing machine and its lattice automaton in lockstep");
    t->add_option("--machine", tma.machine, "unary-increment | binary-increment | bb3 | halt")->capture_default_str();
    t->add_option("--file", tma.file, "Machine description file (rclab-tm v1)");
    t->add_option("--tape", tma.tape, "Initial tape contents");
    t->add_option("--max-ticks", tma.max_ticks)->capture_default_str();
    t->add_option("--margin", tma.margin, "Blank cells on each side of the input")->capture_default_str();
    t->add_option("--out", tma.out, "Directory for trace.csv");

    BoundsArgs bd;
    auto* b = app.add_subcommand("bounds", "Attention time bounds from information and erasure demands");
    b->add_option("--I", bd.I, "Bits that must cross the cut")->capture_default_str();
    b->add_option("--E", bd.E, "Bits that must be erased")->capture_default_str();
    b->add_option("--disj-m", bd.disj_m, "Add the DISJ demand for block length m");
    b->add_option("--d", bd.p.d)->capture_default_str();
    b->add_option("--H", bd.p.H)->capture_default_str();
    b->add_option("--kappa", bd.p.kappa)->capture_default_str();
    b->add_option("--C-head", bd.p.C_head)->capture_default_str();
    b->add_option("--K", bd.p.K_d)->capture_default_str();
    b->add_option("--eta", bd.p.eta)->capture_default_str();
    b->add_option("--T-env", bd.T_env, "Environment temperature in kelvin (default: normalized units)");
    b->add_option("--params", bd.params, "Parameter file (rclab-attention v1)");
    b->add_option("--heads", bd.heads, "Head counts for a scaling curve")->delimiter(',');
    b->add_option("--out", bd.out, "Directory for heads.csv / heads.svg");

    if (argc <= 1) {
        std::cerr << app.help();
        return kExitUsage;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& h) {
        return app.exit(h);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return kExitUsage;
    }

    try {
        if (*g) return run_gen(gen);
        if (*e) return run_embed(emb);
        if (*s) return run_sweep(sw);
        if (*k) return run_check(ck);
        if (*f) return run_flux_cmd(fx);
        if (*t) return run_tm(tma);
        if (*b) return run_bounds(bd);
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
