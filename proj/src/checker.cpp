#include "rclab/checker.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"
#include "rclab/error.hpp"
#include "rclab/geometry.hpp"

namespace rclab {

namespace {

FitResult fit_loglog(const std::vector<std::pair<double, double>>& points) {
    const double n = static_cast<double>(points.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (auto [x, y] : points) {
        double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        syy += ly * ly;
    }
    double vx = sxx - sx * sx / n;
    double vy = syy - sy * sy / n;
    double cxy = sxy - sx * sy / n;
    if (vx <= 0) throw Error("fit_scaling_exponent: x values do not vary");
    FitResult f;
    f.slope = cxy / vx;
    f.intercept = (sy - f.slope * sx) / n;
    f.r2 = vy <= 1e-300 ? 1.0 : (cxy * cxy) / (vx * vy);
    return f;
}

ConstraintRecord slope_record(std::string name, const std::vector<std::pair<double, double>>& pts, double limit) {
    ConstraintRecord rec;
    rec.name = std::move(name);
    rec.limit = limit;
    for (auto [x, y] : pts) rec.measured = std::max(rec.measured, y);
    std::vector<std::pair<double, double>> usable;
    for (auto p : pts) {
        if (p.first > 0 && p.second > 0) usable.push_back(p);
    }
    std::set<double> xs;
    for (auto p : usable) xs.insert(p.first);
    if (usable.size() < 3 || xs.size() < 2) {
        rec.detail = "fewer than three usable sweep points";
        return rec;
    }
    auto f = fit_loglog(usable);
    rec.fitted_exponent = f.slope;
    rec.fitted_constant = std::exp(f.intercept);
    rec.r2 = f.r2;
    rec.pass = f.slope <= limit;
    std::ostringstream os;
    os << "slope " << f.slope << (rec.pass ? " <= " : " > ") << limit;
    rec.detail = os.str();
    return rec;
}

bool strictly_below(long double n, int p) {
    long double l = std::log2(n);
    return std::pow(l, static_cast<long double>(p)) < n;
}

}  // namespace

FitResult fit_scaling_exponent(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw Error("fit_scaling_exponent: needs at least 3 points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].first <= 0 || points[i].second <= 0) throw Error("fit_scaling_exponent: values must be positive");
        if (i && points[i].first <= points[i - 1].first) {
            throw Error("fit_scaling_exponent: x values must be strictly increasing");
        }
    }
    return fit_loglog(points);
}

std::vector<SweepRow> rows_from_series(const std::vector<SweepPoint>& series) {
    std::vector<SweepRow> rows;
    for (const auto& p : series) {
        if (p.stats) rows.push_back({p.n, *p.stats, p.basis});
    }
    return rows;
}

RealizabilityReport check_rc(const std::vector<SweepRow>& sweep, int d, double tol) {
    if (sweep.size() < 3) throw Error("check_rc: needs at least 3 sweep points");
    if (d < 2) throw Error("check_rc: needs d >= 2");
    RealizabilityReport rep;
    rep.d = d;
    rep.tol = tol;
    rep.rows = sweep;

    std::vector<std::pair<double, double>> size_pts, cut_pts;
    for (const auto& r : sweep) {
        size_pts.emplace_back(r.stats.makespan, static_cast<double>(r.stats.size));
        cut_pts.emplace_back(r.stats.makespan, r.stats.max_crossings);
    }
    auto by_x = [](auto& v) { std::stable_sort(v.begin(), v.end()); };
    by_x(size_pts);
    by_x(cut_pts);
    rep.size = slope_record("S", size_pts, d + tol);
    rep.width = slope_record("W", cut_pts, d - 1 + tol);

    rep.gates.name = "G";
    rep.gates.pass = true;
    for (const auto& r : sweep) {
        rep.gates.measured = std::max<double>(rep.gates.measured, r.basis.max_fanout);
        if (!r.basis.all_in_basis || r.basis.max_fanin > 2 || r.basis.max_fanout > r.basis.fanout_bound) {
            rep.gates.pass = false;
            rep.gates.detail = "n=" + std::to_string(r.n) + " breaks the gate basis or fan bounds";
        }
    }
    if (rep.gates.pass) rep.gates.detail = "all gates in basis, fan-in <= 2, fan-out within bound";
    rep.gates.limit = sweep.front().basis.fanout_bound;

    double K = 0;
    for (const auto& r : sweep) {
        if (r.stats.makespan <= 0) throw Error("check_rc: makespan must be positive");
        K = std::max(K, r.n / std::pow(static_cast<double>(r.stats.makespan), d - 1));
    }
    rep.min_time.K_fit = K;
    rep.min_time.pass = true;
    for (const auto& r : sweep) {
        auto b = min_time_lower_bound(r.n, d, K);
        rep.min_time.bounds.push_back(b);
        if (r.stats.makespan < b) rep.min_time.pass = false;
    }
    return rep;
}

std::string report_text(const RealizabilityReport& r) {
    using nlohmann::json;
    auto rec = [](const ConstraintRecord& c) {
        return json{{"name", c.name},
                    {"measured", c.measured},
                    {"fitted_constant", c.fitted_constant},
                    {"fitted_exponent", c.fitted_exponent},
                    {"r2", c.r2},
                    {"limit", c.limit},
                    {"pass", c.pass},
                    {"detail", c.detail}};
    };
    json rows = json::array();
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        rows.push_back({{"n", row.n},
                        {"T", row.stats.makespan},
                        {"radius", row.stats.radius},
                        {"size", row.stats.size},
                        {"maxcut", row.stats.max_crossings},
                        {"max_fanin", row.basis.max_fanin},
                        {"max_fanout", row.basis.max_fanout},
                        {"min_time_bound", r.min_time.bounds.at(i)}});
    }
    json j{{"d", r.d},
           {"tol", r.tol},
           {"S", rec(r.size)},
           {"W", rec(r.width)},
           {"G", rec(r.gates)},
           {"min_time", {{"K_fit", r.min_time.K_fit}, {"pass", r.min_time.pass}}},
           {"pass", r.pass()},
           {"rows", rows}};
    return "rclab-report v1\n" + j.dump(2) + "\n";
}

std::string report_csv(const RealizabilityReport& r) {
    std::string out = "# rclab-report-rows v1\nn,T,radius,size,maxcut,min_time_bound\n";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        out += std::to_string(row.n) + "," + std::to_string(row.stats.makespan) + "," +
               std::to_string(row.stats.radius) + "," + std::to_string(row.stats.size) + "," +
               std::to_string(row.stats.max_crossings) + "," + std::to_string(r.min_time.bounds.at(i)) + "\n";
    }
    return out;
}

StrictnessWitness strictness_witness(int d, int k, std::int64_t n0) {
    if (d < 2) throw Error("strictness_witness: needs d >= 2");
    if (k < 1) throw Error("strictness_witness: needs k >= 1");
    if (n0 < 2) n0 = 2;
    const int p = k * (d - 1);
    // ln n - p ln log2 n falls until n = e^p and rises after it, so the failures
    // form one interval and the answer is one past its right end.
    const long double turn = std::exp(static_cast<long double>(p));
    if (turn > 1e17L) throw Error("strictness_witness: k(d-1) too large for 64-bit search");
    auto lo = static_cast<std::int64_t>(std::max<long double>(2, std::floor(turn)));
    std::int64_t answer = 2;
    if (!strictly_below(lo, p) || !strictly_below(lo + 1, p)) {
        if (strictly_below(lo, p)) ++lo;  // the minimum sits at lo + 1
        std::int64_t a = lo, b = lo;
        while (!strictly_below(static_cast<long double>(b), p)) b *= 2;
        // invariant: a fails, b holds
        while (b - a > 1) {
            std::int64_t mid = a + (b - a) / 2;
            (strictly_below(static_cast<long double>(mid), p) ? b : a) = mid;
        }
        answer = b;
    }
    StrictnessWitness w;
    w.d = d;
    w.k = k;
    w.n0 = n0;
    w.n = std::max(answer, n0);
    w.budget = std::pow(std::log2(static_cast<double>(w.n)), p);
    std::ostringstream os;
    os << "t(n) = (log2 n)^" << k << " gives a boundary budget t^" << (d - 1) << " = " << w.budget << " < n = " << w.n
       << " input bits, and the gap persists for all larger n";
    w.explanation = os.str();
    return w;
}

}  // namespace rclab
