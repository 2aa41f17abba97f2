#include "rclab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "rclab/error.hpp"

namespace rclab {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(ch);
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

}  // namespace

std::string line_chart_svg(const std::vector<ChartSeries>& series, const ChartOptions& opt) {
    if (opt.width < 100 || opt.height < 100) throw Error("chart must be at least 100x100");
    auto tx = [&](double v) { return opt.log_x ? std::log10(v) : v; };
    auto ty = [&](double v) { return opt.log_y ? std::log10(v) : v; };
    auto keep = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!opt.log_x || x > 0) && (!opt.log_y || y > 0);
    };

    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) throw Error("chart series '" + s.name + "' has mismatched x and y");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!keep(s.x[i], s.y[i])) continue;
            x0 = std::min(x0, tx(s.x[i]));
            x1 = std::max(x1, tx(s.x[i]));
            y0 = std::min(y0, ty(s.y[i]));
            y1 = std::max(y1, ty(s.y[i]));
        }
    }
    if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x0 == x1) x0 -= 0.5, x1 += 0.5;
    if (y0 == y1) y0 -= 0.5, y1 += 0.5;

    const double left = 70, right = 150, top = 40, bottom = 50;
    const double pw = opt.width - left - right, ph = opt.height - top - bottom;
    auto px = [&](double v) { return left + (tx(v) - x0) / (x1 - x0) * pw; };
    auto py = [&](double v) { return top + ph - (ty(v) - y0) / (y1 - y0) * ph; };
    auto untx = [&](double v) { return opt.log_x ? std::pow(10.0, v) : v; };
    auto unty = [&](double v) { return opt.log_y ? std::pow(10.0, v) : v; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.width) + "\" height=\"" +
           std::to_string(opt.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(opt.width / 2.0) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" +
           escape(opt.title) + "</text>\n";
    out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    // Corner tick labels.
    out += "<text x=\"" + num(left) + "\" y=\"" + num(top + ph + 16) + "\" text-anchor=\"middle\">" +
           label(untx(x0)) + "</text>\n";
    out += "<text x=\"" + num(left + pw) + "\" y=\"" + num(top + ph + 16) + "\" text-anchor=\"middle\">" +
           label(untx(x1)) + "</text>\n";
    out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(top + ph) + "\" text-anchor=\"end\">" + label(unty(y0)) +
           "</text>\n";
    out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(top + 4) + "\" text-anchor=\"end\">" + label(unty(y1)) +
           "</text>\n";
    std::string xl = opt.x_label + (opt.log_x ? " (log)" : "");
    std::string yl = opt.y_label + (opt.log_y ? " (log)" : "");
    out += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(opt.height - 12.0) + "\" text-anchor=\"middle\">" +
           escape(xl) + "</text>\n";
    out += "<text x=\"16\" y=\"" + num(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           num(top + ph / 2) + ")\">" + escape(yl) + "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kPalette[k % std::size(kPalette)];
        std::string pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!keep(s.x[i], s.y[i])) continue;
            if (!pts.empty()) pts.push_back(' ');
            pts += num(px(s.x[i])) + "," + num(py(s.y[i]));
        }
        out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + pts +
               "\"/>\n";
        const double ly = top + 14 + 18.0 * static_cast<double>(k);
        out += "<line x1=\"" + num(left + pw + 10) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(left + pw + 30) +
               "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + num(left + pw + 36) + "\" y=\"" + num(ly) + "\">" + escape(s.name) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace rclab
