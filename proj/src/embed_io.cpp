#include "rclab/embed_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rclab/error.hpp"

namespace rclab {

namespace {

using nlohmann::json;

json site_json(const Site& s, int d) { return json(std::vector<int>(s.begin(), s.begin() + d)); }

Site site_from(const json& j, int d) {
    if (!j.is_array() || static_cast<int>(j.size()) != d) throw Error("embedding file: site has wrong dimension");
    Site s{};
    for (int i = 0; i < d; ++i) s[i] = j[i].get<int>();
    return s;
}

}  // namespace

std::string embedding_to_text(const Embedding& e) {
    json j;
    j["d"] = e.d;
    j["c"] = e.c;
    j["congestion_cap"] = e.congestion_cap;
    json placement = json::array();
    for (const Site& s : e.placement) placement.push_back(site_json(s, e.d));
    j["placement"] = std::move(placement);
    j["firing_time"] = e.firing_time;
    json routes = json::array();
    for (const auto& [w, p] : e.routes) {
        json path = json::array();
        for (const Site& s : p) path.push_back(site_json(s, e.d));
        routes.push_back({{"src", w.src}, {"dst", w.dst}, {"port", w.port}, {"path", std::move(path)}});
    }
    j["routes"] = std::move(routes);
    return std::string(kEmbeddingHeader) + "\n" + j.dump(1) + "\n";
}

Embedding embedding_from_text(const std::string& text) {
    auto nl = text.find('\n');
    if (nl == std::string::npos || text.substr(0, nl) != kEmbeddingHeader) {
        throw Error("embedding file: missing header '" + std::string(kEmbeddingHeader) + "'");
    }
    try {
        json j = json::parse(text.substr(nl + 1));
        Embedding e;
        e.d = j.at("d").get<int>();
        check_dimension(e.d);
        e.c = j.at("c").get<int>();
        e.congestion_cap = j.at("congestion_cap").get<int>();
        for (const auto& s : j.at("placement")) e.placement.push_back(site_from(s, e.d));
        e.firing_time = j.at("firing_time").get<std::vector<int>>();
        for (const auto& r : j.at("routes")) {
            Wire w{r.at("src").get<GateId>(), r.at("dst").get<GateId>(), r.at("port").get<std::uint32_t>()};
            Path p;
            for (const auto& s : r.at("path")) p.push_back(site_from(s, e.d));
            e.routes.emplace(w, std::move(p));
        }
        return e;
    } catch (const json::exception& ex) {
        throw Error(std::string("embedding file: ") + ex.what());
    }
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << text;
        if (!out) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_embedding_file(const std::filesystem::path& path, const Embedding& e) {
    write_text_atomic(path, embedding_to_text(e));
}

Embedding read_embedding_file(const std::filesystem::path& path) { return embedding_from_text(read_text_file(path)); }

std::string sweep_csv(const std::vector<SweepPoint>& rows) {
    std::string out = "# rclab-sweep v1\nn,T,radius,size,maxcut,error\n";
    for (const auto& r : rows) {
        out += std::to_string(r.n);
        if (r.stats) {
            out += "," + std::to_string(r.stats->makespan) + "," + std::to_string(r.stats->radius) + "," +
                   std::to_string(r.stats->size) + "," + std::to_string(r.stats->max_crossings) + ",\n";
        } else {
            std::string msg = r.error;
            for (char& ch : msg) {
                if (ch == ',' || ch == '\n') ch = ';';
            }
            out += ",,,,," + msg + "\n";
        }
    }
    return out;
}

std::string cut_profile_csv(const std::vector<std::pair<int, int>>& profile) {
    std::string out = "# rclab-cut-profile v1\ntick,crossings\n";
    for (auto [t, n] : profile) out += std::to_string(t) + "," + std::to_string(n) + "\n";
    return out;
}

}  // namespace rclab
