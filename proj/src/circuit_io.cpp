#include "rclab/circuit_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "rclab/error.hpp"

namespace rclab {

namespace el = encoding_layout;

namespace {

constexpr std::string_view kMagic = "rclab-circuit v1\n";
constexpr std::string_view kEmptyRef = "--------";
constexpr std::uint64_t kMaxId = 99'999'999;

void put_field(std::string& out, std::string_view key, std::uint64_t value) {
    out += key;
    out += ' ';
    out += format_id(value);
    out += '\n';
}

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    std::string_view take(std::size_t n) {
        if (pos_ + n > text_.size()) throw Error("decode: truncated encoding at byte " + std::to_string(pos_));
        auto out = text_.substr(pos_, n);
        pos_ += n;
        return out;
    }
    void expect(std::string_view literal) {
        if (take(literal.size()) != literal) {
            throw Error("decode: expected '" + std::string(literal) + "' near byte " +
                        std::to_string(pos_ - literal.size()));
        }
    }
    std::uint64_t field(std::string_view key) {
        expect(key);
        expect(" ");
        auto v = parse_id(take(el::kIdWidth));
        expect("\n");
        return v;
    }
    bool done() const { return pos_ == text_.size(); }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string format_id(std::uint64_t value) {
    if (value > kMaxId) throw Error("encode: id " + std::to_string(value) + " exceeds 8 digits");
    std::string s(el::kIdWidth, '0');
    for (std::size_t i = el::kIdWidth; i-- > 0 && value > 0; value /= 10) {
        s[i] = static_cast<char>('0' + value % 10);
    }
    return s;
}

std::uint64_t parse_id(std::string_view field) {
    if (field.size() != el::kIdWidth) throw Error("decode: bad id field width");
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw Error("decode: bad id field '" + std::string(field) + "'");
    }
    return v;
}

CircuitEncoding encode(const Circuit& circuit) {
    std::string out;
    out.reserve(el::gate_record_offset(circuit.feedback_edges().size(), circuit.size()));
    out += kMagic;
    put_field(out, "n_inputs", static_cast<std::uint64_t>(circuit.n_inputs()));
    put_field(out, "n_outputs", static_cast<std::uint64_t>(circuit.n_outputs()));
    put_field(out, "fanout_bound", static_cast<std::uint64_t>(circuit.fanout_bound()));
    put_field(out, "n_feedback", circuit.feedback_edges().size());
    for (const FeedbackEdge& e : circuit.feedback_edges()) {
        out += "feedback ";
        out += format_id(e.src);
        out += ' ';
        out += format_id(e.dst);
        out += '\n';
    }
    put_field(out, "n_gates", circuit.size());
    for (const Gate& g : circuit.gates()) {
        if (g.inputs.size() > 2) throw Error("encode: gate fan-in above 2 is not representable");
        out += "gate ";
        out += format_id(g.id);
        out += ' ';
        std::string kind(kind_name(g.kind));
        kind.resize(el::kKindWidth, ' ');
        out += kind;
        for (std::size_t p = 0; p < 2; ++p) {
            out += ' ';
            out += p < g.inputs.size() ? format_id(g.inputs[p]) : std::string(kEmptyRef);
        }
        out += '\n';
    }
    return {std::move(out)};
}

Circuit decode(const CircuitEncoding& encoding) {
    Reader r(encoding.bytes);
    r.expect(kMagic);
    auto n_inputs = r.field("n_inputs");
    auto n_outputs = r.field("n_outputs");
    auto fanout_bound = r.field("fanout_bound");
    auto n_feedback = r.field("n_feedback");
    std::vector<FeedbackEdge> feedback;
    for (std::uint64_t i = 0; i < n_feedback; ++i) {
        r.expect("feedback ");
        auto src = parse_id(r.take(el::kIdWidth));
        r.expect(" ");
        auto dst = parse_id(r.take(el::kIdWidth));
        r.expect("\n");
        FeedbackEdge e{static_cast<GateId>(src), static_cast<GateId>(dst)};
        if (!feedback.empty() && !(feedback.back() < e)) {
            throw Error("decode: feedback edges not in canonical sorted order");
        }
        feedback.push_back(e);
    }
    auto n_gates = r.field("n_gates");
    std::vector<Gate> gates;
    gates.reserve(n_gates);
    for (std::uint64_t i = 0; i < n_gates; ++i) {
        r.expect("gate ");
        auto id = parse_id(r.take(el::kIdWidth));
        if (id != i) throw Error("decode: gate record " + std::to_string(i) + " carries id " + std::to_string(id));
        r.expect(" ");
        std::string_view kind_field = r.take(el::kKindWidth);
        auto trimmed = kind_field.substr(0, kind_field.find(' '));
        if (kind_field.find_first_not_of(' ', trimmed.size()) != std::string_view::npos) {
            throw Error("decode: malformed kind column in gate " + std::to_string(i));
        }
        auto kind = parse_kind(trimmed);
        if (!kind) throw Error("decode: unknown gate kind '" + std::string(trimmed) + "'");
        Gate g{static_cast<GateId>(id), *kind, {}};
        for (int p = 0; p < 2; ++p) {
            r.expect(" ");
            auto field = r.take(el::kIdWidth);
            bool used = p < required_fanin(*kind);
            if (field == kEmptyRef) {
                if (used) throw Error("decode: gate " + std::to_string(i) + " is missing input " + std::to_string(p));
            } else {
                if (!used) throw Error("decode: gate " + std::to_string(i) + " has a surplus input");
                g.inputs.push_back(static_cast<GateId>(parse_id(field)));
            }
        }
        r.expect("\n");
        gates.push_back(std::move(g));
    }
    if (!r.done()) throw Error("decode: trailing bytes after last gate record");
    Circuit c(std::move(gates), std::move(feedback), static_cast<int>(fanout_bound));
    if (static_cast<std::uint64_t>(c.n_inputs()) != n_inputs ||
        static_cast<std::uint64_t>(c.n_outputs()) != n_outputs) {
        throw Error("decode: header input/output counts disagree with gate records");
    }
    return c;
}

void write_circuit_file(const std::filesystem::path& path, const Circuit& circuit) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << encode(circuit).bytes;
}

Circuit read_circuit_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return decode({ss.str()});
}

}  // namespace rclab
