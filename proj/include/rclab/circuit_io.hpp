#pragma once

/// @file circuit_io.hpp
/// @brief Canonical text encoding of circuits.
///
/// The encoding is line oriented with fixed-width fields so that every record
/// sits at a computable byte offset:
///
///     rclab-circuit v1
///     n_inputs 00000002
///     n_outputs 00000001
///     fanout_bound 00000004
///     n_feedback 00000000
///     feedback SSSSSSSS DDDDDDDD      (n_feedback lines, sorted)
///     n_gates 00000007
///     gate IIIIIIII KIND__ AAAAAAAA BBBBBBBB   (n_gates lines, id order)
///
/// Unused input slots are written as `--------`. Kinds are left-aligned in a
/// six character column. The same text is the on-disk circuit file format.

#include <cstddef>
#include <filesystem>
#include <string>

#include "rclab/circuit.hpp"

namespace rclab {

struct CircuitEncoding {
    std::string bytes;

    friend bool operator==(const CircuitEncoding&, const CircuitEncoding&) = default;
};

namespace encoding_layout {
inline constexpr std::size_t kIdWidth = 8;
inline constexpr std::size_t kMagicLen = 17;       // "rclab-circuit v1\n"
inline constexpr std::size_t kInputsLineLen = 18;  // "n_inputs NNNNNNNN\n"
inline constexpr std::size_t kOutputsLineLen = 19;
inline constexpr std::size_t kFanoutLineLen = 22;
inline constexpr std::size_t kFeedbackCountLen = 20;
inline constexpr std::size_t kFeedbackLineLen = 27;
inline constexpr std::size_t kGatesLineLen = 17;
inline constexpr std::size_t kGateRecordLen = 39;
inline constexpr std::size_t kRefOffset[2] = {21, 30};
inline constexpr std::size_t kKindOffset = 14;
inline constexpr std::size_t kKindWidth = 6;

constexpr std::size_t inputs_value_offset() { return kMagicLen + 9; }
constexpr std::size_t gates_line_offset(std::size_t n_feedback) {
    return kMagicLen + kInputsLineLen + kOutputsLineLen + kFanoutLineLen + kFeedbackCountLen +
           kFeedbackLineLen * n_feedback;
}
constexpr std::size_t gates_value_offset(std::size_t n_feedback) {
    return gates_line_offset(n_feedback) + 8;
}
constexpr std::size_t gate_record_offset(std::size_t n_feedback, std::size_t id) {
    return gates_line_offset(n_feedback) + kGatesLineLen + kGateRecordLen * id;
}
}  // namespace encoding_layout

CircuitEncoding encode(const Circuit& circuit);
/// Throws Error on any malformed or inconsistent record.
Circuit decode(const CircuitEncoding& encoding);

/// Fixed-width id field helpers shared with the family editor.
std::string format_id(std::uint64_t value);
std::uint64_t parse_id(std::string_view field);

void write_circuit_file(const std::filesystem::path& path, const Circuit& circuit);
Circuit read_circuit_file(const std::filesystem::path& path);

}  // namespace rclab
