#pragma once

/// @file families.hpp
/// @brief Parametric circuit families and their local extension map.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "rclab/circuit.hpp"
#include "rclab/circuit_io.hpp"

namespace rclab {

enum class Family { Parity, Disjointness };

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

/// Parity over n >= 2 inputs as a heap-shaped tree of 4-NAND XOR blocks.
///
/// The tree for n inputs is the complete binary tree with n leaves in heap
/// numbering (internal nodes 0..n-2, leaves n-1..2n-2). Growing to n+1 splits
/// leaf n-1, so powers of two give perfectly balanced trees. Gate ids follow
/// the growth order: the n=2 core occupies ids 0..6 and every later input adds
/// one INPUT and four NANDs at the end.
Circuit build_parity_family(int n);

/// Balanced parity tree; n must be a power of two.
Circuit build_parity_tree(int n);

/// DISJ_m(x, y) = AND_i NAND(x_i, y_i); inputs are x_0..x_{m-1} then y_0..y_{m-1}.
Circuit build_disjointness(int m);

/// Family member of the given size (input count for parity, block length for DISJ).
Circuit build_family_member(Family f, int n);

struct EditStats {
    std::size_t bytes_written = 0;  ///< bytes overwritten in place or appended
    std::size_t bytes_read = 0;     ///< bytes inspected to recognize the member
    int n_before = 0;
    int n_after = 0;
};

/// Local extension C_n -> C_{n+1}, editing the encoding in place.
///
/// Only the header counters, two input slots of one parent block and five
/// appended gate records are touched. Recognition is local: the header, the
/// output record and the parent block are checked; the rest is not re-read.
/// Throws Error when the encoding is not a member of the family.
EditStats extend_family_inplace(CircuitEncoding& enc, Family family);

struct ExtendResult {
    CircuitEncoding encoding;
    EditStats stats;
};

ExtendResult extend_family(const CircuitEncoding& enc, Family family);

/// Equality up to renaming of non-input gates. Input order is significant.
bool structurally_equal(const Circuit& a, const Circuit& b);

/// Random acyclic NAND circuit with n_inputs inputs, up to `total_gates` gates
/// overall and one OUTPUT per sink. Fan-out respects the default bound.
Circuit random_dag(int n_inputs, int total_gates, std::uint64_t seed);

}  // namespace rclab
