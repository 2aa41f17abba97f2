#pragma once

/// @file checker.hpp
/// @brief Realizability verdicts from fitted log-log scaling exponents.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rclab/circuit.hpp"
#include "rclab/embed.hpp"

namespace rclab {

struct FitResult {
    double slope = 0;
    double intercept = 0;  ///< natural-log intercept; exp(intercept) is the fitted constant
    double r2 = 0;
};

/// Least squares on (ln x, ln y). Needs >= 3 points, x strictly increasing, all values positive.
FitResult fit_scaling_exponent(const std::vector<std::pair<double, double>>& points);

struct SweepRow {
    int n = 0;
    EmbeddingStats stats;
    BasisSummary basis;
};

/// Rows of the points that embedded successfully.
std::vector<SweepRow> rows_from_series(const std::vector<SweepPoint>& series);

struct ConstraintRecord {
    std::string name;
    double measured = 0;        ///< largest observed value of the constrained quantity
    double fitted_constant = 0;
    double fitted_exponent = 0;
    double r2 = 0;
    double limit = 0;           ///< pass iff fitted_exponent <= limit
    bool pass = false;
    std::string detail;
};

struct MinTimeRecord {
    double K_fit = 0;
    std::vector<std::int64_t> bounds;  ///< per row, ceil((n/K_fit)^(1/(d-1)))
    bool pass = false;
};

struct RealizabilityReport {
    int d = 2;
    double tol = 0.15;
    ConstraintRecord size;   ///< (S) log |C| vs log T
    ConstraintRecord width;  ///< (W) log maxcut vs log T
    ConstraintRecord gates;  ///< (G) basis, fan-in and fan-out
    MinTimeRecord min_time;
    std::vector<SweepRow> rows;

    bool pass() const { return size.pass && width.pass && gates.pass && min_time.pass; }
};

/// Throws Error for fewer than three rows or d < 2.
RealizabilityReport check_rc(const std::vector<SweepRow>& sweep, int d, double tol = 0.15);

/// Byte-deterministic JSON rendering, headed by a `rclab-report v1` line.
std::string report_text(const RealizabilityReport& r);
std::string report_csv(const RealizabilityReport& r);

struct StrictnessWitness {
    int d = 2;
    int k = 1;
    std::int64_t n0 = 2;
    std::int64_t n = 0;       ///< smallest n >= n0 with (log2 m)^(k(d-1)) < m for every m >= n
    double budget = 0;        ///< (log2 n)^(k(d-1)): bits a polylog-time cut can carry
    std::string explanation;
};

/// Point where a width budget of t^(d-1), t = (log2 n)^k, can no longer carry n input bits.
///
/// "Can no longer" is read as holding from n onwards, so transient early values
/// (for example n = 2, 3 when k(d-1) = 2) do not count.
StrictnessWitness strictness_witness(int d, int k, std::int64_t n0 = 2);

}  // namespace rclab
