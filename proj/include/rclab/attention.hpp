#pragma once

/// @file attention.hpp
/// @brief Capacity and lower-bound calculators for attention under realizability.
///
/// All information quantities are in bits (log base 2). Landauer quantities
/// use normalized units (k_B T_env ln 2 = 1) unless T_env is given in kelvin.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rclab {

struct AttentionParams {
    int d = 3;
    double H = 1;        ///< heads
    double kappa = 1;    ///< channels per site
    double C_head = 1;   ///< bits per head use
    double K_d = 1;      ///< geometric constant
    double eta = 1;      ///< flux constant eta_d
    std::optional<double> T_env;  ///< kelvin; empty: normalized

    /// Throws Error unless every constant is strictly positive and d >= 1.
    void validate() const;
};

/// "rclab-attention v1" then "key value" lines (d, H, kappa, C_head, K_d, eta, T_env).
AttentionParams parse_attention_params(const std::string& text);
std::string attention_params_text(const AttentionParams& p);

/// K_d * C_head * kappa * H * T^d.
double cut_capacity(double T, const AttentionParams& p);

/// (I* / (K_d C_head kappa H))^(1/d).
double min_time_throughput(double I_star, const AttentionParams& p);

/// ((k_B T_env ln 2 / eta) E_req)^(1/d).
double min_time_landauer(double E_req, const AttentionParams& p);

enum class Binding { Throughput, Landauer, Both };
std::string_view binding_name(Binding b);

struct BoundResult {
    double T_throughput = 0;
    double T_landauer = 0;
    double T_joint = 0;
    Binding binding = Binding::Both;
    double I_star = 0;
    double E_req = 0;
    AttentionParams params;
};

/// Both bounds and their maximum; the tag is Both when they agree within 1e-12 relative.
BoundResult joint_min_time(double I_star, double E_req, const AttentionParams& p);

/// c0 * m bits must cross a cut separating the two blocks.
double disj_demand(int m, double c0 = 1);

/// c1 * R * log2 |I|.
double pointer_demand(int R, double index_space, double c1 = 1);

/// c1 * L * n * log2(1/eps); requires 0 < eps < 0.5.
double threshold_erasure(int n, int L, double eps, double c1 = 1);

struct HeadScalingPoint {
    double H = 1;
    double T = 0;
    double ratio = 1;  ///< T(H) / T(1)
};

std::vector<HeadScalingPoint> head_scaling_curve(const std::vector<double>& H_values, double I_star,
                                                 const AttentionParams& p);

/// "# rclab-heads v1" then H,T,ratio rows.
std::string head_scaling_csv(const std::vector<HeadScalingPoint>& curve);

/// DISJ(m) embedded by the greedy placer across the hyperplane x_0 = -1/2.
/// The x-block INPUTs and the OUTPUT are pinned on the negative side, the
/// y-block INPUTs on the other; every other gate is placed freely.
struct DisjCutResult {
    int m = 0;
    int d = 2;
    int cut = 0;                   ///< min cut between the y-block and the OUTPUT (width module)
    long long crossings = 0;       ///< route moves that cross the hyperplane, one bit each
    int makespan = 0;
    bool valid_embedding = false;
    bool pass = false;             ///< valid, cut >= 1 and crossings >= m
};

DisjCutResult disj_cut_experiment(int m, int d = 2);

}  // namespace rclab
