#pragma once

/// @file embed_io.hpp
/// @brief Embedding files and sweep CSV rows.
///
/// An embedding file is the header line `rclab-embedding v1` followed by a JSON
/// object with d, c, congestion_cap, placement, firing_time and routes.

#include <filesystem>
#include <string>
#include <vector>

#include "rclab/embed.hpp"

namespace rclab {

inline constexpr std::string_view kEmbeddingHeader = "rclab-embedding v1";

std::string embedding_to_text(const Embedding& e);
Embedding embedding_from_text(const std::string& text);

void write_embedding_file(const std::filesystem::path& path, const Embedding& e);
Embedding read_embedding_file(const std::filesystem::path& path);

/// "# rclab-sweep v1" then n,T,radius,size,maxcut rows; failed points carry an error column.
std::string sweep_csv(const std::vector<SweepPoint>& rows);

/// "# rclab-cut-profile v1" then tick,crossings rows.
std::string cut_profile_csv(const std::vector<std::pair<int, int>>& profile);

/// Writes through a temporary file and a rename so readers never see partial output.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace rclab
