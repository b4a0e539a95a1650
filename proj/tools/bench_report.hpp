#pragma once

#include "scpna/model.hpp"
#include "scpna/scoring.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace scpna::cli {

/// One manifest line: an embedding file and an optional reference RTTM.
struct ManifestEntry {
    std::filesystem::path embeddings;
    std::optional<std::filesystem::path> reference;
};

/// Reads "embedding_path [reference_rttm]" lines; '#' starts a comment.
/// Relative paths resolve against the manifest's directory.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

struct BenchmarkRow {
    std::string recording_id;
    Method method = Method::sc_pna;
    std::string parameter;  // formatted p / alpha; empty for eer-delta
    int k_hat = 0;
    std::optional<int> k_true;
    std::optional<DerBreakdown> der;  // only with a reference
    std::optional<double> wall_time_ms;
    std::uint64_t eig_decomp_count = 0;
    std::string status = "ok";
};

/// CSV with header
/// recording_id,method,parameter,k_hat,k_true,der,missed,false_alarm,
/// speaker_error,wall_time_ms,eig_decomp_count,status
/// Absent optional fields are left empty.
void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows);

/// Fixed-point text with `digits` decimals.
std::string fixed(double value, int digits);

/// Parses "a:b:step" (inclusive), a comma list, or a single value.
std::vector<double> parse_grid(const std::string& text);

/// Splits a comma list into non-empty trimmed tokens.
std::vector<std::string> split_list(const std::string& text);

}  // namespace scpna::cli
