#pragma once

#include "scpna/model.hpp"

#include <filesystem>
#include <iosfwd>

namespace scpna {

// Embedding files come in two encodings, chosen by extension.
//
// Text (any extension other than .bin), e.g. rec.csv:
//
//   # scpna-embeddings v1
//   n,d,recording_id
//   4,2,rec1
//   0.70710678118654757,0.70710678118654757
//   ...                                    (n rows of d values)
//
// Binary (.bin), little-endian:
//
//   char[8]  "SCPNAEMB"
//   u32      version (1)
//   u64      n
//   u64      d
//   u32      byte length of recording_id, then its bytes
//   f64[n*d] row-major values
//
// Both are paired with a sidecar segments table next to them, named by
// replacing the extension with ".segments.csv":
//
//   onset,duration
//   0,3
//   1.5,3
//
// Doubles are written in shortest round-trip form, so a write/read cycle is
// bit-exact.

/// Sidecar path for an embedding file: rec.csv -> rec.segments.csv.
std::filesystem::path segments_path_for(const std::filesystem::path& embedding_path);

/// Reads an embedding file and its sidecar. Throws InputError / ParseError.
EmbeddingSet read_embedding_file(const std::filesystem::path& path);

/// Writes an embedding file and its sidecar.
void write_embedding_file(const std::filesystem::path& path, const EmbeddingSet& emb);

/// Dense matrix as CSV in round-trip precision (debug dumps).
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);

/// Shortest text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace scpna
