#pragma once

#include "scpna/scoring.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace scpna {

/// All SPEAKER records of an RTTM file, grouped by recording (sorted by id).
struct RttmDocument {
    std::vector<Timeline> recordings;

    /// Timeline for `recording_id`, or nullptr.
    const Timeline* find(const std::string& recording_id) const;
};

/// Parses RTTM text. SPEAKER lines need at least 8 whitespace-separated
/// fields: type, file, channel, onset, duration, ortho, stype, name. Other
/// standard record types and '#' comments are skipped. Throws ParseError with
/// the line number for anything malformed.
RttmDocument parse_rttm(std::istream& in, const std::string& source_name = "<rttm>");
RttmDocument read_rttm(const std::filesystem::path& path);

/// One line per turn, in timeline order:
/// SPEAKER <rec> 1 <onset> <duration> <NA> <NA> <speaker> <NA> <NA>
/// with times printed to 3 decimals.
void write_rttm(std::ostream& out, const Timeline& timeline);
void write_rttm(const std::filesystem::path& path, const Timeline& timeline);

}  // namespace scpna
