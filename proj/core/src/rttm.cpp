#include "scpna/rttm.hpp"

#include "scpna/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace scpna {
namespace {

constexpr std::array<std::string_view, 11> kSkippedTypes = {
    "SPKR-INFO", "SEGMENT", "NOSCORE", "NO_RT_METADATA", "NON-SPEECH", "NON-LEX",
    "LEXEME",    "FILLER",  "SU",      "IP",             "EDIT"};

double parse_time(const std::string& tok, const std::string& src, std::size_t line,
                  const char* field) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        throw ParseError(src, line, std::string("invalid ") + field + " '" + tok + "'");
    }
    return v;
}

}  // namespace

const Timeline* RttmDocument::find(const std::string& recording_id) const {
    for (const auto& t : recordings) {
        if (t.recording_id == recording_id) return &t;
    }
    return nullptr;
}

RttmDocument parse_rttm(std::istream& in, const std::string& source_name) {
    std::map<std::string, Timeline> by_rec;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::vector<std::string> tok;
        for (std::string t; fields >> t;) tok.push_back(std::move(t));
        if (tok.empty() || tok.front().front() == '#') continue;
        if (tok.front() != "SPEAKER") {
            if (std::find(kSkippedTypes.begin(), kSkippedTypes.end(), tok.front()) !=
                kSkippedTypes.end()) {
                continue;
            }
            throw ParseError(source_name, lineno, "unknown record type '" + tok.front() + "'");
        }
        if (tok.size() < 8) {
            throw ParseError(source_name, lineno,
                             "SPEAKER record needs at least 8 fields, found " +
                                 std::to_string(tok.size()));
        }
        const double onset = parse_time(tok[3], source_name, lineno, "onset");
        const double duration = parse_time(tok[4], source_name, lineno, "duration");
        if (onset < 0.0) throw ParseError(source_name, lineno, "negative onset");
        if (duration <= 0.0) throw ParseError(source_name, lineno, "duration must be positive");
        auto& timeline = by_rec[tok[1]];
        timeline.recording_id = tok[1];
        timeline.turns.push_back({tok[7], onset, duration});
    }
    RttmDocument doc;
    for (auto& [id, t] : by_rec) doc.recordings.push_back(std::move(t));
    return doc;
}

RttmDocument read_rttm(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open RTTM file " + path.string());
    return parse_rttm(in, path.string());
}

void write_rttm(std::ostream& out, const Timeline& timeline) {
    std::array<char, 64> buf{};
    for (const auto& t : timeline.turns) {
        std::snprintf(buf.data(), buf.size(), "%.3f %.3f", t.onset, t.duration);
        out << "SPEAKER " << timeline.recording_id << " 1 " << buf.data() << " <NA> <NA> "
            << t.speaker << " <NA> <NA>\n";
    }
}

void write_rttm(const std::filesystem::path& path, const Timeline& timeline) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    write_rttm(out, timeline);
}

}  // namespace scpna
