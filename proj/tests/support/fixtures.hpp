#pragma once

#include "scpna/model.hpp"
#include "scpna/scoring.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace fixtures {

/// Consecutive 3.0 s windows with a 1.5 s hop.
std::vector<scpna::SegmentSpan> spans(std::size_t n, const std::string& rec = "rec");

scpna::Timeline timeline(const std::string& rec,
                         std::vector<std::tuple<std::string, double, double>> turns);

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& p);

}  // namespace fixtures
