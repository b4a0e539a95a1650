#include "fixtures.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace fixtures {

std::vector<scpna::SegmentSpan> spans(std::size_t n, const std::string& rec) {
    std::vector<scpna::SegmentSpan> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back({scpna::kDefaultHopSeconds * static_cast<double>(i),
                       scpna::kDefaultWindowSeconds, rec});
    }
    return out;
}

scpna::Timeline timeline(const std::string& rec,
                         std::vector<std::tuple<std::string, double, double>> turns) {
    scpna::Timeline t{rec, {}};
    for (auto& [spk, on, off] : turns) t.turns.push_back({spk, on, off - on});
    return t;
}

TempDir::TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("scpna-" + tag + "-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace fixtures
