#include "bench_report.hpp"

#include "scpna/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace scpna::cli {
namespace {

double parse_number(const std::string& tok) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        throw InputError("invalid grid value '" + tok + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

}  // namespace

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open manifest " + path.string());
    const auto base = path.parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp : base / fp;
    };
    std::vector<ManifestEntry> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::vector<std::string> tok;
        for (std::string t; fields >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() > 2) {
            throw ParseError(path.string(), lineno, "expected 'embeddings [reference]'");
        }
        ManifestEntry e{resolve(tok[0]), std::nullopt};
        if (tok.size() == 2) e.reference = resolve(tok[1]);
        entries.push_back(std::move(e));
    }
    return entries;
}

std::string fixed(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    return buf;
}

void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows) {
    out << "recording_id,method,parameter,k_hat,k_true,der,missed,false_alarm,speaker_error,"
           "wall_time_ms,eig_decomp_count,status\n";
    for (const auto& r : rows) {
        std::string status = r.status;
        for (char& c : status) {
            if (c == ',' || c == '\n' || c == '\r') c = ';';
        }
        out << r.recording_id << ',' << to_string(r.method) << ',' << r.parameter << ','
            << r.k_hat << ',' << (r.k_true ? std::to_string(*r.k_true) : "") << ',';
        if (r.der) {
            out << fixed(r.der->der, 6) << ',' << fixed(r.der->missed, 3) << ','
                << fixed(r.der->false_alarm, 3) << ',' << fixed(r.der->speaker_error, 3);
        } else {
            out << ",,,";
        }
        out << ',' << (r.wall_time_ms ? fixed(*r.wall_time_ms, 3) : "") << ','
            << r.eig_decomp_count << ',' << status << '\n';
    }
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw InputError("range grid must be 'start:stop:step'");
        const double a = parse_number(parts[0]);
        const double b = parse_number(parts[1]);
        const double step = parse_number(parts[2]);
        if (!(step > 0.0) || b < a) throw InputError("range grid needs step > 0 and stop >= start");
        const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9));
        for (long i = 0; i <= count; ++i) {
            // Round to 12 decimals so 0.1 * 3 prints as 0.3.
            grid.push_back(std::round((a + static_cast<double>(i) * step) * 1e12) / 1e12);
        }
    } else {
        for (const auto& tok : split(text, ',')) grid.push_back(parse_number(tok));
    }
    if (grid.empty()) throw InputError("empty grid");
    return grid;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    if (out.empty()) throw InputError("empty list '" + text + "'");
    return out;
}

}  // namespace scpna::cli
