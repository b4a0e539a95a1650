#include "scpna/embedding_io.hpp"

#include "scpna/error.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace scpna {
namespace {

constexpr std::string_view kTextMagic = "# scpna-embeddings v1";
constexpr std::array<char, 8> kBinaryMagic = {'S', 'C', 'P', 'N', 'A', 'E', 'M', 'B'};
constexpr std::uint32_t kBinaryVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "binary embedding format assumes a little-endian host");

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_double(std::string_view tok, const std::string& file, std::size_t line) {
    double v = 0.0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    if (!tok.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || tok.empty()) {
        throw ParseError(file, line, "expected a number, got '" + std::string(tok) + "'");
    }
    return v;
}

std::uint64_t parse_count(std::string_view tok, const std::string& file, std::size_t line) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
        throw ParseError(file, line, "expected a non-negative integer, got '" +
                                         std::string(tok) + "'");
    }
    return v;
}

// Reads the next line that is neither blank nor a comment.
bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        return true;
    }
    return false;
}

std::vector<SegmentSpan> read_segments(const std::filesystem::path& path,
                                       const std::string& recording_id) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open segments file " + path.string());
    const std::string file = path.string();
    std::string line;
    std::size_t lineno = 0;
    if (!next_content_line(in, line, lineno)) throw ParseError(file, lineno, "missing header");
    const auto header = split_commas(line);
    if (header.size() != 2 || header[0] != "onset" || header[1] != "duration") {
        throw ParseError(file, lineno, "header must be 'onset,duration'");
    }
    std::vector<SegmentSpan> spans;
    while (next_content_line(in, line, lineno)) {
        const auto f = split_commas(line);
        if (f.size() != 2) throw ParseError(file, lineno, "expected 2 fields");
        spans.push_back({parse_double(f[0], file, lineno), parse_double(f[1], file, lineno),
                         recording_id});
    }
    return spans;
}

void write_segments(const std::filesystem::path& path, const EmbeddingSet& emb) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << "onset,duration\n";
    for (const auto& s : emb.spans()) {
        out << format_double(s.onset) << ',' << format_double(s.duration) << '\n';
    }
}

bool is_binary(const std::filesystem::path& p) { return p.extension() == ".bin"; }

EmbeddingSet read_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open embedding file " + path.string());
    const std::string file = path.string();
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line) || trim(line) != kTextMagic) {
        throw ParseError(file, 1, "missing '" + std::string(kTextMagic) + "' signature");
    }
    lineno = 1;
    if (!next_content_line(in, line, lineno)) throw ParseError(file, lineno, "missing header");
    const auto header = split_commas(line);
    if (header.size() != 3 || header[0] != "n" || header[1] != "d" || header[2] != "recording_id") {
        throw ParseError(file, lineno, "header must be 'n,d,recording_id'");
    }
    if (!next_content_line(in, line, lineno)) throw ParseError(file, lineno, "missing n,d row");
    const auto meta = split_commas(line);
    if (meta.size() != 3) throw ParseError(file, lineno, "expected n,d,recording_id");
    const auto n = parse_count(meta[0], file, lineno);
    const auto d = parse_count(meta[1], file, lineno);
    const std::string rec(meta[2]);

    Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (std::uint64_t i = 0; i < n; ++i) {
        if (!next_content_line(in, line, lineno)) {
            throw ParseError(file, lineno, "expected " + std::to_string(n) + " rows, found " +
                                               std::to_string(i));
        }
        const auto f = split_commas(line);
        if (f.size() != d) {
            throw ParseError(file, lineno, "expected " + std::to_string(d) + " values, found " +
                                               std::to_string(f.size()));
        }
        for (std::uint64_t j = 0; j < d; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                parse_double(f[j], file, lineno);
        }
    }
    if (next_content_line(in, line, lineno)) {
        throw ParseError(file, lineno, "trailing data after " + std::to_string(n) + " rows");
    }
    auto spans = read_segments(segments_path_for(path), rec);
    return validate_embedding_set(std::move(m), std::move(spans), rec);
}

template <typename T>
void read_pod(std::istream& in, T& v, const std::string& file) {
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw InputError(file + ": truncated binary embedding file");
}

template <typename T>
void write_pod(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

EmbeddingSet read_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open embedding file " + path.string());
    const std::string file = path.string();
    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kBinaryMagic) throw InputError(file + ": not an scpna binary embedding file");
    std::uint32_t version = 0;
    read_pod(in, version, file);
    if (version != kBinaryVersion) {
        throw InputError(file + ": unsupported version " + std::to_string(version));
    }
    std::uint64_t n = 0, d = 0;
    std::uint32_t id_len = 0;
    read_pod(in, n, file);
    read_pod(in, d, file);
    read_pod(in, id_len, file);
    std::string rec(id_len, '\0');
    in.read(rec.data(), id_len);
    if (!in) throw InputError(file + ": truncated recording id");
    if (n == 0 || d == 0 || n > (std::uint64_t{1} << 32) || d > (std::uint64_t{1} << 24)) {
        throw InputError(file + ": implausible dimensions");
    }
    // Eigen default storage is column-major; fill through a row-major map.
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm(
        static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    in.read(reinterpret_cast<char*>(rm.data()),
            static_cast<std::streamsize>(n * d * sizeof(double)));
    if (!in) throw InputError(file + ": truncated matrix data");
    in.peek();
    if (!in.eof()) throw InputError(file + ": trailing bytes after matrix data");
    auto spans = read_segments(segments_path_for(path), rec);
    return validate_embedding_set(Eigen::MatrixXd(rm), std::move(spans), rec);
}

void write_text(const std::filesystem::path& path, const EmbeddingSet& emb) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << kTextMagic << '\n' << "n,d,recording_id\n";
    out << emb.size() << ',' << emb.dim() << ',' << emb.recording_id() << '\n';
    write_matrix_csv(out, emb.vectors());
}

void write_binary(const std::filesystem::path& path, const EmbeddingSet& emb) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out.write(kBinaryMagic.data(), kBinaryMagic.size());
    write_pod(out, kBinaryVersion);
    write_pod(out, static_cast<std::uint64_t>(emb.size()));
    write_pod(out, static_cast<std::uint64_t>(emb.dim()));
    write_pod(out, static_cast<std::uint32_t>(emb.recording_id().size()));
    out.write(emb.recording_id().data(), static_cast<std::streamsize>(emb.recording_id().size()));
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm =
        emb.vectors();
    out.write(reinterpret_cast<const char*>(rm.data()),
              static_cast<std::streamsize>(rm.size() * sizeof(double)));
}

}  // namespace

std::filesystem::path segments_path_for(const std::filesystem::path& embedding_path) {
    auto p = embedding_path;
    p.replace_extension(".segments.csv");
    return p;
}

EmbeddingSet read_embedding_file(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw InputError("no such file: " + path.string());
    return is_binary(path) ? read_binary(path) : read_text(path);
}

void write_embedding_file(const std::filesystem::path& path, const EmbeddingSet& emb) {
    if (emb.recording_id().find_first_of(",\n\r") != std::string::npos) {
        throw InputError("recording id must not contain commas or newlines");
    }
    if (is_binary(path)) {
        write_binary(path, emb);
    } else {
        write_text(path, emb);
    }
    write_segments(segments_path_for(path), emb);
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

std::string format_double(double value) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

}  // namespace scpna
