#include "scpna/model.hpp"

#include "scpna/error.hpp"

#include <cmath>
#include <unordered_map>

namespace scpna {

EmbeddingSet validate_embedding_set(Eigen::MatrixXd vectors, std::vector<SegmentSpan> spans,
                                    std::string recording_id) {
    if (vectors.rows() == 0 || vectors.cols() == 0) {
        throw InputError("embedding matrix is empty");
    }
    if (static_cast<std::size_t>(vectors.rows()) != spans.size()) {
        throw InputError("span count " + std::to_string(spans.size()) +
                         " does not match vector count " + std::to_string(vectors.rows()));
    }
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        if (!vectors.row(i).allFinite()) {
            throw IngestionError("embedding " + std::to_string(i) + " has a non-finite value", idx);
        }
        if (vectors.row(i).squaredNorm() == 0.0) {
            throw IngestionError("embedding " + std::to_string(i) + " has zero norm", idx);
        }
        const SegmentSpan& s = spans[idx];
        if (!std::isfinite(s.onset) || !std::isfinite(s.duration) || s.onset < 0.0 ||
            s.duration <= 0.0) {
            throw IngestionError("segment " + std::to_string(i) +
                                     " needs onset >= 0 and duration > 0",
                                 idx);
        }
    }
    if (recording_id.empty()) recording_id = spans.front().recording_id;
    return EmbeddingSet(std::move(vectors), std::move(spans), std::move(recording_id));
}

EmbeddingSet validate_embedding_set(const std::vector<std::vector<double>>& rows,
                                    std::vector<SegmentSpan> spans, std::string recording_id) {
    if (rows.empty() || rows.front().empty()) throw InputError("embedding matrix is empty");
    const std::size_t d = rows.front().size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != d) {
            throw InputError("row " + std::to_string(i) + " has " +
                             std::to_string(rows[i].size()) + " values, expected " +
                             std::to_string(d));
        }
        for (std::size_t j = 0; j < d; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return validate_embedding_set(std::move(m), std::move(spans), std::move(recording_id));
}

Labeling::Labeling(std::vector<int> labels) : labels_(std::move(labels)) {
    int k = 0;
    for (int id : labels_) {
        if (id < 1) throw InputError("cluster ids must be >= 1");
        k = std::max(k, id);
    }
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    for (int id : labels_) seen[static_cast<std::size_t>(id - 1)] = true;
    for (int c = 0; c < k; ++c) {
        if (!seen[static_cast<std::size_t>(c)]) {
            throw InputError("cluster id " + std::to_string(c + 1) + " is unused");
        }
    }
    num_clusters_ = k;
}

Labeling Labeling::canonical(std::span<const int> raw) {
    std::unordered_map<int, int> remap;
    std::vector<int> out;
    out.reserve(raw.size());
    for (int id : raw) {
        auto [it, inserted] = remap.try_emplace(id, static_cast<int>(remap.size()) + 1);
        out.push_back(it->second);
    }
    return Labeling(std::move(out));
}

std::string_view to_string(Method m) {
    switch (m) {
        case Method::csc: return "csc";
        case Method::asc: return "asc";
        case Method::eer_delta: return "eer-delta";
        case Method::sc_pna: return "sc-pna";
    }
    return "?";
}

Method parse_method(std::string_view text) {
    if (text == "csc") return Method::csc;
    if (text == "asc") return Method::asc;
    if (text == "eer-delta") return Method::eer_delta;
    if (text == "sc-pna") return Method::sc_pna;
    throw InputError("unknown method '" + std::string(text) + "'");
}

void RunConfig::validate() const {
    if (k_max < 2) throw InputError("k_max must be >= 2");
    if (fixed_k && *fixed_k < 1) throw InputError("fixed_k must be >= 1");
    switch (method) {
        case Method::sc_pna:
            if (!(retention_p > 0.0 && retention_p <= 100.0)) {
                throw InputError("retention p must lie in (0, 100]");
            }
            break;
        case Method::csc:
            if (!alpha) throw InputError("method csc requires alpha");
            if (!(*alpha >= 0.0 && *alpha <= 1.0)) throw InputError("alpha must lie in [0, 1]");
            break;
        case Method::asc:
            for (double a : asc_grid) {
                if (!(a > 0.0 && a < 1.0)) throw InputError("ASC grid values must lie in (0, 1)");
            }
            break;
        case Method::eer_delta:
            break;
    }
    if (kmeans.restarts < 1 || kmeans.max_iterations < 1) {
        throw InputError("k-means restarts and iteration cap must be positive");
    }
}

}  // namespace scpna
