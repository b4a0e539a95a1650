#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scpna {

/// Default segmentation of the upstream embedding extractor.
inline constexpr double kDefaultWindowSeconds = 3.0;
inline constexpr double kDefaultHopSeconds = 1.5;

struct SegmentSpan {
    double onset = 0.0;     // seconds, >= 0
    double duration = 0.0;  // seconds, > 0
    std::string recording_id;

    double end() const { return onset + duration; }
    bool operator==(const SegmentSpan&) const = default;
};

/// N segment embeddings (rows) with their time spans. Immutable; build it
/// through validate_embedding_set().
class EmbeddingSet {
public:
    const Eigen::MatrixXd& vectors() const { return vectors_; }
    const std::vector<SegmentSpan>& spans() const { return spans_; }
    const std::string& recording_id() const { return recording_id_; }
    std::size_t size() const { return static_cast<std::size_t>(vectors_.rows()); }
    std::size_t dim() const { return static_cast<std::size_t>(vectors_.cols()); }

private:
    friend EmbeddingSet validate_embedding_set(Eigen::MatrixXd, std::vector<SegmentSpan>,
                                               std::string);
    EmbeddingSet(Eigen::MatrixXd vectors, std::vector<SegmentSpan> spans, std::string rec)
        : vectors_(std::move(vectors)), spans_(std::move(spans)), recording_id_(std::move(rec)) {}

    Eigen::MatrixXd vectors_;
    std::vector<SegmentSpan> spans_;
    std::string recording_id_;
};

/// Checks every EmbeddingSet invariant and returns the validated set.
///
/// Throws InputError when the matrix is empty or the span count differs from
/// the row count, and IngestionError (carrying the row index) for a zero-norm
/// or non-finite vector or an invalid span. An empty recording_id is taken
/// from the first span.
EmbeddingSet validate_embedding_set(Eigen::MatrixXd vectors, std::vector<SegmentSpan> spans,
                                    std::string recording_id = {});

/// Ragged-input overload; rows of unequal length are a structural error.
EmbeddingSet validate_embedding_set(const std::vector<std::vector<double>>& rows,
                                    std::vector<SegmentSpan> spans,
                                    std::string recording_id = {});

/// Cluster memberships with 1-based ids. Every id in [1, num_clusters]
/// occurs at least once.
class Labeling {
public:
    Labeling() = default;

    /// Validates ids as given.
    explicit Labeling(std::vector<int> labels);

    /// Renumbers arbitrary ids to 1..k by order of first appearance.
    static Labeling canonical(std::span<const int> raw);

    const std::vector<int>& labels() const { return labels_; }
    int num_clusters() const { return num_clusters_; }
    std::size_t size() const { return labels_.size(); }
    int operator[](std::size_t i) const { return labels_[i]; }
    bool operator==(const Labeling&) const = default;

private:
    std::vector<int> labels_;
    int num_clusters_ = 0;
};

enum class Method { csc, asc, eer_delta, sc_pna };

std::string_view to_string(Method m);
/// Accepts "csc", "asc", "eer-delta", "sc-pna". Throws InputError otherwise.
Method parse_method(std::string_view text);

/// Which quantity forms the numerator of the ASC proxy ratio.
enum class PruningFactor {
    pruned_fraction,   // 1 - alpha
    retained_fraction  // alpha
};

struct KMeansOptions {
    int restarts = 10;
    int max_iterations = 300;
    double relative_tolerance = 1e-9;
};

struct RunConfig {
    Method method = Method::sc_pna;
    double retention_p = 20.0;        // sc-pna, percent in (0, 100]
    std::optional<double> alpha;      // csc, in [0, 1]
    int k_max = 10;
    std::optional<int> fixed_k;
    std::uint64_t rng_seed = 42;
    std::vector<double> asc_grid;     // empty: default_asc_grid()
    PruningFactor asc_factor = PruningFactor::pruned_fraction;
    KMeansOptions kmeans;

    /// Throws InputError when a parameter relevant to `method` is missing or
    /// out of range. Parameters of other methods are ignored.
    void validate() const;
};

}  // namespace scpna
