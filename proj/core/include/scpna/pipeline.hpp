#pragma once

#include "scpna/affinity.hpp"
#include "scpna/autotune.hpp"
#include "scpna/model.hpp"

#include <optional>
#include <vector>

namespace scpna {

/// Everything one diarization run produced.
struct SpectralResult {
    Method method = Method::sc_pna;
    double parameter = 0.0;           // p, alpha, chosen ASC alpha; NaN for eer-delta
    std::vector<double> eigenvalues;  // M = min(k_max, n) smallest, ascending
    std::vector<double> eigengap;     // M - 1 gaps
    std::optional<int> estimated_k;   // eigengap estimate, when M >= 2
    int k_hat = 1;                    // clusters used (fixed_k overrides the estimate)
    Labeling labels;
    Eigen::MatrixXd spectral_embeddings;  // n x k_hat
    std::vector<std::size_t> retained_per_row;
    std::vector<std::size_t> within_cluster_size;
    std::vector<std::size_t> degenerate_rows;
    double min_eigenvalue = 0.0;
    bool psd_warning = false;  // min eigenvalue below -1e-6
    std::uint64_t eig_decomp_count = 0;
    std::optional<TuningTrace> tuning;  // ASC only
};

/// Threshold under which a negative eigenvalue is flagged.
inline constexpr double kPsdWarningThreshold = -1e-6;

/// prune -> symmetrize -> eigendecompose -> estimate k -> cluster.
///
/// Validates `cfg` first (InputError). Failures inside a stage surface as
/// PipelineError tagged with the stage name.
SpectralResult run_pipeline_on_affinity(const AffinityMatrix& a, const RunConfig& cfg);

/// cosine_affinity followed by run_pipeline_on_affinity.
SpectralResult run_pipeline(const EmbeddingSet& emb, const RunConfig& cfg);

}  // namespace scpna
