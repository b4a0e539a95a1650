#pragma once

#include "scpna/affinity.hpp"
#include "scpna/model.hpp"
#include "scpna/pruning.hpp"
#include "scpna/scoring.hpp"
#include "scpna/spectral.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scpna {

/// Record of a parameter search: one objective per grid value.
struct TuningTrace {
    std::vector<double> grid;             // strictly increasing
    std::vector<double> objective;        // +inf marks a dropped candidate
    std::vector<int> per_candidate_k_hat; // 0 when unavailable
    double chosen = 0.0;
    std::size_t chosen_index = 0;
    std::uint64_t eig_decomp_count = 0;
};

/// 0.05, 0.10, ..., 0.95.
std::vector<double> default_asc_grid();
/// 0.00, 0.01, ..., 1.00.
std::vector<double> default_csc_grid();

/// Index of the smallest finite objective, earliest on ties.
/// Throws InfeasibleError when every objective is infinite or NaN.
std::size_t select_minimum(std::span<const double> objective);

/// Everything computed for one ASC candidate.
struct AscEvaluation {
    double alpha = 0.0;
    double objective = 0.0;
    double normalized_gap = 0.0;  // max eigengap / largest computed eigenvalue
    PrunedAffinity pruned;
    EigenPairs eig;
    EigengapEstimate gap;
};

/// Guard below which the normalized eigengap counts as zero.
inline constexpr double kAscGapEpsilon = 1e-12;

/// Prunes at rate alpha, decomposes the Laplacian once and scores
/// factor / g, where g is the largest gap among the M = min(k_max, n)
/// smallest eigenvalues divided by the largest of them, and factor is
/// 1 - alpha (pruned fraction) or alpha. g <= kAscGapEpsilon gives +inf.
/// `eig_columns` (>= M, <= n) eigenvectors are kept for the final clustering.
AscEvaluation evaluate_asc_candidate(const AffinityMatrix& a, double alpha, int k_max,
                                     PruningFactor factor = PruningFactor::pruned_fraction,
                                     std::size_t eig_columns = 0);

/// The ASC proxy objective of a single pruning rate, alpha in (0, 1).
double asc_proxy_objective(const AffinityMatrix& a, double alpha, int k_max,
                           PruningFactor factor = PruningFactor::pruned_fraction);

struct AscSelection {
    TuningTrace trace;
    AscEvaluation best;
};

/// Evaluates every grid point (one decomposition each) and keeps the
/// minimizer. Throws InputError for an empty or non-increasing grid and
/// InfeasibleError when no candidate has a finite objective.
AscSelection asc_select_detailed(const AffinityMatrix& a, std::span<const double> grid, int k_max,
                                 PruningFactor factor = PruningFactor::pruned_fraction,
                                 std::size_t eig_columns = 0);

TuningTrace asc_select(const AffinityMatrix& a, std::span<const double> grid, int k_max,
                       PruningFactor factor = PruningFactor::pruned_fraction);

/// A labeled development recording for the CSC sweep.
struct DevRecording {
    EmbeddingSet embeddings;
    Timeline reference;
    std::optional<int> known_speakers;  // clusters with fixed k when set
};

struct DevSweepOptions {
    int k_max = 10;
    std::uint64_t seed = 42;
    double collar = 0.0;
    KMeansOptions kmeans;
};

struct DevSweepResult {
    TuningTrace trace;  // objective = mean DER over recordings that succeeded
    /// failures[c] lists "recording: message" for candidate c.
    std::vector<std::vector<std::string>> failures;
};

/// Diarizes every dev recording with CSC at each alpha and scores true DER.
/// per_candidate_k_hat holds the most common speaker count across
/// recordings (smaller on ties). A candidate is dropped (+inf) only when all
/// recordings fail. Throws InfeasibleError when every candidate is dropped.
DevSweepResult csc_dev_sweep_detailed(std::span<const DevRecording> dev,
                                      std::span<const double> grid,
                                      const DevSweepOptions& options = {});

TuningTrace csc_dev_sweep(std::span<const DevRecording> dev, std::span<const double> grid,
                          const DevSweepOptions& options = {});

}  // namespace scpna
