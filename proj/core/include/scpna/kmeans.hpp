#pragma once

#include "scpna/model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace scpna {

/// Two-way partition of one affinity row. Indices are positions in the
/// input span.
struct RowSplit {
    std::vector<std::size_t> cw_indices;  // larger-mean side
    std::vector<std::size_t> cb_indices;
    double cw_center = 0.0;
    double cb_center = 0.0;
    double sse = 0.0;  // total within-cluster sum of squared deviations
};

/// Exact 2-means of a list of scalars.
///
/// The SSE-optimal two-way partition of scalars is a threshold split of the
/// sorted values, so every boundary between distinct sorted values is
/// scanned in O(n log n). Splitting inside a run of equal values is never
/// optimal and is skipped. Among equal-SSE thresholds the lowest one wins.
///
/// Throws InputError for fewer than two values and DegenerateRowError when
/// all values are equal.
RowSplit split_row_two_clusters(std::span<const double> row);

struct KMeansResult {
    Labeling labeling;                // canonical 1-based ids
    double sse = 0.0;                 // within-cluster sum of squares
    std::vector<double> sse_history;  // per iteration, best restart
    int iterations = 0;
    int best_restart = 0;
};

/// Lloyd k-means on the rows of `points`.
///
/// Each restart r seeds by D^2-weighted sampling from Rng(seed + r); the
/// restart with the smallest SSE wins (earliest on ties). An emptied cluster
/// is reseeded at the point farthest from its center. Throws InfeasibleError
/// when there are fewer points than clusters.
KMeansResult lloyd_kmeans_detailed(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                                   const KMeansOptions& options = {});

Labeling lloyd_kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                      const KMeansOptions& options = {});

}  // namespace scpna
