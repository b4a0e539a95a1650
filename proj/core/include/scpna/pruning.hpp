#pragma once

#include "scpna/affinity.hpp"
#include "scpna/kmeans.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace scpna {

enum class PruningStrategy { sc_pna, eer_delta, csc_alpha };

std::string_view to_string(PruningStrategy s);

/// Gaussian summary of the two score clusters of one row, with the
/// equal-error-rate threshold between them.
struct RowGaussianStats {
    double mu_w = 0.0;
    double sigma_w = 0.0;
    double mu_b = 0.0;
    double sigma_b = 0.0;
    double delta = 0.0;
    double eer = 0.5;
};

/// Sparse affinity P plus per-row retention bookkeeping.
struct PrunedAffinity {
    Eigen::MatrixXd values;
    std::vector<std::size_t> retained_per_row;
    /// |C_w| per row for split-based strategies; empty for csc-alpha.
    /// A degenerate row counts its whole off-diagonal as C_w.
    std::vector<std::size_t> within_cluster_size;
    /// Per-row stats; filled by eer-delta only.
    std::vector<RowGaussianStats> row_stats;
    /// Rows that could not be split in two (all off-diagonal scores equal).
    std::vector<std::size_t> degenerate_rows;
    PruningStrategy strategy = PruningStrategy::sc_pna;
    double parameter = 0.0;  // p for sc-pna, alpha for csc-alpha, unused for eer-delta

    std::size_t order() const { return static_cast<std::size_t>(values.rows()); }
};

/// Equal error rate of two Gaussians: 1/2 - 1/2 erf(F / sqrt 2) with
/// F = (mu_w - mu_b) / (sigma_w + sigma_b). Diagnostic only.
/// Throws NumericalError when sigma_w + sigma_b is not positive.
double eer_from_stats(const RowGaussianStats& stats);

/// EER threshold (mu_w sigma_b + mu_b sigma_w) / (sigma_w + sigma_b).
/// Throws NumericalError when sigma_w + sigma_b is not positive.
double delta_threshold(const RowGaussianStats& stats);

/// Population mean / std of both sides of `split`, then delta and eer.
///
/// When both sides have zero spread (a two-level row) the threshold falls
/// back to the midpoint of the two means and the EER to 0, since any cut
/// between the levels separates them perfectly.
RowGaussianStats row_gaussian_stats(std::span<const double> row, const RowSplit& split);

/// Number of C_w scores SC-pNA keeps: max(1, ceil(p/100 * cw_size)).
std::size_t retention_count(double p, std::size_t cw_size);

/// Number of off-diagonal entries CSC zeroes per row: min(floor(n(1-alpha)), n-1).
std::size_t csc_zero_count(std::size_t n, double alpha);

/// Zeroes A_ij < delta_i per row (ties kept). A row whose scores are all
/// equal is retained unchanged and listed in degenerate_rows.
PrunedAffinity prune_eer_delta(const AffinityMatrix& a);

/// Keeps, per row, the retention_count(p, |C_w|) largest scores of C_w
/// (ties to the lower column). A degenerate row keeps only its largest entry.
/// Throws InputError unless p is in (0, 100].
PrunedAffinity prune_sc_pna(const AffinityMatrix& a, double p);

/// Zeroes the csc_zero_count(n, alpha) smallest off-diagonal entries per row;
/// among equal scores the larger column index goes first.
/// Throws InputError unless alpha is in [0, 1].
PrunedAffinity prune_csc_alpha(const AffinityMatrix& a, double alpha);

}  // namespace scpna
