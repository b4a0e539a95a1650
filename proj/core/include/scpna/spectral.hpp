#pragma once

#include "scpna/model.hpp"
#include "scpna/pruning.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace scpna {

/// Unnormalized graph Laplacian L = D - W of the symmetrized affinity.
struct Laplacian {
    Eigen::MatrixXd w;       // (P + P^T) / 2
    Eigen::VectorXd degree;  // D_ii = sum_j |w_ij|
    Eigen::MatrixXd l;       // D - W

    std::size_t order() const { return static_cast<std::size_t>(l.rows()); }
};

/// Throws InputError unless P is square with a zero diagonal.
Laplacian symmetrize(const Eigen::MatrixXd& p);
Laplacian symmetrize(const PrunedAffinity& p);

struct EigenPairs {
    Eigen::VectorXd values;   // ascending, length M
    Eigen::MatrixXd vectors;  // n x M, orthonormal columns
    double min_eigenvalue = 0.0;  // over the whole spectrum
    double max_residual = 0.0;    // max_j |L v_j - lambda_j v_j|
};

/// The M algebraically smallest eigenpairs of L, ascending.
///
/// Uses a dense symmetric decomposition of the full matrix; each call counts
/// as one decomposition (see eigendecompositions_performed). Throws
/// InputError unless 1 <= M <= n, NumericalError if the solver fails or a
/// residual exceeds 1e-8 * |L|_F.
EigenPairs smallest_eigenpairs(const Laplacian& lap, std::size_t m);

/// Eigendecompositions run on the calling thread since it started.
std::uint64_t eigendecompositions_performed();

/// Counts decompositions on this thread between construction and count().
class EigenDecompositionCounter {
public:
    EigenDecompositionCounter() : start_(eigendecompositions_performed()) {}
    std::uint64_t count() const { return eigendecompositions_performed() - start_; }

private:
    std::uint64_t start_;
};

struct EigengapEstimate {
    std::vector<double> gaps;  // gaps[j] = lambda_{j+2} - lambda_{j+1}
    int k_hat = 1;
};

/// Eigengap vector and speaker-count estimate from ascending eigenvalues.
///
/// Only the first min(k_max, size) eigenvalues are used. k_hat is the
/// 1-based position of the largest gap, so c disconnected components give
/// k_hat = c; ties go to the smaller count. Throws InfeasibleError when
/// fewer than two eigenvalues are available.
EigengapEstimate estimate_k(std::span<const double> eigenvalues, int k_max);

/// k-means on the rows of the first k columns of `vectors`.
Labeling cluster_rows(const Eigen::MatrixXd& vectors, int k, std::uint64_t seed,
                      const KMeansOptions& options = {});

/// Decomposes L and clusters the rows of its k smallest eigenvectors.
/// Throws InputError unless 1 <= k <= n.
Labeling cluster_spectral(const Laplacian& lap, int k, std::uint64_t seed,
                          const KMeansOptions& options = {});

}  // namespace scpna
