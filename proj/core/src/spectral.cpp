#include "scpna/spectral.hpp"

#include "scpna/error.hpp"
#include "scpna/kmeans.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

namespace scpna {
namespace {

thread_local std::uint64_t t_decompositions = 0;

constexpr double kResidualTolerance = 1e-8;

}  // namespace

Laplacian symmetrize(const Eigen::MatrixXd& p) {
    if (p.rows() != p.cols()) throw InputError("pruned affinity must be square");
    const Eigen::Index n = p.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (p(i, i) != 0.0) throw InputError("pruned affinity must have a zero diagonal");
    }
    Laplacian lap;
    lap.w.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            lap.w(i, j) = 0.5 * (p(i, j) + p(j, i));
        }
    }
    lap.degree = lap.w.cwiseAbs().rowwise().sum();
    lap.l = -lap.w;
    lap.l.diagonal() += lap.degree;
    return lap;
}

Laplacian symmetrize(const PrunedAffinity& p) { return symmetrize(p.values); }

EigenPairs smallest_eigenpairs(const Laplacian& lap, std::size_t m) {
    const std::size_t n = lap.order();
    if (m < 1 || m > n) {
        throw InputError("requested " + std::to_string(m) + " eigenpairs of an order-" +
                         std::to_string(n) + " Laplacian");
    }
    ++t_decompositions;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap.l, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("symmetric eigensolver did not converge (n = " + std::to_string(n) +
                             ")");
    }
    const auto mm = static_cast<Eigen::Index>(m);
    EigenPairs out;
    out.values = solver.eigenvalues().head(mm);
    out.vectors = solver.eigenvectors().leftCols(mm);
    out.min_eigenvalue = solver.eigenvalues()(0);

    const double scale = lap.l.norm();
    for (Eigen::Index j = 0; j < mm; ++j) {
        const double r =
            (lap.l * out.vectors.col(j) - out.values(j) * out.vectors.col(j)).norm();
        out.max_residual = std::max(out.max_residual, r);
    }
    if (!(out.max_residual <= kResidualTolerance * scale)) {
        throw NumericalError("eigenpair residual " + std::to_string(out.max_residual) +
                             " exceeds tolerance for |L| = " + std::to_string(scale));
    }
    return out;
}

std::uint64_t eigendecompositions_performed() { return t_decompositions; }

EigengapEstimate estimate_k(std::span<const double> eigenvalues, int k_max) {
    const std::size_t m =
        std::min(eigenvalues.size(), static_cast<std::size_t>(std::max(k_max, 0)));
    if (m < 2) throw InfeasibleError("the eigengap needs at least two eigenvalues");
    EigengapEstimate out;
    out.gaps.resize(m - 1);
    for (std::size_t j = 0; j + 1 < m; ++j) out.gaps[j] = eigenvalues[j + 1] - eigenvalues[j];
    // max_element returns the first maximum, i.e. the smaller count on ties.
    const auto best = std::max_element(out.gaps.begin(), out.gaps.end());
    out.k_hat = static_cast<int>(best - out.gaps.begin()) + 1;
    return out;
}

Labeling cluster_rows(const Eigen::MatrixXd& vectors, int k, std::uint64_t seed,
                      const KMeansOptions& options) {
    if (k < 1 || k > vectors.cols()) {
        throw InputError("cannot take " + std::to_string(k) + " columns of a " +
                         std::to_string(vectors.cols()) + "-column embedding");
    }
    return lloyd_kmeans(vectors.leftCols(k), k, seed, options);
}

Labeling cluster_spectral(const Laplacian& lap, int k, std::uint64_t seed,
                          const KMeansOptions& options) {
    if (k < 1 || static_cast<std::size_t>(k) > lap.order()) {
        throw InputError("k must lie in [1, n]");
    }
    const EigenPairs pairs = smallest_eigenpairs(lap, static_cast<std::size_t>(k));
    return cluster_rows(pairs.vectors, k, seed, options);
}

}  // namespace scpna
