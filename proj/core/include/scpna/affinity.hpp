#pragma once

#include "scpna/model.hpp"

namespace scpna {

/// Cosine similarity between every pair of segment embeddings, with the
/// diagonal (self-similarity) set to zero.
class AffinityMatrix {
public:
    /// Wraps an existing square matrix (e.g. a hand-built test graph).
    /// Throws InputError unless square, finite, in [-1, 1] with zero diagonal.
    explicit AffinityMatrix(Eigen::MatrixXd values);

    const Eigen::MatrixXd& values() const { return values_; }
    std::size_t order() const { return static_cast<std::size_t>(values_.rows()); }
    double operator()(std::size_t i, std::size_t j) const {
        return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

private:
    Eigen::MatrixXd values_;
};

/// A_ij = <x_i, x_j> / (|x_i| |x_j|), A_ii = 0. Exactly symmetric; entries
/// are clamped to [-1, 1] against rounding.
AffinityMatrix cosine_affinity(const EmbeddingSet& emb);

}  // namespace scpna
