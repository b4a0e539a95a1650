#include "scpna/affinity.hpp"

#include "scpna/error.hpp"

#include <algorithm>

namespace scpna {

AffinityMatrix::AffinityMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
    if (values_.rows() != values_.cols()) throw InputError("affinity matrix must be square");
    if (!values_.allFinite()) throw InputError("affinity matrix has non-finite entries");
    if (values_.size() > 0 && (values_.maxCoeff() > 1.0 || values_.minCoeff() < -1.0)) {
        throw InputError("affinity entries must lie in [-1, 1]");
    }
    for (Eigen::Index i = 0; i < values_.rows(); ++i) {
        if (values_(i, i) != 0.0) throw InputError("affinity diagonal must be zero");
    }
}

AffinityMatrix cosine_affinity(const EmbeddingSet& emb) {
    const Eigen::MatrixXd unit = emb.vectors().rowwise().normalized();
    const Eigen::Index n = unit.rows();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    // Upper triangle only, mirrored, so symmetry is exact.
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double c = std::clamp(unit.row(i).dot(unit.row(j)), -1.0, 1.0);
            a(i, j) = c;
            a(j, i) = c;
        }
    }
    return AffinityMatrix(std::move(a));
}

}  // namespace scpna
