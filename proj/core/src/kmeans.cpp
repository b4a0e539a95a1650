#include "scpna/kmeans.hpp"

#include "scpna/error.hpp"
#include "scpna/random.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace scpna {

RowSplit split_row_two_clusters(std::span<const double> row) {
    const std::size_t len = row.size();
    if (len < 2) throw InputError("a row split needs at least two values");

    std::vector<std::size_t> order(len);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return row[a] < row[b]; });
    if (row[order.front()] == row[order.back()]) {
        throw DegenerateRowError("all values in the row are equal");
    }

    // Shift by the mean so prefix sums of squares do not cancel badly.
    const double shift = std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(len);
    std::vector<double> sum(len + 1, 0.0), sq(len + 1, 0.0);
    for (std::size_t i = 0; i < len; ++i) {
        const double v = row[order[i]] - shift;
        sum[i + 1] = sum[i] + v;
        sq[i + 1] = sq[i] + v * v;
    }
    auto sse_of = [&](std::size_t lo, std::size_t hi) {
        const double cnt = static_cast<double>(hi - lo);
        const double s = sum[hi] - sum[lo];
        return std::max(0.0, (sq[hi] - sq[lo]) - s * s / cnt);
    };

    std::size_t best = 0;
    double best_sse = std::numeric_limits<double>::infinity();
    for (std::size_t s = 1; s < len; ++s) {
        if (row[order[s - 1]] == row[order[s]]) continue;
        const double total = sse_of(0, s) + sse_of(s, len);
        if (total < best_sse) {
            best_sse = total;
            best = s;
        }
    }

    RowSplit out;
    out.sse = best_sse;
    out.cb_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best));
    out.cw_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(best), order.end());
    std::sort(out.cb_indices.begin(), out.cb_indices.end());
    std::sort(out.cw_indices.begin(), out.cw_indices.end());
    out.cb_center = shift + (sum[best] - sum[0]) / static_cast<double>(best);
    out.cw_center = shift + (sum[len] - sum[best]) / static_cast<double>(len - best);
    if (!(out.cw_center > out.cb_center)) {
        throw DegenerateRowError("cluster centers tie");
    }
    return out;
}

namespace {

struct Restart {
    std::vector<int> assignment;
    double sse = std::numeric_limits<double>::infinity();
    std::vector<double> history;
    int iterations = 0;
};

Eigen::MatrixXd seed_centers(const Eigen::MatrixXd& pts, int k, Rng& rng) {
    const Eigen::Index m = pts.rows();
    Eigen::MatrixXd centers(k, pts.cols());
    std::vector<double> d2(static_cast<std::size_t>(m), std::numeric_limits<double>::infinity());
    Eigen::Index pick = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(m)));
    for (int c = 0; c < k; ++c) {
        centers.row(c) = pts.row(pick);
        double total = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
            auto& d = d2[static_cast<std::size_t>(i)];
            d = std::min(d, (pts.row(i) - centers.row(c)).squaredNorm());
            total += d;
        }
        if (c + 1 == k) break;
        if (total <= 0.0) {
            pick = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(m)));
            continue;
        }
        const double target = rng.uniform() * total;
        double acc = 0.0;
        pick = m - 1;
        for (Eigen::Index i = 0; i < m; ++i) {
            acc += d2[static_cast<std::size_t>(i)];
            if (acc > target && d2[static_cast<std::size_t>(i)] > 0.0) {
                pick = i;
                break;
            }
        }
    }
    return centers;
}

double assign(const Eigen::MatrixXd& pts, const Eigen::MatrixXd& centers,
              std::vector<int>& assignment, std::vector<double>& dist) {
    double sse = 0.0;
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
        int best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (Eigen::Index c = 0; c < centers.rows(); ++c) {
            const double d = (pts.row(i) - centers.row(c)).squaredNorm();
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(c);
            }
        }
        assignment[static_cast<std::size_t>(i)] = best;
        dist[static_cast<std::size_t>(i)] = best_d;
        sse += best_d;
    }
    return sse;
}

// Moves the farthest point into each empty cluster. If every point sits on
// its center the cluster stays empty.
void repair_empty(std::vector<int>& assignment, std::vector<double>& dist, int k) {
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (int a : assignment) ++counts[static_cast<std::size_t>(a)];
    for (int c = 0; c < k; ++c) {
        if (counts[static_cast<std::size_t>(c)] > 0) continue;
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < assignment.size(); ++i) {
            if (counts[static_cast<std::size_t>(assignment[i])] > 1 && dist[i] > far_d) {
                far_d = dist[i];
                far = i;
            }
        }
        if (far_d <= 0.0) continue;
        --counts[static_cast<std::size_t>(assignment[far])];
        assignment[far] = c;
        dist[far] = 0.0;
        ++counts[static_cast<std::size_t>(c)];
    }
}

double update_centers(const Eigen::MatrixXd& pts, const std::vector<int>& assignment,
                      Eigen::MatrixXd& centers) {
    const int k = static_cast<int>(centers.rows());
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, pts.cols());
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
        const int a = assignment[static_cast<std::size_t>(i)];
        sums.row(a) += pts.row(i);
        ++counts[static_cast<std::size_t>(a)];
    }
    for (int c = 0; c < k; ++c) {
        if (counts[static_cast<std::size_t>(c)] > 0) {
            centers.row(c) = sums.row(c) / counts[static_cast<std::size_t>(c)];
        }
    }
    double sse = 0.0;
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
        sse += (pts.row(i) - centers.row(assignment[static_cast<std::size_t>(i)])).squaredNorm();
    }
    return sse;
}

Restart run_restart(const Eigen::MatrixXd& pts, int k, std::uint64_t seed,
                    const KMeansOptions& opt) {
    Rng rng(seed);
    Eigen::MatrixXd centers = seed_centers(pts, k, rng);
    const auto m = static_cast<std::size_t>(pts.rows());
    Restart r;
    r.assignment.assign(m, -1);
    std::vector<int> next(m, 0);
    std::vector<double> dist(m, 0.0);
    for (int it = 0; it < opt.max_iterations; ++it) {
        assign(pts, centers, next, dist);
        repair_empty(next, dist, k);
        if (next == r.assignment) break;
        r.assignment = next;
        const double sse = update_centers(pts, r.assignment, centers);
        ++r.iterations;
        const bool stalled =
            !r.history.empty() && r.history.back() - sse <= opt.relative_tolerance * r.history.back();
        r.history.push_back(sse);
        r.sse = sse;
        if (stalled) break;
    }
    return r;
}

}  // namespace

KMeansResult lloyd_kmeans_detailed(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                                   const KMeansOptions& options) {
    if (k < 1) throw InputError("k must be >= 1");
    if (points.rows() < k) {
        throw InfeasibleError("cannot form " + std::to_string(k) + " clusters from " +
                              std::to_string(points.rows()) + " points");
    }
    if (!points.allFinite()) throw NumericalError("k-means input has non-finite values");

    Restart best;
    int best_index = 0;
    for (int r = 0; r < options.restarts; ++r) {
        Restart cur = run_restart(points, k, seed + static_cast<std::uint64_t>(r), options);
        if (cur.sse < best.sse) {
            best = std::move(cur);
            best_index = r;
        }
    }
    KMeansResult out;
    out.labeling = Labeling::canonical(best.assignment);
    out.sse = best.sse;
    out.sse_history = std::move(best.history);
    out.iterations = best.iterations;
    out.best_restart = best_index;
    return out;
}

Labeling lloyd_kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                      const KMeansOptions& options) {
    return lloyd_kmeans_detailed(points, k, seed, options).labeling;
}

}  // namespace scpna
