#include "scpna/pruning.hpp"

#include "scpna/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace scpna {
namespace {

struct OffDiagonalRow {
    std::vector<double> values;
    std::vector<std::size_t> columns;
};

OffDiagonalRow off_diagonal(const Eigen::MatrixXd& a, std::size_t i) {
    const std::size_t n = static_cast<std::size_t>(a.rows());
    OffDiagonalRow row;
    row.values.reserve(n ? n - 1 : 0);
    row.columns.reserve(n ? n - 1 : 0);
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        row.values.push_back(a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        row.columns.push_back(j);
    }
    return row;
}

bool is_degenerate(const std::vector<double>& v) {
    if (v.size() < 2) return true;
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *lo == *hi;
}

std::pair<double, double> mean_std(std::span<const double> row,
                                   const std::vector<std::size_t>& idx) {
    double mean = 0.0;
    for (auto i : idx) mean += row[i];
    mean /= static_cast<double>(idx.size());
    double var = 0.0;
    for (auto i : idx) var += (row[i] - mean) * (row[i] - mean);
    var /= static_cast<double>(idx.size());
    return {mean, std::sqrt(var)};
}

PrunedAffinity make_result(const AffinityMatrix& a, PruningStrategy strategy, double parameter) {
    PrunedAffinity out;
    out.values = Eigen::MatrixXd::Zero(a.values().rows(), a.values().cols());
    out.retained_per_row.assign(a.order(), 0);
    out.strategy = strategy;
    out.parameter = parameter;
    return out;
}

}  // namespace

std::string_view to_string(PruningStrategy s) {
    switch (s) {
        case PruningStrategy::sc_pna: return "sc-pna";
        case PruningStrategy::eer_delta: return "eer-delta";
        case PruningStrategy::csc_alpha: return "csc-alpha";
    }
    return "?";
}

double eer_from_stats(const RowGaussianStats& s) {
    const double spread = s.sigma_w + s.sigma_b;
    if (!(spread > 0.0)) throw NumericalError("F-ratio undefined: sigma_w + sigma_b is zero");
    const double f_ratio = (s.mu_w - s.mu_b) / spread;
    return 0.5 - 0.5 * std::erf(f_ratio / std::sqrt(2.0));
}

double delta_threshold(const RowGaussianStats& s) {
    const double spread = s.sigma_w + s.sigma_b;
    if (!(spread > 0.0)) throw NumericalError("EER threshold undefined: sigma_w + sigma_b is zero");
    // Weighted mean of the two centers; w is exactly 1/2 when the sigmas match.
    const double w = s.sigma_b / spread;
    return w * s.mu_w + (1.0 - w) * s.mu_b;
}

RowGaussianStats row_gaussian_stats(std::span<const double> row, const RowSplit& split) {
    RowGaussianStats s;
    std::tie(s.mu_w, s.sigma_w) = mean_std(row, split.cw_indices);
    std::tie(s.mu_b, s.sigma_b) = mean_std(row, split.cb_indices);
    if (s.sigma_w + s.sigma_b > 0.0) {
        s.delta = delta_threshold(s);
        s.eer = eer_from_stats(s);
    } else {
        s.delta = 0.5 * (s.mu_w + s.mu_b);
        s.eer = s.mu_w > s.mu_b ? 0.0 : 0.5;
    }
    return s;
}

std::size_t retention_count(double p, std::size_t cw_size) {
    const double raw = std::ceil(p * static_cast<double>(cw_size) / 100.0);
    return std::max<std::size_t>(1, static_cast<std::size_t>(raw));
}

std::size_t csc_zero_count(std::size_t n, double alpha) {
    if (n == 0) return 0;
    // The epsilon absorbs representation error such as 5 * (1 - 0.6) = 1.9999999999999998.
    const double raw = std::floor(static_cast<double>(n) * (1.0 - alpha) + 1e-9);
    return std::min(static_cast<std::size_t>(std::max(raw, 0.0)), n - 1);
}

PrunedAffinity prune_eer_delta(const AffinityMatrix& a) {
    const std::size_t n = a.order();
    PrunedAffinity out = make_result(a, PruningStrategy::eer_delta, 0.0);
    out.within_cluster_size.assign(n, 0);
    out.row_stats.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        const OffDiagonalRow row = off_diagonal(a.values(), i);
        const auto ii = static_cast<Eigen::Index>(i);
        if (is_degenerate(row.values)) {
            for (std::size_t c : row.columns) {
                out.values(ii, static_cast<Eigen::Index>(c)) = a(i, c);
            }
            out.retained_per_row[i] = row.columns.size();
            out.within_cluster_size[i] = row.columns.size();
            out.degenerate_rows.push_back(i);
            continue;
        }
        const RowSplit split = split_row_two_clusters(row.values);
        const RowGaussianStats stats = row_gaussian_stats(row.values, split);
        out.row_stats[i] = stats;
        out.within_cluster_size[i] = split.cw_indices.size();
        std::size_t kept = 0;
        for (std::size_t k = 0; k < row.values.size(); ++k) {
            if (row.values[k] < stats.delta) continue;
            out.values(ii, static_cast<Eigen::Index>(row.columns[k])) = row.values[k];
            ++kept;
        }
        out.retained_per_row[i] = kept;
    }
    return out;
}

PrunedAffinity prune_sc_pna(const AffinityMatrix& a, double p) {
    if (!(p > 0.0 && p <= 100.0)) throw InputError("retention p must lie in (0, 100]");
    const std::size_t n = a.order();
    PrunedAffinity out = make_result(a, PruningStrategy::sc_pna, p);
    out.within_cluster_size.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const OffDiagonalRow row = off_diagonal(a.values(), i);
        const auto ii = static_cast<Eigen::Index>(i);
        if (row.values.empty()) {
            out.degenerate_rows.push_back(i);
            continue;
        }
        std::vector<std::size_t> candidates;
        std::size_t keep = 1;
        if (is_degenerate(row.values)) {
            candidates.resize(row.values.size());
            std::iota(candidates.begin(), candidates.end(), std::size_t{0});
            out.degenerate_rows.push_back(i);
        } else {
            candidates = split_row_two_clusters(row.values).cw_indices;
            keep = retention_count(p, candidates.size());
        }
        out.within_cluster_size[i] = candidates.size();
        // Positions ascend with column index, so stable_sort breaks ties low-column first.
        std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t x, std::size_t y) {
            return row.values[x] > row.values[y];
        });
        for (std::size_t k = 0; k < keep; ++k) {
            const std::size_t pos = candidates[k];
            out.values(ii, static_cast<Eigen::Index>(row.columns[pos])) = row.values[pos];
        }
        out.retained_per_row[i] = keep;
    }
    return out;
}

PrunedAffinity prune_csc_alpha(const AffinityMatrix& a, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("alpha must lie in [0, 1]");
    const std::size_t n = a.order();
    PrunedAffinity out = make_result(a, PruningStrategy::csc_alpha, alpha);
    const std::size_t zeroed = csc_zero_count(n, alpha);
    for (std::size_t i = 0; i < n; ++i) {
        OffDiagonalRow row = off_diagonal(a.values(), i);
        std::vector<std::size_t> order(row.values.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            if (row.values[x] != row.values[y]) return row.values[x] < row.values[y];
            return row.columns[x] > row.columns[y];
        });
        const auto ii = static_cast<Eigen::Index>(i);
        for (std::size_t k = zeroed; k < order.size(); ++k) {
            const std::size_t pos = order[k];
            out.values(ii, static_cast<Eigen::Index>(row.columns[pos])) = row.values[pos];
        }
        out.retained_per_row[i] = order.size() - std::min(zeroed, order.size());
    }
    return out;
}

}  // namespace scpna
