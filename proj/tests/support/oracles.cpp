#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace oracle {

std::vector<double> jacobi_eigenvalues(const Eigen::MatrixXd& symmetric) {
    const int n = static_cast<int>(symmetric.rows());
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = symmetric(i, j);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = a[i][i];
    std::sort(out.begin(), out.end());
    return out;
}

Partition brute_force_two_means(const std::vector<double>& row) {
    const int n = static_cast<int>(row.size());
    if (n < 2 || n > 20) throw std::invalid_argument("brute force needs 2..20 values");
    Partition best;
    best.sse = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        double s0 = 0, s1 = 0;
        int c0 = 0, c1 = 0;
        for (int i = 0; i < n; ++i) {
            if (mask >> i & 1u) {
                s1 += row[i];
                ++c1;
            } else {
                s0 += row[i];
                ++c0;
            }
        }
        const double m0 = s0 / c0, m1 = s1 / c1;
        double sse = 0;
        for (int i = 0; i < n; ++i) {
            const double d = row[i] - ((mask >> i & 1u) ? m1 : m0);
            sse += d * d;
        }
        if (sse < best.sse) {
            best.sse = sse;
            best.in_high.assign(n, false);
            for (int i = 0; i < n; ++i) best.in_high[i] = ((mask >> i & 1u) != 0) == (m1 > m0);
        }
    }
    double lo_high = std::numeric_limits<double>::infinity();
    double hi_low = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        if (best.in_high[i]) lo_high = std::min(lo_high, row[i]);
        else hi_low = std::max(hi_low, row[i]);
    }
    best.contiguous = hi_low <= lo_high;
    return best;
}

namespace {

double gaussian_pdf(double x, double mu, double sigma) {
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * 3.14159265358979323846));
}

double simpson(double a, double b, int intervals, double mu, double sigma) {
    if (intervals % 2) ++intervals;
    const double h = (b - a) / intervals;
    double s = gaussian_pdf(a, mu, sigma) + gaussian_pdf(b, mu, sigma);
    for (int i = 1; i < intervals; ++i) {
        s += (i % 2 ? 4.0 : 2.0) * gaussian_pdf(a + i * h, mu, sigma);
    }
    return s * h / 3.0;
}

}  // namespace

double integrated_cdf(double x, double mu, double sigma) {
    // Integrate from 12 sigma below the mean; the neglected tail is < 1e-30.
    const double lo = mu - 12.0 * sigma;
    if (x <= lo) return 0.0;
    return simpson(lo, x, 4000, mu, sigma);
}

double numerical_eer(double mu_w, double sigma_w, double mu_b, double sigma_b) {
    // False rejection of within scores below t, false acceptance of between scores above t.
    auto frr = [&](double t) { return integrated_cdf(t, mu_w, sigma_w); };
    auto far = [&](double t) { return 1.0 - integrated_cdf(t, mu_b, sigma_b); };
    double lo = std::min(mu_w, mu_b) - 12.0 * std::max(sigma_w, sigma_b);
    double hi = std::max(mu_w, mu_b) + 12.0 * std::max(sigma_w, sigma_b);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (frr(mid) < far(mid)) lo = mid;
        else hi = mid;
    }
    const double t = 0.5 * (lo + hi);
    return 0.5 * (frr(t) + far(t));
}

double hand_delta(double mu_w, double sigma_w, double mu_b, double sigma_b) {
    return (mu_w * sigma_b + mu_b * sigma_w) / (sigma_w + sigma_b);
}

double brute_force_assignment(const Eigen::MatrixXd& weights) {
    const int n = static_cast<int>(std::max(weights.rows(), weights.cols()));
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = -std::numeric_limits<double>::infinity();
    do {
        double v = 0;
        for (int i = 0; i < n; ++i) {
            if (i < weights.rows() && perm[i] < weights.cols()) v += weights(i, perm[i]);
        }
        best = std::max(best, v);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

Eigen::MatrixXd laplacian_of(const Eigen::MatrixXd& w) {
    const auto n = w.rows();
    Eigen::MatrixXd l = -w;
    for (Eigen::Index i = 0; i < n; ++i) {
        double d = 0;
        for (Eigen::Index j = 0; j < n; ++j) d += std::abs(w(i, j));
        l(i, i) = d - w(i, i);
    }
    return l;
}

Eigen::MatrixXd random_block_graph(const std::vector<int>& sizes, std::mt19937_64& rng) {
    const int n = std::accumulate(sizes.begin(), sizes.end(), 0);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    std::uniform_real_distribution<double> weight(0.1, 1.0);
    std::bernoulli_distribution extra(0.4);
    int start = 0;
    for (int size : sizes) {
        std::vector<int> order(size);
        std::iota(order.begin(), order.end(), start);
        std::shuffle(order.begin(), order.end(), rng);
        for (int i = 0; i + 1 < size; ++i) {
            const double v = weight(rng);
            w(order[i], order[i + 1]) = v;
            w(order[i + 1], order[i]) = v;
        }
        for (int i = start; i < start + size; ++i) {
            for (int j = i + 1; j < start + size; ++j) {
                if (w(i, j) == 0.0 && extra(rng)) {
                    const double v = weight(rng);
                    w(i, j) = v;
                    w(j, i) = v;
                }
            }
        }
        start += size;
    }
    return w;
}

Eigen::MatrixXd random_affinity(int n, double lo, double hi, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(lo, hi);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            a(i, j) = u(rng);
            a(j, i) = a(i, j);
        }
    }
    return a;
}

double permutation_accuracy(const std::vector<int>& truth, const std::vector<int>& labels) {
    if (truth.size() != labels.size()) throw std::invalid_argument("size mismatch");
    std::map<int, int> tid, lid;
    for (int t : truth) tid.emplace(t, static_cast<int>(tid.size()));
    for (int l : labels) lid.emplace(l, static_cast<int>(lid.size()));
    Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(lid.size()),
                                                   static_cast<Eigen::Index>(tid.size()));
    for (std::size_t i = 0; i < truth.size(); ++i) counts(lid[labels[i]], tid[truth[i]]) += 1;
    return brute_force_assignment(counts) / static_cast<double>(truth.size());
}

}  // namespace oracle

namespace oracle {

namespace {

std::vector<std::pair<double, double>> merged(const scpna::Timeline& t, const std::string& spk) {
    std::vector<std::pair<double, double>> iv;
    for (const auto& turn : t.turns)
        if (turn.speaker == spk) iv.emplace_back(turn.onset, turn.end());
    std::sort(iv.begin(), iv.end());
    std::vector<std::pair<double, double>> out;
    for (const auto& [s, e] : iv) {
        if (!out.empty() && s <= out.back().second) out.back().second = std::max(out.back().second, e);
        else out.emplace_back(s, e);
    }
    return out;
}

}  // namespace

double speaker_overlap(const scpna::Timeline& ref, const std::string& a,
                       const scpna::Timeline& hyp, const std::string& b) {
    double total = 0;
    for (const auto& [s1, e1] : merged(ref, a))
        for (const auto& [s2, e2] : merged(hyp, b)) total += std::max(0.0, std::min(e1, e2) - std::max(s1, s2));
    return total;
}

}  // namespace oracle
