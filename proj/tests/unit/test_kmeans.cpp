#include "oracles.hpp"

#include "scpna/error.hpp"
#include "scpna/kmeans.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <thread>

using namespace scpna;

namespace {

std::vector<double> values_at(const std::vector<double>& row, const std::vector<std::size_t>& idx) {
    std::vector<double> out;
    for (auto i : idx) out.push_back(row[i]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(SplitRow, SeparatesTwoLevels) {
    const std::vector<double> row{0.1, 0.2, 0.8, 0.9};
    const auto s = split_row_two_clusters(row);
    EXPECT_EQ(values_at(row, s.cw_indices), (std::vector<double>{0.8, 0.9}));
    EXPECT_EQ(values_at(row, s.cb_indices), (std::vector<double>{0.1, 0.2}));
    EXPECT_NEAR(s.cw_center, 0.85, 1e-12);
    EXPECT_NEAR(s.cb_center, 0.15, 1e-12);
}

TEST(SplitRow, SingleHighValue) {
    const std::vector<double> row{0.5, 0.5, 0.9};
    const auto s = split_row_two_clusters(row);
    EXPECT_EQ(s.cw_indices, (std::vector<std::size_t>{2}));
    EXPECT_EQ(s.cb_indices, (std::vector<std::size_t>{0, 1}));
}

TEST(SplitRow, ConstantRowIsDegenerate) {
    const std::vector<double> row{0.3, 0.3, 0.3};
    EXPECT_THROW(split_row_two_clusters(row), DegenerateRowError);
    const std::vector<double> one{0.3};
    EXPECT_THROW(split_row_two_clusters(one), InputError);
}

TEST(SplitRow, PropertyMatchesBruteForceAndOptimumIsContiguous) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> len(2, 12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> row(len(rng));
        for (auto& v : row) v = trial % 4 == 0 ? std::round(u(rng) * 4) / 4 : u(rng);
        if (std::all_of(row.begin(), row.end(), [&](double v) { return v == row[0]; })) continue;
        const auto s = split_row_two_clusters(row);
        const auto bf = oracle::brute_force_two_means(row);
        EXPECT_NEAR(s.sse, bf.sse, 1e-9);
        EXPECT_TRUE(bf.contiguous);
        EXPECT_GT(s.cw_center, s.cb_center);
        EXPECT_EQ(s.cw_indices.size() + s.cb_indices.size(), row.size());
        double sse = 0;
        for (auto i : s.cw_indices) sse += (row[i] - s.cw_center) * (row[i] - s.cw_center);
        for (auto i : s.cb_indices) sse += (row[i] - s.cb_center) * (row[i] - s.cb_center);
        EXPECT_NEAR(sse, bf.sse, 1e-9);
    }
}

TEST(Lloyd, TwoSeparatedPairs) {
    Eigen::MatrixXd p(4, 2);
    p << 0, 0, 10, 10, 0.1, 0, 10, 10.1;
    const auto l = lloyd_kmeans(p, 2, 3);
    EXPECT_EQ(l.labels(), (std::vector<int>{1, 2, 1, 2}));
}

TEST(Lloyd, SingleClusterAndSaturation) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Random(6, 3);
    EXPECT_EQ(lloyd_kmeans(p, 1, 0).num_clusters(), 1);
    const auto r = lloyd_kmeans_detailed(p, 6, 0);
    EXPECT_EQ(r.labeling.num_clusters(), 6);
    EXPECT_NEAR(r.sse, 0.0, 1e-20);
}

TEST(Lloyd, Infeasible) {
    EXPECT_THROW(lloyd_kmeans(Eigen::MatrixXd::Zero(2, 2), 3, 0), InfeasibleError);
}

TEST(Lloyd, SseNonIncreasingAcrossIterations) {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 40; ++trial) {
        Eigen::MatrixXd p(60, 3);
        for (int i = 0; i < 60; ++i)
            for (int j = 0; j < 3; ++j) p(i, j) = g(rng) + (i % 4) * 1.5;
        const auto r = lloyd_kmeans_detailed(p, 4, static_cast<std::uint64_t>(trial));
        for (std::size_t i = 1; i < r.sse_history.size(); ++i) {
            EXPECT_LE(r.sse_history[i], r.sse_history[i - 1] * (1 + 1e-12));
        }
    }
}

TEST(Lloyd, DeterministicAcrossRunsAndThreads) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Random(80, 4);
    const auto ref = lloyd_kmeans(p, 5, 99);
    std::vector<Labeling> got(4);
    std::vector<std::thread> ts;
    for (int t = 0; t < 4; ++t) ts.emplace_back([&, t] { got[t] = lloyd_kmeans(p, 5, 99); });
    for (auto& t : ts) t.join();
    for (const auto& l : got) EXPECT_EQ(l, ref);
}
