#include "fixtures.hpp"

#include "scpna/affinity.hpp"
#include "scpna/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace scpna;

namespace {

AffinityMatrix of(const std::vector<std::vector<double>>& rows) {
    return cosine_affinity(validate_embedding_set(rows, fixtures::spans(rows.size())));
}

}  // namespace

TEST(CosineAffinity, IdenticalVectorsScoreOne) {
    EXPECT_DOUBLE_EQ(of({{1, 0}, {1, 0}})(0, 1), 1.0);
}

TEST(CosineAffinity, OrthogonalVectorsScoreZero) {
    EXPECT_DOUBLE_EQ(of({{1, 0}, {0, 1}})(0, 1), 0.0);
}

TEST(CosineAffinity, FortyFiveDegrees) {
    EXPECT_NEAR(of({{1, 1}, {1, 0}})(0, 1), 1.0 / std::sqrt(2.0), 1e-9);
}

TEST(CosineAffinity, PropertySymmetricRangedZeroDiagonalAndScaleFree) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> scale(0.01, 100.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + trial % 9, d = 1 + trial % 5;
        std::vector<std::vector<double>> rows(n, std::vector<double>(d));
        for (auto& r : rows)
            for (auto& v : r) v = g(rng);
        const auto a = of(rows);
        const double c = scale(rng);
        for (auto& v : rows[trial % n]) v *= c;
        const auto b = of(rows);
        for (int i = 0; i < n; ++i) {
            EXPECT_EQ(a(i, i), 0.0);
            for (int j = 0; j < n; ++j) {
                EXPECT_LE(std::abs(a(i, j)), 1.0);
                EXPECT_NEAR(a(i, j), a(j, i), 1e-12);
                EXPECT_NEAR(a(i, j), b(i, j), 1e-9);
            }
        }
    }
}

TEST(AffinityMatrix, ValidatesInvariants) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    EXPECT_NO_THROW(AffinityMatrix{m});
    m(0, 0) = 0.5;
    EXPECT_THROW(AffinityMatrix{m}, InputError);
    m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 1) = 1.5;
    EXPECT_THROW(AffinityMatrix{m}, InputError);
    EXPECT_THROW(AffinityMatrix{Eigen::MatrixXd::Zero(2, 3)}, InputError);
}
