#include "fixtures.hpp"

#include "scpna/error.hpp"
#include "scpna/model.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace scpna;
using Rows = std::vector<std::vector<double>>;

TEST(EmbeddingSet, FourUnitVectorsGiveFourRows) {
    const auto emb = validate_embedding_set(Rows{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, fixtures::spans(4, "r"));
    EXPECT_EQ(emb.size(), 4u);
    EXPECT_EQ(emb.dim(), 2u);
    EXPECT_EQ(emb.recording_id(), "r");
}

TEST(EmbeddingSet, ZeroVectorIsRejectedAtItsIndex) {
    try {
        validate_embedding_set(Rows{{1, 0}, {0, 1}, {0, 0}}, fixtures::spans(3));
        FAIL() << "expected IngestionError";
    } catch (const IngestionError& e) {
        EXPECT_EQ(e.index(), 2u);
    }
}

TEST(EmbeddingSet, CountMismatchIsStructuralError) {
    EXPECT_THROW(validate_embedding_set(Rows{{1, 0}, {0, 1}, {1, 1}}, fixtures::spans(2)),
                 InputError);
}

TEST(EmbeddingSet, RejectsNonFiniteAndBadSpans) {
    EXPECT_THROW(validate_embedding_set(Rows{{1, NAN}}, fixtures::spans(1)), IngestionError);
    EXPECT_THROW(validate_embedding_set(Rows{{1, 0}}, {{-1.0, 3.0, "r"}}), IngestionError);
    EXPECT_THROW(validate_embedding_set(Rows{{1, 0}}, {{0.0, 0.0, "r"}}), IngestionError);
    EXPECT_THROW(validate_embedding_set(Rows{{1, 0}, {1}}, fixtures::spans(2)), InputError);
    EXPECT_THROW(validate_embedding_set(Rows{}, {}), InputError);
}

TEST(EmbeddingSet, PropertyAcceptsExactlyValidInputs) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> dim(1, 6), count(1, 12), pick(0, 3);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = count(rng), d = dim(rng);
        std::vector<std::vector<double>> rows(n, std::vector<double>(d));
        for (auto& r : rows)
            for (auto& v : r) v = g(rng);
        auto sp = fixtures::spans(static_cast<std::size_t>(n));
        const int defect = pick(rng);  // 0: none, 1: zero row, 2: inf, 3: bad duration
        const int where = std::uniform_int_distribution<int>(0, n - 1)(rng);
        if (defect == 1) std::fill(rows[where].begin(), rows[where].end(), 0.0);
        if (defect == 2) rows[where][0] = INFINITY;
        if (defect == 3) sp[where].duration = -1.0;
        if (defect == 0) {
            EXPECT_NO_THROW(validate_embedding_set(rows, sp));
        } else {
            try {
                validate_embedding_set(rows, sp);
                ADD_FAILURE() << "defect " << defect << " accepted";
            } catch (const IngestionError& e) {
                EXPECT_EQ(e.index(), static_cast<std::size_t>(where));
            }
        }
    }
}

TEST(Labeling, RequiresContiguousPositiveIds) {
    EXPECT_EQ(Labeling({1, 2, 1}).num_clusters(), 2);
    EXPECT_THROW(Labeling({0, 1}), InputError);
    EXPECT_THROW(Labeling({1, 3}), InputError);
}

TEST(Labeling, CanonicalRenumbersByFirstAppearance) {
    const std::vector<int> raw{7, 7, 3, 9, 3};
    EXPECT_EQ(Labeling::canonical(raw).labels(), (std::vector<int>{1, 1, 2, 3, 2}));
}

TEST(Method, NamesRoundTrip) {
    for (Method m : {Method::csc, Method::asc, Method::eer_delta, Method::sc_pna}) {
        EXPECT_EQ(parse_method(to_string(m)), m);
    }
    EXPECT_THROW(parse_method("kmeans"), InputError);
}

TEST(RunConfig, Validation) {
    RunConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.retention_p = 0;
    EXPECT_THROW(cfg.validate(), InputError);
    cfg = {};
    cfg.method = Method::csc;
    EXPECT_THROW(cfg.validate(), InputError);
    cfg.alpha = 0.6;
    EXPECT_NO_THROW(cfg.validate());
    cfg.alpha = 1.5;
    EXPECT_THROW(cfg.validate(), InputError);
    cfg = {};
    cfg.k_max = 1;
    EXPECT_THROW(cfg.validate(), InputError);
    cfg = {};
    cfg.method = Method::asc;
    cfg.asc_grid = {0.0, 0.5};
    EXPECT_THROW(cfg.validate(), InputError);
}
