#include "scpna/affinity.hpp"
#include "scpna/error.hpp"
#include "scpna/random.hpp"
#include "scpna/synth.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace scpna;

TEST(Synth, OrthogonalNoiselessCenters) {
    SynthSpec spec;
    spec.segments_per_speaker = {4, 4, 4};
    const auto rec = generate(spec);
    const auto a = cosine_affinity(rec.embeddings);
    const auto& truth = rec.truth.labels();
    for (std::size_t i = 0; i < 12; ++i) {
        for (std::size_t j = 0; j < 12; ++j) {
            if (i == j) continue;
            EXPECT_NEAR(a(i, j), truth[i] == truth[j] ? 1.0 : 0.0, 1e-12);
        }
    }
}

TEST(Synth, ImbalancedCounts) {
    SynthSpec spec;
    spec.num_speakers = 2;
    spec.segments_per_speaker = {10, 90};
    const auto rec = generate(spec);
    EXPECT_EQ(rec.embeddings.size(), 100u);
    int minority = 0;
    for (int l : rec.truth.labels()) minority += l == 1;
    EXPECT_EQ(minority, 10);
}

TEST(Synth, DeterministicForFixedSeed) {
    SynthSpec spec;
    spec.noise_sigma = 0.2;
    spec.turn_model = TurnModel::random;
    const auto a = generate(spec);
    const auto b = generate(spec);
    EXPECT_EQ(a.embeddings.vectors(), b.embeddings.vectors());
    EXPECT_EQ(a.reference, b.reference);
    EXPECT_EQ(a.truth, b.truth);
    spec.seed += 1;
    EXPECT_NE(generate(spec).embeddings.vectors(), a.embeddings.vectors());
}

TEST(Synth, UnitNormAndLayout) {
    SynthSpec spec;
    spec.noise_sigma = 0.3;
    const auto rec = generate(spec);
    for (Eigen::Index i = 0; i < rec.embeddings.vectors().rows(); ++i) {
        EXPECT_NEAR(rec.embeddings.vectors().row(i).norm(), 1.0, 1e-9);
        EXPECT_DOUBLE_EQ(rec.embeddings.spans()[static_cast<std::size_t>(i)].onset, 1.5 * static_cast<double>(i));
        EXPECT_DOUBLE_EQ(rec.embeddings.spans()[static_cast<std::size_t>(i)].duration, 3.0);
    }
}

TEST(Synth, CentersHitTargetGram) {
    Rng rng(3);
    const double sep = 1.1;
    const auto c = make_speaker_centers(4, 8, sep, rng);
    const Eigen::MatrixXd g = c * c.transpose();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_NEAR(g(i, j), i == j ? 1.0 : std::cos(sep), 1e-12);
}

TEST(Synth, InfeasibleSeparation) {
    SynthSpec spec;
    spec.num_speakers = 5;
    spec.segments_per_speaker.assign(5, 3);
    spec.dim = 2;
    EXPECT_THROW(generate(spec), InfeasibleError);
    // Five centers at 150 degrees cannot exist in any dimension: the Gram matrix is not PSD.
    spec.dim = 32;
    spec.separation = 150.0 * std::numbers::pi / 180.0;
    EXPECT_THROW(generate(spec), InfeasibleError);
}

TEST(Synth, InvalidSpec) {
    SynthSpec spec;
    spec.segments_per_speaker = {1, 2};
    EXPECT_THROW(spec.validate(), InputError);
    spec = {};
    spec.dim = 1;
    EXPECT_THROW(spec.validate(), InputError);
}

TEST(Synth, NoiseRaisesCrossSpeakerAffinity) {
    // Mean cross-speaker cosine over 30 seeds is non-decreasing in the noise level.
    // Obtuse centers (cos = -0.5): noise pulls cross scores up toward zero.
    double previous = -1.0;
    for (double sigma : {0.0, 0.1, 0.2, 0.4, 0.8}) {
        double total = 0.0;
        int count = 0;
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            SynthSpec spec;
            spec.segments_per_speaker = {6, 6, 6};
            spec.separation = 2.0 * std::numbers::pi / 3.0;
            spec.noise_sigma = sigma;
            spec.seed = seed;
            const auto rec = generate(spec);
            const auto a = cosine_affinity(rec.embeddings);
            for (std::size_t i = 0; i < 18; ++i)
                for (std::size_t j = 0; j < 18; ++j)
                    if (rec.truth[i] != rec.truth[j]) {
                        total += a(i, j);
                        ++count;
                    }
        }
        const double mean = total / count;
        EXPECT_GE(mean, previous - 1e-3) << "sigma " << sigma;
        previous = mean;
    }
}
