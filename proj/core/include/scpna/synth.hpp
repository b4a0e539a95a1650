#pragma once

#include "scpna/model.hpp"
#include "scpna/random.hpp"
#include "scpna/scoring.hpp"

#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace scpna {

enum class TurnModel { round_robin, random };

std::string_view to_string(TurnModel m);
/// Accepts "round-robin" and "random".
TurnModel parse_turn_model(std::string_view text);

/// Recipe for a synthetic conversation with known speakers.
struct SynthSpec {
    int num_speakers = 3;
    std::vector<int> segments_per_speaker{20, 20, 20};
    int dim = 32;
    double separation = std::numbers::pi / 2;  // pairwise angle between centers, radians
    double noise_sigma = 0.0;                  // per-coordinate Gaussian noise
    std::uint64_t seed = 42;
    TurnModel turn_model = TurnModel::round_robin;
    int max_turn_segments = 3;  // segments per turn (round-robin), upper bound (random)
    double window = kDefaultWindowSeconds;
    double hop = kDefaultHopSeconds;
    std::string recording_id = "synth";

    /// Throws InputError for out-of-range fields.
    void validate() const;
};

struct SynthRecording {
    EmbeddingSet embeddings;
    Timeline reference;
    Labeling truth;  // speaker s has id s + 1
};

/// Unit-norm speaker centers whose pairwise cosine is cos(separation).
///
/// The target Gram matrix (1 - c) I + c 11^T is factored and embedded in
/// `dim` dimensions through a random orthonormal basis. Throws
/// InfeasibleError when the Gram matrix is not positive semi-definite or its
/// rank exceeds `dim`.
Eigen::MatrixXd make_speaker_centers(int num_speakers, int dim, double separation, Rng& rng);

/// Embeddings normalize(center + N(0, noise_sigma^2 I)) laid out on
/// consecutive windows (onset t * hop, length window) in turn order; the
/// reference timeline merges each speaker's windows. Deterministic in seed.
SynthRecording generate(const SynthSpec& spec);

}  // namespace scpna
