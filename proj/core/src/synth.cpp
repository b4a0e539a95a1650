#include "scpna/synth.hpp"

#include "scpna/error.hpp"
#include "scpna/random.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>

namespace scpna {
namespace {

constexpr double kGramTolerance = 1e-10;

// Speaker order of the conversation, one entry per segment.
std::vector<int> turn_sequence(const SynthSpec& spec, Rng& rng) {
    std::vector<int> remaining = spec.segments_per_speaker;
    std::vector<int> order;
    int total = 0;
    for (int c : remaining) total += c;
    order.reserve(static_cast<std::size_t>(total));

    if (spec.turn_model == TurnModel::round_robin) {
        while (static_cast<int>(order.size()) < total) {
            for (int s = 0; s < spec.num_speakers; ++s) {
                auto& left = remaining[static_cast<std::size_t>(s)];
                const int take = std::min(left, spec.max_turn_segments);
                order.insert(order.end(), static_cast<std::size_t>(take), s);
                left -= take;
            }
        }
        return order;
    }

    int previous = -1;
    while (static_cast<int>(order.size()) < total) {
        // Draw the next speaker weighted by remaining segments, avoiding an
        // immediate repeat unless nobody else is left.
        int pool = 0;
        for (int s = 0; s < spec.num_speakers; ++s) {
            if (s != previous) pool += remaining[static_cast<std::size_t>(s)];
        }
        int speaker = previous;
        if (pool > 0) {
            auto pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(pool)));
            for (int s = 0; s < spec.num_speakers; ++s) {
                if (s == previous) continue;
                pick -= remaining[static_cast<std::size_t>(s)];
                if (pick < 0) {
                    speaker = s;
                    break;
                }
            }
        }
        auto& left = remaining[static_cast<std::size_t>(speaker)];
        const int len = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(
                                std::min(left, spec.max_turn_segments))));
        order.insert(order.end(), static_cast<std::size_t>(len), speaker);
        left -= len;
        previous = speaker;
    }
    return order;
}

}  // namespace

std::string_view to_string(TurnModel m) {
    return m == TurnModel::round_robin ? "round-robin" : "random";
}

TurnModel parse_turn_model(std::string_view text) {
    if (text == "round-robin") return TurnModel::round_robin;
    if (text == "random") return TurnModel::random;
    throw InputError("unknown turn model '" + std::string(text) + "'");
}

void SynthSpec::validate() const {
    if (num_speakers < 1) throw InputError("need at least one speaker");
    if (segments_per_speaker.size() != static_cast<std::size_t>(num_speakers)) {
        throw InputError("segments_per_speaker needs one count per speaker");
    }
    for (int c : segments_per_speaker) {
        if (c < 1) throw InputError("every speaker needs at least one segment");
    }
    if (dim < 2) throw InputError("embedding dimension must be >= 2");
    if (!(separation >= 0.0 && separation <= std::numbers::pi)) {
        throw InputError("separation must lie in [0, pi] radians");
    }
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
        throw InputError("noise_sigma must be a finite non-negative number");
    }
    if (max_turn_segments < 1) throw InputError("turn length must be >= 1");
    if (!(window > 0.0) || !(hop > 0.0)) throw InputError("window and hop must be positive");
    if (recording_id.empty() || recording_id.find_first_of(" \t\n\r,") != std::string::npos) {
        throw InputError("recording id must be non-empty without whitespace or commas");
    }
}

Eigen::MatrixXd make_speaker_centers(int num_speakers, int dim, double separation, Rng& rng) {
    const double c = std::cos(separation);
    const Eigen::Index k = num_speakers;
    Eigen::MatrixXd gram = Eigen::MatrixXd::Constant(k, k, c);
    gram.diagonal().setOnes();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    const Eigen::VectorXd& ev = es.eigenvalues();
    if (ev.minCoeff() < -kGramTolerance) {
        throw InfeasibleError("no " + std::to_string(num_speakers) +
                              " unit vectors have pairwise cosine " + std::to_string(c));
    }
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < k; ++i) rank += ev(i) > kGramTolerance;
    if (rank > dim) {
        throw InfeasibleError(std::to_string(num_speakers) + " centers at this separation need " +
                              std::to_string(rank) + " dimensions, only " + std::to_string(dim) +
                              " available");
    }

    // gram = B B^T with B = V_r sqrt(Lambda_r).
    Eigen::MatrixXd factor(k, rank);
    Eigen::Index col = 0;
    for (Eigen::Index i = 0; i < k; ++i) {
        if (ev(i) > kGramTolerance) factor.col(col++) = es.eigenvectors().col(i) * std::sqrt(ev(i));
    }

    Eigen::MatrixXd gauss(dim, std::max<Eigen::Index>(rank, 1));
    for (Eigen::Index j = 0; j < gauss.cols(); ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) gauss(i, j) = rng.normal();
    }
    const Eigen::MatrixXd basis =
        Eigen::HouseholderQR<Eigen::MatrixXd>(gauss).householderQ() *
        Eigen::MatrixXd::Identity(dim, gauss.cols());

    Eigen::MatrixXd centers = factor * basis.leftCols(rank).transpose();
    centers.rowwise().normalize();
    return centers;
}

SynthRecording generate(const SynthSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const Eigen::MatrixXd centers =
        make_speaker_centers(spec.num_speakers, spec.dim, spec.separation, rng);
    const std::vector<int> order = turn_sequence(spec, rng);

    const auto n = static_cast<Eigen::Index>(order.size());
    Eigen::MatrixXd vectors(n, spec.dim);
    std::vector<SegmentSpan> spans;
    std::vector<int> truth;
    spans.reserve(order.size());
    truth.reserve(order.size());
    for (Eigen::Index t = 0; t < n; ++t) {
        const int s = order[static_cast<std::size_t>(t)];
        Eigen::RowVectorXd x = centers.row(s);
        if (spec.noise_sigma > 0.0) {
            for (Eigen::Index j = 0; j < x.size(); ++j) x(j) += spec.noise_sigma * rng.normal();
        }
        if (x.squaredNorm() == 0.0) x = centers.row(s);
        vectors.row(t) = x.normalized();
        spans.push_back({static_cast<double>(t) * spec.hop, spec.window, spec.recording_id});
        truth.push_back(s + 1);
    }

    Labeling labels(std::move(truth));
    Timeline reference = labels_to_timeline(labels, spans, true, spec.recording_id);
    return {validate_embedding_set(std::move(vectors), std::move(spans), spec.recording_id),
            std::move(reference), std::move(labels)};
}

}  // namespace scpna
