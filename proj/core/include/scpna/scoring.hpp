#pragma once

#include "scpna/model.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace scpna {

struct Turn {
    std::string speaker;
    double onset = 0.0;
    double duration = 0.0;

    double end() const { return onset + duration; }
    bool operator==(const Turn&) const = default;
};

/// Speaker turns of one recording. Turns may overlap.
struct Timeline {
    std::string recording_id;
    std::vector<Turn> turns;

    /// Throws InputError for a non-positive duration or a negative onset.
    void validate() const;
    /// Distinct speaker names, sorted.
    std::vector<std::string> speakers() const;
    bool operator==(const Timeline&) const = default;
};

struct DerBreakdown {
    double missed = 0.0;           // seconds
    double false_alarm = 0.0;      // seconds
    double speaker_error = 0.0;    // seconds
    double total_reference = 0.0;  // scored reference speaker-seconds
    double der = 0.0;              // (missed + false_alarm + speaker_error) / total_reference
};

/// Overlap in seconds between every reference speaker (rows, sorted names)
/// and hypothesis speaker (columns, sorted names).
Eigen::MatrixXd speaker_overlap_matrix(const Timeline& ref, const Timeline& hyp);

/// Maximum-weight one-to-one assignment of rows to columns (Hungarian
/// method on the padded square problem). Entry i is the column assigned to
/// row i, or -1.
std::vector<int> max_weight_assignment(const Eigen::MatrixXd& weights);

/// One-to-one hyp -> ref speaker mapping maximizing total overlapped time.
/// Pairs with zero overlap are left unmapped.
std::map<std::string, std::string> optimal_speaker_mapping(const Timeline& ref,
                                                           const Timeline& hyp);

/// Region-based diarization error rate.
///
/// Time is cut at every turn boundary. In each region with r reference and h
/// hypothesis speakers and c correctly mapped pairs, missed += max(0, r-h),
/// false alarm += max(0, h-r) and speaker error += min(r, h) - c, all
/// weighted by region length. Overlapped speech is scored. A positive collar
/// removes +-collar seconds around every reference boundary from scoring.
/// Throws InputError when no reference speech remains to be scored.
DerBreakdown compute_der(const Timeline& ref, const Timeline& hyp, double collar = 0.0);

/// One turn per segment named by its cluster id. With `merge`, overlapping
/// or touching turns of the same label are joined. Turns are ordered by
/// onset. Throws InputError when the sizes differ.
Timeline labels_to_timeline(const Labeling& labels, std::span<const SegmentSpan> spans,
                            bool merge, std::string recording_id = {});

}  // namespace scpna
