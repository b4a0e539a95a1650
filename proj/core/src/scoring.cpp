#include "scpna/scoring.hpp"

#include "scpna/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace scpna {
namespace {

using Interval = std::pair<double, double>;

std::vector<Interval> merge_intervals(std::vector<Interval> iv, bool join_touching) {
    std::sort(iv.begin(), iv.end());
    std::vector<Interval> out;
    for (const auto& x : iv) {
        const bool joins = !out.empty() && (join_touching ? x.first <= out.back().second
                                                          : x.first < out.back().second);
        if (joins) {
            out.back().second = std::max(out.back().second, x.second);
        } else {
            out.push_back(x);
        }
    }
    return out;
}

// Speaker name -> disjoint sorted intervals.
std::map<std::string, std::vector<Interval>> speaker_intervals(const Timeline& t) {
    std::map<std::string, std::vector<Interval>> raw;
    for (const auto& turn : t.turns) raw[turn.speaker].emplace_back(turn.onset, turn.end());
    for (auto& [name, iv] : raw) iv = merge_intervals(std::move(iv), true);
    return raw;
}

double overlap_seconds(const std::vector<Interval>& a, const std::vector<Interval>& b) {
    double total = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double lo = std::max(a[i].first, b[j].first);
        const double hi = std::min(a[i].second, b[j].second);
        if (hi > lo) total += hi - lo;
        if (a[i].second < b[j].second) {
            ++i;
        } else {
            ++j;
        }
    }
    return total;
}

bool active_at(const std::vector<Interval>& iv, double t) {
    auto it = std::upper_bound(iv.begin(), iv.end(), t,
                               [](double v, const Interval& x) { return v < x.first; });
    if (it == iv.begin()) return false;
    --it;
    return t < it->second;
}

}  // namespace

void Timeline::validate() const {
    for (std::size_t i = 0; i < turns.size(); ++i) {
        const Turn& t = turns[i];
        if (!std::isfinite(t.onset) || !std::isfinite(t.duration) || t.onset < 0.0 ||
            t.duration <= 0.0) {
            throw InputError("turn " + std::to_string(i) + " of '" + recording_id +
                             "' needs onset >= 0 and duration > 0");
        }
    }
}

std::vector<std::string> Timeline::speakers() const {
    std::set<std::string> names;
    for (const auto& t : turns) names.insert(t.speaker);
    return {names.begin(), names.end()};
}

Eigen::MatrixXd speaker_overlap_matrix(const Timeline& ref, const Timeline& hyp) {
    const auto r = speaker_intervals(ref);
    const auto h = speaker_intervals(hyp);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(h.size()));
    Eigen::Index i = 0;
    for (const auto& [rn, riv] : r) {
        Eigen::Index j = 0;
        for (const auto& [hn, hiv] : h) m(i, j++) = overlap_seconds(riv, hiv);
        ++i;
    }
    return m;
}

std::vector<int> max_weight_assignment(const Eigen::MatrixXd& weights) {
    const int rows = static_cast<int>(weights.rows());
    const int cols = static_cast<int>(weights.cols());
    const int n = std::max(rows, cols);
    if (n == 0) return {};
    const double top = weights.size() ? weights.maxCoeff() : 0.0;
    // Minimize top - w on the zero-padded square matrix.
    auto cost = [&](int i, int j) {
        const double w = (i < rows && j < cols) ? weights(i, j) : 0.0;
        return top - w;
    };
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0), v(u);
    std::vector<int> match(static_cast<std::size_t>(n) + 1, 0), way(match);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n) + 1, inf);
        std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            const int i0 = match[static_cast<std::size_t>(j0)];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] -
                                   v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                const auto sj = static_cast<std::size_t>(j);
                if (used[sj]) {
                    u[static_cast<std::size_t>(match[sj])] += delta;
                    v[sj] -= delta;
                } else {
                    minv[sj] -= delta;
                }
            }
            j0 = j1;
        } while (match[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> out(static_cast<std::size_t>(rows), -1);
    for (int j = 1; j <= n; ++j) {
        const int i = match[static_cast<std::size_t>(j)] - 1;
        if (i >= 0 && i < rows && j - 1 < cols) out[static_cast<std::size_t>(i)] = j - 1;
    }
    return out;
}

std::map<std::string, std::string> optimal_speaker_mapping(const Timeline& ref,
                                                           const Timeline& hyp) {
    const auto ref_names = ref.speakers();
    const auto hyp_names = hyp.speakers();
    const Eigen::MatrixXd overlap = speaker_overlap_matrix(ref, hyp);
    const auto assignment = max_weight_assignment(overlap);
    std::map<std::string, std::string> mapping;
    for (std::size_t r = 0; r < assignment.size(); ++r) {
        const int h = assignment[r];
        if (h < 0 || overlap(static_cast<Eigen::Index>(r), h) <= 0.0) continue;
        mapping.emplace(hyp_names[static_cast<std::size_t>(h)], ref_names[r]);
    }
    return mapping;
}

DerBreakdown compute_der(const Timeline& ref, const Timeline& hyp, double collar) {
    ref.validate();
    hyp.validate();
    if (!(collar >= 0.0)) throw InputError("collar must be non-negative");

    const auto ref_iv = speaker_intervals(ref);
    const auto hyp_iv = speaker_intervals(hyp);
    const auto mapping = optimal_speaker_mapping(ref, hyp);

    std::vector<Interval> no_score;
    if (collar > 0.0) {
        for (const auto& t : ref.turns) {
            no_score.emplace_back(t.onset - collar, t.onset + collar);
            no_score.emplace_back(t.end() - collar, t.end() + collar);
        }
        no_score = merge_intervals(std::move(no_score), true);
    }

    std::vector<double> cuts;
    auto add_cuts = [&](const std::vector<Interval>& iv) {
        for (const auto& [a, b] : iv) {
            cuts.push_back(a);
            cuts.push_back(b);
        }
    };
    for (const auto& [name, iv] : ref_iv) add_cuts(iv);
    for (const auto& [name, iv] : hyp_iv) add_cuts(iv);
    add_cuts(no_score);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    DerBreakdown out;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double len = cuts[k + 1] - cuts[k];
        const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
        if (len <= 0.0 || active_at(no_score, mid)) continue;
        int nref = 0, nhyp = 0, correct = 0;
        for (const auto& [name, iv] : ref_iv) nref += active_at(iv, mid);
        for (const auto& [name, iv] : hyp_iv) {
            if (!active_at(iv, mid)) continue;
            ++nhyp;
            const auto m = mapping.find(name);
            if (m != mapping.end() && active_at(ref_iv.at(m->second), mid)) ++correct;
        }
        out.total_reference += len * nref;
        out.missed += len * std::max(0, nref - nhyp);
        out.false_alarm += len * std::max(0, nhyp - nref);
        out.speaker_error += len * (std::min(nref, nhyp) - correct);
    }
    if (!(out.total_reference > 0.0)) {
        throw InputError("reference '" + ref.recording_id + "' has no scored speech");
    }
    out.der = (out.missed + out.false_alarm + out.speaker_error) / out.total_reference;
    return out;
}

Timeline labels_to_timeline(const Labeling& labels, std::span<const SegmentSpan> spans,
                            bool merge, std::string recording_id) {
    if (labels.size() != spans.size()) {
        throw InputError("label count " + std::to_string(labels.size()) +
                         " does not match segment count " + std::to_string(spans.size()));
    }
    if (recording_id.empty() && !spans.empty()) recording_id = spans.front().recording_id;
    Timeline out{std::move(recording_id), {}};
    if (!merge) {
        for (std::size_t i = 0; i < spans.size(); ++i) {
            out.turns.push_back({std::to_string(labels[i]), spans[i].onset, spans[i].duration});
        }
    } else {
        std::map<int, std::vector<Interval>> by_label;
        for (std::size_t i = 0; i < spans.size(); ++i) {
            by_label[labels[i]].emplace_back(spans[i].onset, spans[i].end());
        }
        for (auto& [label, iv] : by_label) {
            for (const auto& [a, b] : merge_intervals(std::move(iv), true)) {
                out.turns.push_back({std::to_string(label), a, b - a});
            }
        }
    }
    std::stable_sort(out.turns.begin(), out.turns.end(), [](const Turn& x, const Turn& y) {
        if (x.onset != y.onset) return x.onset < y.onset;
        return x.speaker < y.speaker;
    });
    return out;
}

}  // namespace scpna
