#include "scpna/autotune.hpp"

#include "scpna/error.hpp"
#include "scpna/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace scpna {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_grid(std::span<const double> grid) {
    if (grid.empty()) throw InputError("parameter grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw InputError("parameter grid must be strictly increasing");
    }
}

std::vector<double> linear_grid(int first, int last, int step, double scale) {
    std::vector<double> g;
    for (int i = first; i <= last; i += step) g.push_back(i / scale);
    return g;
}

int most_common(const std::vector<int>& values) {
    std::map<int, int> counts;
    for (int v : values) ++counts[v];
    int best = 0, best_count = 0;
    for (const auto& [v, c] : counts) {
        if (c > best_count) {
            best = v;
            best_count = c;
        }
    }
    return best;
}

}  // namespace

std::vector<double> default_asc_grid() { return linear_grid(5, 95, 5, 100.0); }
std::vector<double> default_csc_grid() { return linear_grid(0, 100, 1, 100.0); }

std::size_t select_minimum(std::span<const double> objective) {
    std::size_t best = objective.size();
    for (std::size_t i = 0; i < objective.size(); ++i) {
        if (!std::isfinite(objective[i])) continue;
        if (best == objective.size() || objective[i] < objective[best]) best = i;
    }
    if (best == objective.size()) throw InfeasibleError("no viable tuning candidate");
    return best;
}

AscEvaluation evaluate_asc_candidate(const AffinityMatrix& a, double alpha, int k_max,
                                     PruningFactor factor, std::size_t eig_columns) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("ASC alpha must lie in (0, 1)");
    const std::size_t n = a.order();
    const std::size_t m = std::min(static_cast<std::size_t>(std::max(k_max, 0)), n);
    if (m < 2) throw InfeasibleError("ASC needs at least two eigenvalues");

    AscEvaluation ev;
    ev.alpha = alpha;
    ev.pruned = prune_csc_alpha(a, alpha);
    const Laplacian lap = symmetrize(ev.pruned);
    ev.eig = smallest_eigenpairs(lap, std::clamp(eig_columns, m, n));
    const std::vector<double> lambdas(ev.eig.values.data(), ev.eig.values.data() + m);
    ev.gap = estimate_k(lambdas, static_cast<int>(m));
    const double largest = lambdas.back();
    const double max_gap = *std::max_element(ev.gap.gaps.begin(), ev.gap.gaps.end());
    ev.normalized_gap = largest > 0.0 ? max_gap / largest : 0.0;
    const double numerator = factor == PruningFactor::pruned_fraction ? 1.0 - alpha : alpha;
    ev.objective = ev.normalized_gap > kAscGapEpsilon ? numerator / ev.normalized_gap : kInf;
    return ev;
}

double asc_proxy_objective(const AffinityMatrix& a, double alpha, int k_max,
                           PruningFactor factor) {
    return evaluate_asc_candidate(a, alpha, k_max, factor).objective;
}

AscSelection asc_select_detailed(const AffinityMatrix& a, std::span<const double> grid, int k_max,
                                 PruningFactor factor, std::size_t eig_columns) {
    check_grid(grid);
    const EigenDecompositionCounter counter;
    AscSelection sel;
    sel.trace.grid.assign(grid.begin(), grid.end());
    bool have_best = false;
    for (double alpha : grid) {
        AscEvaluation ev = evaluate_asc_candidate(a, alpha, k_max, factor, eig_columns);
        sel.trace.objective.push_back(ev.objective);
        sel.trace.per_candidate_k_hat.push_back(ev.gap.k_hat);
        if (std::isfinite(ev.objective) && (!have_best || ev.objective < sel.best.objective)) {
            sel.best = std::move(ev);
            have_best = true;
        }
    }
    sel.trace.chosen_index = select_minimum(sel.trace.objective);
    sel.trace.chosen = sel.trace.grid[sel.trace.chosen_index];
    sel.trace.eig_decomp_count = counter.count();
    return sel;
}

TuningTrace asc_select(const AffinityMatrix& a, std::span<const double> grid, int k_max,
                       PruningFactor factor) {
    return asc_select_detailed(a, grid, k_max, factor).trace;
}

DevSweepResult csc_dev_sweep_detailed(std::span<const DevRecording> dev,
                                      std::span<const double> grid,
                                      const DevSweepOptions& options) {
    if (dev.empty()) throw InputError("development set is empty");
    check_grid(grid);
    for (double alpha : grid) {
        if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("CSC alpha must lie in [0, 1]");
    }
    const EigenDecompositionCounter counter;

    std::vector<AffinityMatrix> affinities;
    affinities.reserve(dev.size());
    for (const auto& rec : dev) affinities.push_back(cosine_affinity(rec.embeddings));

    DevSweepResult out;
    out.trace.grid.assign(grid.begin(), grid.end());
    out.failures.resize(grid.size());
    for (std::size_t c = 0; c < grid.size(); ++c) {
        double der_sum = 0.0;
        std::size_t scored = 0;
        std::vector<int> ks;
        for (std::size_t r = 0; r < dev.size(); ++r) {
            const DevRecording& rec = dev[r];
            try {
                RunConfig cfg;
                cfg.method = Method::csc;
                cfg.alpha = grid[c];
                cfg.k_max = options.k_max;
                cfg.fixed_k = rec.known_speakers;
                cfg.rng_seed = options.seed;
                cfg.kmeans = options.kmeans;
                const SpectralResult res = run_pipeline_on_affinity(affinities[r], cfg);
                const Timeline hyp = labels_to_timeline(res.labels, rec.embeddings.spans(), true,
                                                        rec.embeddings.recording_id());
                der_sum += compute_der(rec.reference, hyp, options.collar).der;
                ks.push_back(res.k_hat);
                ++scored;
            } catch (const Error& e) {
                out.failures[c].push_back(rec.embeddings.recording_id() + ": " + e.what());
            }
        }
        out.trace.objective.push_back(scored ? der_sum / static_cast<double>(scored) : kInf);
        out.trace.per_candidate_k_hat.push_back(ks.empty() ? 0 : most_common(ks));
    }
    out.trace.chosen_index = select_minimum(out.trace.objective);
    out.trace.chosen = out.trace.grid[out.trace.chosen_index];
    out.trace.eig_decomp_count = counter.count();
    return out;
}

TuningTrace csc_dev_sweep(std::span<const DevRecording> dev, std::span<const double> grid,
                          const DevSweepOptions& options) {
    return csc_dev_sweep_detailed(dev, grid, options).trace;
}

}  // namespace scpna
