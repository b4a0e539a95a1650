#include "scpna/pipeline.hpp"

#include "scpna/error.hpp"
#include "scpna/pruning.hpp"
#include "scpna/spectral.hpp"

#include <algorithm>
#include <limits>

namespace scpna {
namespace {

// Runs `fn`, re-raising library errors tagged with the stage name.
template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const PipelineError&) {
        throw;
    } catch (const Error& e) {
        throw PipelineError(name, e.what());
    }
}

PrunedAffinity prune(const AffinityMatrix& a, const RunConfig& cfg) {
    switch (cfg.method) {
        case Method::sc_pna: return prune_sc_pna(a, cfg.retention_p);
        case Method::eer_delta: return prune_eer_delta(a);
        case Method::csc: return prune_csc_alpha(a, *cfg.alpha);
        case Method::asc: break;
    }
    throw InputError("method has no single pruning step");
}

double method_parameter(const RunConfig& cfg) {
    switch (cfg.method) {
        case Method::sc_pna: return cfg.retention_p;
        case Method::csc: return *cfg.alpha;
        default: return std::numeric_limits<double>::quiet_NaN();
    }
}

}  // namespace

SpectralResult run_pipeline_on_affinity(const AffinityMatrix& a, const RunConfig& cfg) {
    cfg.validate();
    const std::size_t n = a.order();
    if (n == 0) throw InputError("no segments to cluster");
    if (cfg.fixed_k && static_cast<std::size_t>(*cfg.fixed_k) > n) {
        throw InputError("fixed_k exceeds the number of segments");
    }
    const EigenDecompositionCounter counter;
    const std::size_t m = std::min(static_cast<std::size_t>(cfg.k_max), n);
    const std::size_t columns =
        std::max(m, static_cast<std::size_t>(cfg.fixed_k.value_or(1)));

    SpectralResult res;
    res.method = cfg.method;
    res.parameter = method_parameter(cfg);

    EigenPairs eig;
    if (cfg.method == Method::asc) {
        const std::vector<double> grid = cfg.asc_grid.empty() ? default_asc_grid() : cfg.asc_grid;
        AscSelection sel = stage("asc", [&] {
            return asc_select_detailed(a, grid, cfg.k_max, cfg.asc_factor, columns);
        });
        res.parameter = sel.trace.chosen;
        res.tuning = std::move(sel.trace);
        res.retained_per_row = std::move(sel.best.pruned.retained_per_row);
        eig = std::move(sel.best.eig);
    } else {
        PrunedAffinity pruned = stage("prune", [&] { return prune(a, cfg); });
        const Laplacian lap = stage("laplacian", [&] { return symmetrize(pruned); });
        eig = stage("eigen", [&] { return smallest_eigenpairs(lap, columns); });
        res.retained_per_row = std::move(pruned.retained_per_row);
        res.within_cluster_size = std::move(pruned.within_cluster_size);
        res.degenerate_rows = std::move(pruned.degenerate_rows);
    }

    res.eigenvalues.assign(eig.values.data(), eig.values.data() + m);
    res.min_eigenvalue = eig.min_eigenvalue;
    res.psd_warning = eig.min_eigenvalue < kPsdWarningThreshold;
    if (m >= 2) {
        const EigengapEstimate est =
            stage("estimate", [&] { return estimate_k(res.eigenvalues, cfg.k_max); });
        res.eigengap = est.gaps;
        res.estimated_k = est.k_hat;
    }
    if (cfg.fixed_k) {
        res.k_hat = *cfg.fixed_k;
    } else if (res.estimated_k) {
        res.k_hat = *res.estimated_k;
    } else {
        throw PipelineError("estimate", "the eigengap needs at least two segments");
    }

    res.spectral_embeddings = eig.vectors.leftCols(res.k_hat);
    res.labels = stage("cluster", [&] {
        return cluster_rows(eig.vectors, res.k_hat, cfg.rng_seed, cfg.kmeans);
    });
    res.eig_decomp_count = counter.count();
    return res;
}

SpectralResult run_pipeline(const EmbeddingSet& emb, const RunConfig& cfg) {
    cfg.validate();
    const AffinityMatrix a = stage("affinity", [&] { return cosine_affinity(emb); });
    return run_pipeline_on_affinity(a, cfg);
}

}  // namespace scpna
