#include "cli.hpp"

#include "bench_report.hpp"

#include "scpna/affinity.hpp"
#include "scpna/autotune.hpp"
#include "scpna/embedding_io.hpp"
#include "scpna/error.hpp"
#include "scpna/pipeline.hpp"
#include "scpna/rttm.hpp"
#include "scpna/synth.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <ostream>
#include <thread>

namespace scpna::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommonFlags {
    std::string out_dir = ".";
    std::uint64_t seed = 42;
    int k_max = 10;
};

struct DiarizeFlags {
    std::string input;
    std::string method = "sc-pna";
    double p = 20.0;
    std::optional<double> alpha;
    std::optional<int> fixed_k;
    std::string asc_grid;
    std::string asc_factor = "pruned";
    bool no_merge = false;
    bool dump_affinity = false;
    bool dump_retention = false;
};

struct ScoreFlags {
    std::string reference;
    std::string hypothesis;
    double collar = 0.0;
};

struct BenchFlags {
    std::string manifest;
    std::string methods = "sc-pna,eer-delta,asc";
    std::string p_grid = "20";
    std::string alpha_grid = "0.1:0.9:0.1";
    std::string asc_grid;
    bool csc_known_k = false;
    double collar = 0.0;
    int jobs = 1;
    bool timing = false;
};

struct SynthFlags {
    int speakers = 3;
    std::string segments = "20";
    int dim = 32;
    std::string separation = "90deg";
    double noise = 0.1;
    std::string turn_model = "round-robin";
    int turn_length = 3;
    std::string name = "synth";
    bool binary = false;
};

struct TuneFlags {
    std::string manifest;
    std::string alpha_grid = "0:1:0.01";
    bool known_k = false;
    double collar = 0.0;
};

void add_common(CLI::App* app, CommonFlags& f) {
    app->add_option("--out", f.out_dir, "Output directory")->envname("SCPNA_OUT");
    app->add_option("--seed", f.seed, "RNG seed")->envname("SCPNA_SEED");
    app->add_option("--k-max", f.k_max, "Maximum number of speakers")
        ->envname("SCPNA_K_MAX")
        ->check(CLI::Range(2, 1000000));
}

fs::path ensure_dir(const std::string& dir) {
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw InputError("cannot create output directory " + dir + ": " + ec.message());
    return p;
}

std::string format_parameter(Method m, double value) {
    if (m == Method::eer_delta || std::isnan(value)) return "";
    return format_double(value);
}

PruningFactor parse_factor(const std::string& s) {
    if (s == "pruned") return PruningFactor::pruned_fraction;
    if (s == "retained") return PruningFactor::retained_fraction;
    throw InputError("--asc-factor must be 'pruned' or 'retained'");
}

double parse_angle(const std::string& text) {
    std::string num = text;
    double scale = std::numbers::pi / 180.0;
    if (num.ends_with("deg")) {
        num.resize(num.size() - 3);
    } else if (num.ends_with("rad")) {
        num.resize(num.size() - 3);
        scale = 1.0;
    }
    const auto grid = parse_grid(num);
    if (grid.size() != 1) throw InputError("invalid angle '" + text + "'");
    return grid.front() * scale;
}

std::vector<int> parse_counts(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_grid(text)) {
        if (v < 1 || v != std::floor(v)) throw InputError("segment counts must be positive integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

json diagnostics_json(const EmbeddingSet& emb, const SpectralResult& r) {
    json j;
    j["recording_id"] = emb.recording_id();
    j["method"] = std::string(to_string(r.method));
    j["parameter"] = std::isnan(r.parameter) ? json(nullptr) : json(r.parameter);
    j["n"] = emb.size();
    j["k_hat"] = r.k_hat;
    j["estimated_k"] = r.estimated_k ? json(*r.estimated_k) : json(nullptr);
    j["eigenvalues"] = r.eigenvalues;
    j["eigengap"] = r.eigengap;
    j["min_eigenvalue"] = r.min_eigenvalue;
    j["psd_warning"] = r.psd_warning;
    j["eig_decomp_count"] = r.eig_decomp_count;
    j["retained_per_row"] = r.retained_per_row;
    j["within_cluster_size"] = r.within_cluster_size;
    j["degenerate_rows"] = r.degenerate_rows;
    std::size_t kept = 0;
    for (auto c : r.retained_per_row) kept += c;
    const double off_diag = static_cast<double>(emb.size()) * static_cast<double>(emb.size() - 1);
    j["sparsity"] = {{"retained_entries", kept},
                     {"density", off_diag > 0 ? static_cast<double>(kept) / off_diag : 0.0}};
    if (r.tuning) {
        j["tuning"] = {{"grid", r.tuning->grid},
                       {"k_hat", r.tuning->per_candidate_k_hat},
                       {"chosen", r.tuning->chosen}};
        json obj = json::array();
        for (double v : r.tuning->objective) obj.push_back(std::isfinite(v) ? json(v) : json(nullptr));
        j["tuning"]["objective"] = obj;
    }
    return j;
}

void write_trace_csv(const fs::path& path, const TuningTrace& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << "candidate,objective,k_hat\n";
    for (std::size_t i = 0; i < t.grid.size(); ++i) {
        out << format_double(t.grid[i]) << ','
            << (std::isfinite(t.objective[i]) ? format_double(t.objective[i]) : "inf") << ','
            << t.per_candidate_k_hat[i] << '\n';
    }
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << text;
}

const Timeline* reference_for(const RttmDocument& doc, const std::string& recording_id) {
    if (const Timeline* t = doc.find(recording_id)) return t;
    return doc.recordings.size() == 1 ? &doc.recordings.front() : nullptr;
}

int cmd_diarize(const DiarizeFlags& f, const CommonFlags& c, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    cfg.method = parse_method(f.method);
    cfg.retention_p = f.p;
    cfg.alpha = f.alpha;
    cfg.k_max = c.k_max;
    cfg.fixed_k = f.fixed_k;
    cfg.rng_seed = c.seed;
    cfg.asc_factor = parse_factor(f.asc_factor);
    if (!f.asc_grid.empty()) cfg.asc_grid = parse_grid(f.asc_grid);
    cfg.validate();

    const EmbeddingSet emb = read_embedding_file(f.input);
    const fs::path dir = ensure_dir(c.out_dir);
    const SpectralResult r = run_pipeline(emb, cfg);
    for (auto row : r.degenerate_rows) {
        err << "warning: row " << row << " has equal off-diagonal scores; kept by fallback rule\n";
    }
    if (r.psd_warning) {
        err << "warning: Laplacian minimum eigenvalue " << r.min_eigenvalue << " is negative\n";
    }

    const std::string& rec = emb.recording_id();
    const Timeline hyp = labels_to_timeline(r.labels, emb.spans(), !f.no_merge, rec);
    write_rttm(dir / (rec + ".rttm"), hyp);
    write_text_file(dir / (rec + ".diagnostics.json"), diagnostics_json(emb, r).dump(2) + "\n");
    if (r.tuning) write_trace_csv(dir / (rec + ".asc_trace.csv"), *r.tuning);
    if (f.dump_affinity) {
        std::ofstream a(dir / (rec + ".affinity.csv"), std::ios::binary);
        write_matrix_csv(a, cosine_affinity(emb).values());
    }
    if (f.dump_retention) {
        std::ofstream rr(dir / (rec + ".retention.csv"), std::ios::binary);
        rr << "row,retained,within_cluster\n";
        for (std::size_t i = 0; i < r.retained_per_row.size(); ++i) {
            rr << i << ',' << r.retained_per_row[i] << ','
               << (i < r.within_cluster_size.size() ? std::to_string(r.within_cluster_size[i]) : "")
               << '\n';
        }
    }
    out << rec << ": method=" << to_string(r.method) << " k_hat=" << r.k_hat
        << " segments=" << emb.size() << " rttm=" << (dir / (rec + ".rttm")).string() << '\n';
    return kExitOk;
}

int cmd_score(const ScoreFlags& f, const CommonFlags& c, std::ostream& out) {
    const RttmDocument ref = read_rttm(f.reference);
    const RttmDocument hyp = read_rttm(f.hypothesis);
    if (ref.recordings.empty()) throw InputError(f.reference + ": no SPEAKER records");
    const fs::path dir = ensure_dir(c.out_dir);

    std::ostringstream csv;
    csv << "recording_id,der,missed,false_alarm,speaker_error,total_reference\n";
    DerBreakdown total;
    auto emit = [&](const std::string& id, const DerBreakdown& d) {
        out << id << ": DER " << fixed(100.0 * d.der, 2) << "% (missed " << fixed(d.missed, 3)
            << " s, false alarm " << fixed(d.false_alarm, 3) << " s, speaker error "
            << fixed(d.speaker_error, 3) << " s, scored " << fixed(d.total_reference, 3)
            << " s)\n";
        csv << id << ',' << fixed(d.der, 6) << ',' << fixed(d.missed, 3) << ','
            << fixed(d.false_alarm, 3) << ',' << fixed(d.speaker_error, 3) << ','
            << fixed(d.total_reference, 3) << '\n';
    };
    for (const Timeline& r : ref.recordings) {
        const Timeline* h = hyp.find(r.recording_id);
        const Timeline empty{r.recording_id, {}};
        const DerBreakdown d = compute_der(r, h ? *h : empty, f.collar);
        emit(r.recording_id, d);
        total.missed += d.missed;
        total.false_alarm += d.false_alarm;
        total.speaker_error += d.speaker_error;
        total.total_reference += d.total_reference;
    }
    if (ref.recordings.size() > 1) {
        total.der = (total.missed + total.false_alarm + total.speaker_error) / total.total_reference;
        emit("ALL", total);
    }
    write_text_file(dir / "score.csv", csv.str());
    return kExitOk;
}

struct BenchCell {
    std::size_t recording = 0;
    Method method = Method::sc_pna;
    std::optional<double> parameter;
};

struct LoadedRecording {
    EmbeddingSet embeddings;
    std::optional<Timeline> reference;
};

int cmd_bench(const BenchFlags& f, const CommonFlags& c, std::ostream& out) {
    const auto entries = read_manifest(f.manifest);
    if (entries.empty()) throw InputError("manifest " + f.manifest + " lists no recordings");
    if (f.jobs < 1) throw InputError("--jobs must be >= 1");

    std::vector<Method> methods;
    for (const auto& tok : split_list(f.methods)) methods.push_back(parse_method(tok));
    const auto p_grid = parse_grid(f.p_grid);
    const auto alpha_grid = parse_grid(f.alpha_grid);
    const auto asc_grid = f.asc_grid.empty() ? default_asc_grid() : parse_grid(f.asc_grid);

    std::vector<LoadedRecording> recs;
    for (const auto& e : entries) {
        LoadedRecording lr{read_embedding_file(e.embeddings), std::nullopt};
        if (e.reference) {
            const RttmDocument doc = read_rttm(*e.reference);
            const Timeline* t = reference_for(doc, lr.embeddings.recording_id());
            if (!t) {
                throw InputError(e.reference->string() + " has no turns for recording '" +
                                 lr.embeddings.recording_id() + "'");
            }
            lr.reference = *t;
        }
        recs.push_back(std::move(lr));
    }

    std::vector<BenchCell> cells;
    for (std::size_t r = 0; r < recs.size(); ++r) {
        for (Method m : methods) {
            if (m == Method::sc_pna) {
                for (double p : p_grid) cells.push_back({r, m, p});
            } else if (m == Method::csc) {
                for (double a : alpha_grid) cells.push_back({r, m, a});
            } else {
                cells.push_back({r, m, std::nullopt});
            }
        }
    }

    const fs::path dir = ensure_dir(c.out_dir);
    const fs::path rttm_dir = ensure_dir((dir / "rttm").string());
    std::vector<BenchmarkRow> rows(cells.size());
    std::vector<std::optional<Timeline>> hyps(cells.size());

    auto run_cell = [&](std::size_t i) {
        const BenchCell& cell = cells[i];
        const LoadedRecording& rec = recs[cell.recording];
        BenchmarkRow& row = rows[i];
        row.recording_id = rec.embeddings.recording_id();
        row.method = cell.method;
        if (rec.reference) row.k_true = static_cast<int>(rec.reference->speakers().size());
        RunConfig cfg;
        cfg.method = cell.method;
        cfg.k_max = c.k_max;
        cfg.rng_seed = c.seed;
        cfg.asc_grid = asc_grid;
        if (cell.method == Method::sc_pna) cfg.retention_p = *cell.parameter;
        if (cell.method == Method::csc) {
            cfg.alpha = cell.parameter;
            if (f.csc_known_k && row.k_true) cfg.fixed_k = row.k_true;
        }
        row.parameter = cell.parameter ? format_double(*cell.parameter) : "";
        const auto start = std::chrono::steady_clock::now();
        try {
            const SpectralResult res = run_pipeline(rec.embeddings, cfg);
            row.k_hat = res.k_hat;
            row.eig_decomp_count = res.eig_decomp_count;
            row.parameter = format_parameter(cell.method, res.parameter);
            Timeline hyp = labels_to_timeline(res.labels, rec.embeddings.spans(), true,
                                              rec.embeddings.recording_id());
            if (rec.reference) row.der = compute_der(*rec.reference, hyp, f.collar);
            hyps[i] = std::move(hyp);
        } catch (const Error& e) {
            row.status = std::string("error: ") + e.what();
        }
        if (f.timing) {
            row.wall_time_ms = std::chrono::duration<double, std::milli>(
                                   std::chrono::steady_clock::now() - start)
                                   .count();
        }
    };

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) run_cell(i);
    };
    std::vector<std::thread> pool;
    const auto threads = std::min<std::size_t>(static_cast<std::size_t>(f.jobs), cells.size());
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!hyps[i]) continue;
        std::string name = rows[i].recording_id + "." + std::string(to_string(rows[i].method));
        if (!rows[i].parameter.empty()) name += "." + rows[i].parameter;
        write_rttm(rttm_dir / (name + ".rttm"), *hyps[i]);
    }
    std::ostringstream csv;
    write_benchmark_csv(csv, rows);
    write_text_file(dir / "bench.csv", csv.str());

    std::size_t failed = 0;
    for (const auto& r : rows) failed += r.status != "ok";
    out << "bench: " << rows.size() << " cells, " << failed << " failed, report "
        << (dir / "bench.csv").string() << '\n';
    return kExitOk;
}

int cmd_synth(const SynthFlags& f, const CommonFlags& c, std::ostream& out) {
    SynthSpec spec;
    spec.num_speakers = f.speakers;
    spec.segments_per_speaker = parse_counts(f.segments);
    if (spec.segments_per_speaker.size() == 1) {
        spec.segments_per_speaker.assign(static_cast<std::size_t>(std::max(f.speakers, 0)),
                                         spec.segments_per_speaker.front());
    } else {
        spec.num_speakers = static_cast<int>(spec.segments_per_speaker.size());
    }
    spec.dim = f.dim;
    spec.separation = parse_angle(f.separation);
    spec.noise_sigma = f.noise;
    spec.seed = c.seed;
    spec.turn_model = parse_turn_model(f.turn_model);
    spec.max_turn_segments = f.turn_length;
    spec.recording_id = f.name;
    spec.validate();

    std::optional<SynthRecording> generated;
    try {
        generated = generate(spec);
    } catch (const InfeasibleError& e) {
        throw InputError(e.what());
    }
    const SynthRecording& rec = *generated;
    const fs::path dir = ensure_dir(c.out_dir);
    const fs::path emb_path = dir / (f.name + (f.binary ? ".bin" : ".csv"));
    write_embedding_file(emb_path, rec.embeddings);
    write_rttm(dir / (f.name + ".rttm"), rec.reference);
    out << "synth: " << rec.embeddings.size() << " segments, " << spec.num_speakers
        << " speakers -> " << emb_path.string() << '\n';
    return kExitOk;
}

int cmd_tune_csc(const TuneFlags& f, const CommonFlags& c, std::ostream& out) {
    const auto entries = read_manifest(f.manifest);
    if (entries.empty()) throw InputError("manifest " + f.manifest + " lists no recordings");
    std::vector<DevRecording> dev;
    for (const auto& e : entries) {
        if (!e.reference) {
            throw InputError("tune-csc needs a reference RTTM for " + e.embeddings.string());
        }
        EmbeddingSet emb = read_embedding_file(e.embeddings);
        const RttmDocument doc = read_rttm(*e.reference);
        const Timeline* t = reference_for(doc, emb.recording_id());
        if (!t) throw InputError(e.reference->string() + " has no turns for " + emb.recording_id());
        std::optional<int> k;
        if (f.known_k) k = static_cast<int>(t->speakers().size());
        dev.push_back({std::move(emb), *t, k});
    }
    DevSweepOptions opt;
    opt.k_max = c.k_max;
    opt.seed = c.seed;
    opt.collar = f.collar;
    const auto grid = parse_grid(f.alpha_grid);
    const DevSweepResult res = csc_dev_sweep_detailed(dev, grid, opt);
    const fs::path dir = ensure_dir(c.out_dir);
    write_trace_csv(dir / "csc_sweep.csv", res.trace);
    out << "tune-csc: chosen alpha " << format_double(res.trace.chosen) << " (mean DER "
        << fixed(100.0 * res.trace.objective[res.trace.chosen_index], 2) << "%)\n";
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Self-tuning spectral clustering for speaker diarization", "scpna"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "scpna 0.1.0");

    CommonFlags common;
    DiarizeFlags d;
    auto* diarize = app.add_subcommand("diarize", "Cluster one embedding file into speakers");
    diarize->add_option("embeddings", d.input, "Embedding file (.csv or .bin)")->required();
    diarize->add_option("--method", d.method, "csc | asc | eer-delta | sc-pna")
        ->envname("SCPNA_METHOD");
    diarize->add_option("--p", d.p, "SC-pNA retention percentage")->envname("SCPNA_P");
    diarize->add_option("--alpha", d.alpha, "CSC pruning parameter in [0, 1]")
        ->envname("SCPNA_ALPHA");
    diarize->add_option("--fixed-k", d.fixed_k, "Skip estimation and use this many speakers")
        ->envname("SCPNA_FIXED_K");
    diarize->add_option("--asc-grid", d.asc_grid, "ASC alpha grid, e.g. 0.05:0.95:0.05");
    diarize->add_option("--asc-factor", d.asc_factor, "ASC numerator: pruned | retained")
        ->envname("SCPNA_ASC_FACTOR");
    diarize->add_flag("--no-merge", d.no_merge, "Emit one RTTM turn per segment");
    diarize->add_flag("--dump-affinity", d.dump_affinity, "Write the affinity matrix as CSV");
    diarize->add_flag("--dump-retention", d.dump_retention, "Write retained counts per row");
    add_common(diarize, common);

    ScoreFlags s;
    auto* score = app.add_subcommand("score", "Diarization error rate of a hypothesis RTTM");
    score->add_option("reference", s.reference, "Reference RTTM")->required();
    score->add_option("hypothesis", s.hypothesis, "Hypothesis RTTM")->required();
    score->add_option("--collar", s.collar, "No-score collar around reference boundaries (s)")
        ->envname("SCPNA_COLLAR");
    add_common(score, common);

    BenchFlags b;
    auto* bench = app.add_subcommand("bench", "Run methods over a manifest of recordings");
    bench->add_option("manifest", b.manifest, "Manifest: embedding path [reference RTTM]")
        ->required();
    bench->add_option("--methods", b.methods, "Comma-separated methods");
    bench->add_option("--p-grid", b.p_grid, "SC-pNA retention grid, e.g. 10:50:5");
    bench->add_option("--alpha-grid", b.alpha_grid, "CSC alpha grid");
    bench->add_option("--asc-grid", b.asc_grid, "ASC alpha grid");
    bench->add_flag("--csc-known-k", b.csc_known_k, "Give CSC the reference speaker count");
    bench->add_option("--collar", b.collar, "Scoring collar (s)")->envname("SCPNA_COLLAR");
    bench->add_option("--jobs", b.jobs, "Concurrent cells")->envname("SCPNA_JOBS");
    bench->add_flag("--timing", b.timing, "Record wall_time_ms (makes the report run-dependent)");
    add_common(bench, common);

    SynthFlags y;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic conversation");
    synth->add_option("--speakers", y.speakers, "Number of speakers");
    synth->add_option("--segments", y.segments, "Segments per speaker: one count or a list");
    synth->add_option("--dim", y.dim, "Embedding dimension");
    synth->add_option("--separation", y.separation, "Angle between centers, e.g. 90deg or 1.2rad");
    synth->add_option("--noise", y.noise, "Per-coordinate noise sigma");
    synth->add_option("--turn-model", y.turn_model, "round-robin | random");
    synth->add_option("--turn-length", y.turn_length, "Segments per turn (max for random)");
    synth->add_option("--name", y.name, "Recording id and file stem");
    synth->add_flag("--binary", y.binary, "Write the binary embedding format");
    add_common(synth, common);

    TuneFlags t;
    auto* tune = app.add_subcommand("tune-csc", "Sweep the CSC alpha on a labeled dev manifest");
    tune->add_option("manifest", t.manifest, "Manifest with reference RTTMs")->required();
    tune->add_option("--alpha-grid", t.alpha_grid, "Alpha grid");
    tune->add_flag("--known-k", t.known_k, "Cluster with the reference speaker count");
    tune->add_option("--collar", t.collar, "Scoring collar (s)")->envname("SCPNA_COLLAR");
    add_common(tune, common);

    std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(reversed);
    } catch (const CLI::CallForVersion&) {
        out << "scpna 0.1.0\n";
        return kExitOk;
    } catch (const CLI::Success&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    try {
        if (diarize->parsed()) return cmd_diarize(d, common, out, err);
        if (score->parsed()) return cmd_score(s, common, out);
        if (bench->parsed()) return cmd_bench(b, common, out);
        if (synth->parsed()) return cmd_synth(y, common, out);
        if (tune->parsed()) return cmd_tune_csc(t, common, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const PipelineError& e) {
        err << "error: pipeline stage " << e.stage() << ": " << e.what() << '\n';
        return kExitPipelineError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitPipelineError;
    }
    return kExitInputError;
}

}  // namespace scpna::cli
