#include "loglab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "loglab/baseline_predictor.hpp"
#include "loglab/config.hpp"
#include "loglab/corpus_miner.hpp"
#include "loglab/errors.hpp"
#include "loglab/evaluator.hpp"
#include "loglab/parallel.hpp"
#include "loglab/records.hpp"

namespace fs = std::filesystem;

namespace loglab {

namespace {

struct Args {
    std::string config_file;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* jobs_opt = nullptr;
    CLI::Option* config_opt = nullptr;

    // mine
    std::vector<std::string> roots;
    std::string methods_out;
    std::vector<std::string> receiver_extra;
    std::vector<std::string> exclude;

    // build
    std::string methods_in;
    std::string out_dir;
    double mask_ratio = 0.15;
    std::string p2_share;
    bool span_mask = false;
    std::vector<double> ratios;

    // predict / evaluate / report
    std::string baseline;
    std::string data_dir;
    std::string split = "test";
    std::string out;
    std::vector<std::string> preds;
    std::string markdown;
    std::string outcomes;
};

bool given(const CLI::App* app, const std::string& name) {
    const CLI::Option* opt = app->get_option_no_throw(name);
    return opt && opt->count() > 0;
}

void require_file(const fs::path& path, std::string_view producer) {
    if (!fs::is_regular_file(path)) {
        throw ConfigError("missing input file: " + path.string() + " (produced by `loglab " + std::string(producer) +
                          "`)");
    }
}

void write_text(const fs::path& path, const std::string& text) {
    AtomicFile f(path);
    f.stream() << text;
    f.commit();
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

// FNV-1a over the sorted (relative path, bytes) pairs of a directory tree.
std::string tree_hash(const fs::path& root) {
    std::vector<fs::path> files;
    for (auto it = fs::recursive_directory_iterator(root, fs::directory_options::skip_permission_denied);
         it != fs::recursive_directory_iterator(); ++it) {
        if (it->is_directory() && it->path().filename() == ".git") {
            it.disable_recursion_pending();
            continue;
        }
        if (it->is_regular_file()) files.push_back(it->path());
    }
    std::sort(files.begin(), files.end());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& f : files) {
        h = fnv1a64(f.lexically_relative(root).generic_string(), h);
        h = fnv1a64(std::string_view("\0", 1), h);
        std::ifstream in(f, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        h = fnv1a64(ss.str(), h);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json manifest(std::string_view stage, const RunConfig& cfg, const Json& inputs, const Json& extra = nullptr) {
    Json m;
    m["stage"] = stage;
    m["version"] = kToolVersion;
    m["seed"] = cfg.seed;
    m["config"] = cfg.to_json();
    m["inputs"] = inputs;
    if (!extra.is_null()) m["summary"] = extra;
    return m;
}

std::string root_label(const fs::path& root) {
    fs::path p = root.lexically_normal();
    if (p.filename().empty()) p = p.parent_path();
    return p.filename().string();
}

Split split_arg(const std::string& name) {
    const auto s = parse_split(name);
    if (!s) throw ConfigError("unknown split '" + name + "' (expected train, eval or test)");
    return *s;
}

std::vector<DatasetInstance> load_split_instances(const fs::path& data, Split which) {
    require_file(data / "ft.jsonl", "build");
    require_file(data / "split.jsonl", "build");
    const auto ft = read_instances(data / "ft.jsonl");
    const auto split = read_split(data / "split.jsonl");
    std::vector<DatasetInstance> out;
    for (const auto& inst : ft) {
        const auto it = split.find(inst.instance_id);
        if (it != split.end() && it->second == which) out.push_back(inst);
    }
    return out;
}

int run_mine(const RunConfig& cfg, std::ostream& out) {
    if (cfg.roots.empty()) throw ConfigError("no repository roots given (--roots)");
    std::vector<fs::path> roots;
    for (const auto& r : cfg.roots) {
        if (!fs::is_directory(r)) throw ConfigError("missing input directory: " + r);
        roots.emplace_back(r);
    }
    MineOptions options;
    options.receivers.extra = cfg.receiver_extra;
    options.exclude_globs = cfg.exclude;
    options.jobs = cfg.jobs;

    JsonlMethodSink sink(cfg.methods, make_header("mine", cfg.seed, cfg.to_json()));
    const MiningSummary summary = mine(roots, sink, options);

    Json inputs = Json::object();
    std::vector<fs::path> sorted = roots;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& r : sorted) inputs[root_label(r)] = tree_hash(r);
    Json counts = {{"repos_kept", summary.repos_kept},     {"repos_skipped", summary.repos_skipped},
                   {"java_files", summary.java_files},     {"methods", summary.methods},
                   {"methods_with_log", summary.methods_with_log}, {"file_errors", summary.file_errors}};
    const Json m = manifest("mine", cfg, inputs, counts);
    sink.commit();
    write_json(cfg.methods + ".manifest.json", m);

    for (const auto& w : summary.warnings) out << "warning: " << w << '\n';
    out << "mined " << summary.methods << " methods (" << summary.methods_with_log << " with logs) from "
        << summary.repos_kept << " repos; skipped " << summary.repos_skipped << " repos\n";
    return 0;
}

int run_build(const RunConfig& cfg, std::ostream& out) {
    require_file(cfg.methods, "mine");
    const fs::path dir(cfg.data_dir);
    std::vector<MethodRecord> methods = read_methods(cfg.methods);
    const Datasets d = build_datasets(std::move(methods), cfg.build_options());

    // Every file is committed only after all of them were written.
    const Json config = cfg.to_json();
    JsonlWriter p1(dir / "p1.jsonl", make_header("build:p1", cfg.seed, config));
    JsonlWriter p2(dir / "p2.jsonl", make_header("build:p2", cfg.seed, config));
    JsonlWriter ft(dir / "ft.jsonl", make_header("build:ft", cfg.seed, config));
    JsonlWriter sp(dir / "split.jsonl", make_header("build:split", cfg.seed, config));
    for (const auto& i : d.p1) p1.write(to_json(i));
    for (const auto& i : d.p2) p2.write(to_json(i));
    for (const auto& i : d.ft) {
        ft.write(to_json(i));
        sp.write(Json{{"instance_id", i.instance_id}, {"split", to_string(d.ft_split.at(i.instance_id))}});
    }

    std::size_t per_split[3] = {0, 0, 0};
    for (const auto& [id, s] : d.ft_split) ++per_split[static_cast<int>(s)];
    const BuildStats& st = d.stats;
    Json counts = {{"input_methods", st.input_methods},
                   {"dropped_short", st.filter.too_short},
                   {"dropped_long", st.filter.too_long},
                   {"dropped_duplicate", st.filter.duplicates},
                   {"kept_methods", st.kept_methods},
                   {"logged_methods", st.logged_methods},
                   {"p1", d.p1.size()},
                   {"p1_skipped", st.p1_skipped},
                   {"p2", d.p2.size()},
                   {"ft", d.ft.size()},
                   {"ft_train", per_split[0]},
                   {"ft_eval", per_split[1]},
                   {"ft_test", per_split[2]}};
    const Json m = manifest("build", cfg, Json{{fs::path(cfg.methods).filename().string(), file_hash(cfg.methods)}},
                            counts);
    p1.commit();
    p2.commit();
    ft.commit();
    sp.commit();
    write_json(dir / "manifest.json", m);

    out << "P1 " << d.p1.size() << ", P2 " << d.p2.size() << ", FT " << d.ft.size() << " (train " << per_split[0]
        << ", eval " << per_split[1] << ", test " << per_split[2] << ")\n";
    return 0;
}

int run_predict(const RunConfig& cfg, const Args& a, std::ostream& out) {
    if (a.baseline != "heuristic" && a.baseline != "retrieval") {
        throw ConfigError("unknown baseline '" + a.baseline + "' (expected heuristic or retrieval)");
    }
    const fs::path dir(cfg.data_dir);
    const Split which = split_arg(a.split);
    const auto instances = load_split_instances(dir, which);

    ReceiverRule rule;
    rule.extra = cfg.receiver_extra;
    RetrievalIndex index;
    if (a.baseline == "retrieval") {
        index = RetrievalIndex::build(read_instances(dir / "ft.jsonl"), read_split(dir / "split.jsonl"), rule);
        if (index.empty()) throw ConfigError("retrieval index is empty: no train-split FT instances in " + dir.string());
    }

    std::vector<Prediction> preds(instances.size());
    parallel_for(instances.size(), cfg.jobs, [&](std::size_t i) {
        const TokenSeq input = tokenize(instances[i].input_text);
        preds[i].instance_id = instances[i].instance_id;
        preds[i].text = a.baseline == "heuristic" ? predict_heuristic(std::span<const Token>(input))
                                                  : predict_retrieval(index, std::span<const Token>(input));
    });

    Json config = cfg.to_json();
    config["baseline"] = a.baseline;
    config["split"] = a.split;
    write_predictions(a.out, preds, make_header("predict", cfg.seed, config));
    Json m = manifest("predict", cfg,
                      Json{{"ft.jsonl", file_hash(dir / "ft.jsonl")}, {"split.jsonl", file_hash(dir / "split.jsonl")}},
                      Json{{"baseline", a.baseline}, {"split", a.split}, {"predictions", preds.size()}});
    write_json(a.out + ".manifest.json", m);
    out << "wrote " << preds.size() << " " << a.baseline << " predictions to " << a.out << '\n';
    return 0;
}

EvaluationReport evaluate_file(const std::vector<DatasetInstance>& instances, const fs::path& preds,
                               const RunConfig& cfg, std::vector<EvaluationOutcome>* outcomes = nullptr) {
    require_file(preds, "predict");
    ReceiverRule rule;
    rule.extra = cfg.receiver_extra;
    ScoredRun run = score_all(instances, read_predictions(preds), rule, cfg.jobs);
    EvaluationReport report = aggregate(run.outcomes, run.unknown_predictions);
    if (outcomes) *outcomes = std::move(run.outcomes);
    return report;
}

int run_evaluate(const RunConfig& cfg, const Args& a, std::ostream& out) {
    if (a.preds.size() != 1) throw ConfigError("evaluate takes exactly one --preds file");
    const fs::path dir(cfg.data_dir);
    const auto instances = load_split_instances(dir, split_arg(a.split));
    std::vector<EvaluationOutcome> outcomes;
    const EvaluationReport report = evaluate_file(instances, a.preds[0], cfg, &outcomes);

    Json doc;
    doc["manifest"] = manifest("evaluate", cfg,
                               Json{{"ft.jsonl", file_hash(dir / "ft.jsonl")},
                                    {"split.jsonl", file_hash(dir / "split.jsonl")},
                                    {fs::path(a.preds[0]).filename().string(), file_hash(a.preds[0])}},
                               Json{{"split", a.split}});
    doc["report"] = to_json(report);
    const std::string md = render_markdown(report);
    if (!a.outcomes.empty()) {
        JsonlWriter w(a.outcomes, make_header("evaluate:outcomes", cfg.seed, cfg.to_json()));
        for (const auto& o : outcomes) w.write(to_json(o));
        w.commit();
    }
    if (!a.out.empty()) write_json(a.out, doc);
    if (!a.markdown.empty()) write_text(a.markdown, md);
    if (a.out.empty() && a.markdown.empty()) out << md;
    else out << "All " << report.row("All").percent << "%, wrong syntax " << report.wrong_syntax.percent
             << "%, mean BLEU-4 " << report.mean_bleu4 << '\n';
    return 0;
}

int run_report(const RunConfig& cfg, const Args& a, std::ostream& out) {
    if (a.preds.empty()) throw ConfigError("report needs at least one --preds file");
    const auto instances = load_split_instances(fs::path(cfg.data_dir), split_arg(a.split));
    std::map<std::string, int> stems;
    for (const auto& p : a.preds) ++stems[fs::path(p).stem().string()];
    std::vector<std::pair<std::string, EvaluationReport>> reports;
    for (const auto& p : a.preds) {
        const std::string stem = fs::path(p).stem().string();
        reports.emplace_back(stems[stem] > 1 ? p : stem, evaluate_file(instances, p, cfg));
    }
    const std::string table = render_comparison(reports);
    if (a.out.empty()) out << table;
    else write_text(a.out, table);
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Log statement dataset construction and evaluation toolkit", "loglab"};
    app.require_subcommand(1);
    app.fallthrough();
    Args a;
    a.config_opt = app.add_option("--config", a.config_file, "Flat key = value config file");
    a.jobs_opt = app.add_option("--jobs", a.jobs, "Worker threads")->check(CLI::PositiveNumber);
    a.seed_opt = app.add_option("--seed", a.seed, "Run seed (overrides LOGLAB_SEED and --config)");

    auto* mine_cmd = app.add_subcommand("mine", "Extract methods and log statements from cloned repositories");
    mine_cmd->add_option("--roots", a.roots, "Repository root directories");
    mine_cmd->add_option("--out", a.methods_out, "Output JSONL of methods");
    mine_cmd->add_option("--receiver-extra", a.receiver_extra, "Extra logger receiver names");
    mine_cmd->add_option("--exclude", a.exclude, "Glob of repo-relative paths to skip");

    auto* build_cmd = app.add_subcommand("build", "Build the P1, P2 and FT datasets and the FT split");
    build_cmd->add_option("--in", a.methods_in, "Methods JSONL from `mine`");
    build_cmd->add_option("--out-dir", a.out_dir, "Dataset directory");
    build_cmd->add_option("--mask-ratio", a.mask_ratio, "Share of tokens masked in P1");
    build_cmd->add_option("--p2-share", a.p2_share, "Share of logged methods routed to P2, or 'none'");
    build_cmd->add_flag("--span-mask", a.span_mask, "Mask contiguous spans in P1");
    build_cmd->add_option("--split-ratios", a.ratios, "Train, eval and test shares")->expected(3);
    build_cmd->add_option("--receiver-extra", a.receiver_extra, "Extra logger receiver names");

    auto* predict_cmd = app.add_subcommand("predict", "Run a baseline predictor over FT instances");
    predict_cmd->add_option("--baseline", a.baseline, "heuristic or retrieval")->required();
    predict_cmd->add_option("--data", a.data_dir, "Dataset directory");
    predict_cmd->add_option("--split", a.split, "train, eval or test");
    predict_cmd->add_option("--out", a.out, "Prediction JSONL")->required();
    predict_cmd->add_option("--receiver-extra", a.receiver_extra, "Extra logger receiver names");

    auto* eval_cmd = app.add_subcommand("evaluate", "Score a prediction file");
    eval_cmd->add_option("--data", a.data_dir, "Dataset directory");
    eval_cmd->add_option("--split", a.split, "train, eval or test");
    eval_cmd->add_option("--preds", a.preds, "Prediction JSONL")->required();
    eval_cmd->add_option("--out", a.out, "Report JSON");
    eval_cmd->add_option("--markdown", a.markdown, "Report tables in Markdown");
    eval_cmd->add_option("--outcomes", a.outcomes, "Per-instance outcomes JSONL");
    eval_cmd->add_option("--receiver-extra", a.receiver_extra, "Extra logger receiver names");

    auto* report_cmd = app.add_subcommand("report", "Compare prediction files side by side");
    report_cmd->add_option("--data", a.data_dir, "Dataset directory");
    report_cmd->add_option("--split", a.split, "train, eval or test");
    report_cmd->add_option("--preds", a.preds, "Prediction JSONL files")->required();
    report_cmd->add_option("--out", a.out, "Markdown output (default: stdout)");
    report_cmd->add_option("--receiver-extra", a.receiver_extra, "Extra logger receiver names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    const CLI::App* cmd = app.get_subcommands().front();
    const std::string stage = cmd->get_name();
    try {
        // defaults < config file < LOGLAB_SEED < explicit flags
        RunConfig cfg;
        if (a.config_opt->count()) apply_config_file(cfg, a.config_file);
        if (const auto env = seed_from_env()) cfg.seed = *env;
        if (a.seed_opt->count()) cfg.seed = a.seed;
        if (a.jobs_opt->count()) cfg.jobs = a.jobs;
        if (given(cmd, "--roots")) cfg.roots = a.roots;
        if (given(cmd, "--out") && stage == "mine") cfg.methods = a.methods_out;
        if (given(cmd, "--in")) cfg.methods = a.methods_in;
        if (given(cmd, "--out-dir")) cfg.data_dir = a.out_dir;
        if (given(cmd, "--data")) cfg.data_dir = a.data_dir;
        if (given(cmd, "--receiver-extra")) cfg.receiver_extra = a.receiver_extra;
        if (given(cmd, "--exclude")) cfg.exclude = a.exclude;
        if (given(cmd, "--mask-ratio")) cfg.mask_ratio = a.mask_ratio;
        if (given(cmd, "--span-mask")) cfg.span_mask = a.span_mask;
        if (given(cmd, "--p2-share")) {
            if (a.p2_share == "none") {
                cfg.p2_share.reset();
            } else {
                RunConfig probe;
                apply_config_text(probe, "p2_share = " + a.p2_share, "--p2-share");
                cfg.p2_share = probe.p2_share;
            }
        }
        if (given(cmd, "--split-ratios")) cfg.ratios = {a.ratios[0], a.ratios[1], a.ratios[2]};
        cfg.validate();

        if (stage == "mine") return run_mine(cfg, out);
        if (stage == "build") return run_build(cfg, out);
        if (stage == "predict") return run_predict(cfg, a, out);
        if (stage == "evaluate") return run_evaluate(cfg, a, out);
        return run_report(cfg, a, out);
    } catch (const ConfigError& e) {
        err << "loglab " << stage << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "loglab " << stage << ": " << e.what() << '\n';
        return 1;
    }
}

}  // namespace loglab
