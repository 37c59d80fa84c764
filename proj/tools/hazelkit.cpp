// hazelkit command line: readability scoring, compliance checks, corpus
// sampling, fine-tuning dataset construction, and evaluation reports.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hazelkit/config.hpp"
#include "hazelkit/corpus.hpp"
#include "hazelkit/dataset.hpp"
#include "hazelkit/evaluation.hpp"
#include "hazelkit/live_transport.hpp"
#include "hazelkit/llm.hpp"
#include "hazelkit/readability.hpp"
#include "hazelkit/text.hpp"

namespace fs = std::filesystem;
using namespace hazelkit;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot read file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string read_stdin() {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot write file: " + path.string());
    out << content;
    if (!out) throw IoFailure("write failed: " + path.string());
}

/// Expands files, directories (recursing into .txt), and "-" for stdin
/// into (id, text) pairs.
std::vector<std::pair<std::string, std::string>> collect_text_inputs(
    const std::vector<std::string>& args) {
    std::vector<std::pair<std::string, std::string>> inputs;
    for (const std::string& arg : args) {
        if (arg == "-") {
            inputs.emplace_back("stdin", read_stdin());
            continue;
        }
        const fs::path path(arg);
        if (fs::is_directory(path)) {
            std::vector<fs::path> found;
            for (const auto& entry : fs::recursive_directory_iterator(path)) {
                if (entry.is_regular_file() && entry.path().extension() == ".txt") {
                    found.push_back(entry.path());
                }
            }
            std::sort(found.begin(), found.end());
            for (const auto& file : found) inputs.emplace_back(file.string(), read_file(file));
        } else if (fs::exists(path)) {
            inputs.emplace_back(arg, read_file(path));
        } else {
            throw IoFailure("no such file or directory: " + arg);
        }
    }
    return inputs;
}

struct GlobalOptions {
    std::string config_path = "./hazelkit.json";
    bool config_path_explicit = false;
    std::optional<std::uint64_t> seed_override;
    std::string format = "text";
    bool offline = false;
    std::string fixtures_dir;  // --fixtures, overrides config api.fixtures_dir
};

Config load_effective_config(const GlobalOptions& global) {
    if (fs::exists(global.config_path)) return load_config(global.config_path);
    if (global.config_path_explicit) {
        throw ConfigError("config file not found: " + global.config_path);
    }
    return Config{};
}

Lexicon load_lexicon(const Config& config) {
    if (config.lexicon_path.empty()) return Lexicon::builtin();
    return Lexicon::from_file(config.lexicon_path);
}

TemplateLibrary load_templates(const Config& config) {
    if (config.templates_dir.empty()) return TemplateLibrary::builtin();
    return TemplateLibrary::from_dir(config.templates_dir);
}

std::shared_ptr<Transport> make_transport(const Config& config, const GlobalOptions& global) {
    if (global.offline) {
        std::string dir =
            !global.fixtures_dir.empty() ? global.fixtures_dir : config.api.fixtures_dir;
        if (dir.empty()) {
            throw ConfigError(
                "--offline requires a fixtures directory (--fixtures or api.fixtures_dir)");
        }
        return std::make_shared<ReplayTransport>(dir);
    }
    const char* key = std::getenv("HAZELKIT_API_KEY");
    return std::make_shared<LiveTransport>(config.api.base_url, key ? key : "");
}

Client make_client(const Config& config, const GlobalOptions& global) {
    ClientConfig client_config;
    const char* key = std::getenv("HAZELKIT_API_KEY");
    client_config.api_key = key ? key : "";
    client_config.model = config.api.model;
    client_config.temperature = config.api.temperature;
    client_config.max_in_flight = config.api.max_in_flight;
    client_config.system_message = config.system_message;
    return Client(client_config, make_transport(config, global), load_templates(config));
}

// ----------------------------------------------------------------------
// score / check
// ----------------------------------------------------------------------

int run_score(const std::vector<std::string>& files, const GlobalOptions& global,
              const Config& config) {
    const Lexicon lexicon = load_lexicon(config);
    const auto inputs = collect_text_inputs(files);
    struct Row {
        std::string id;
        ReadabilityScores scores;
    };
    std::vector<Row> rows;
    int failures = 0;
    for (const auto& [id, text] : inputs) {
        try {
            const TextMetrics metrics = compute_metrics(text, lexicon);
            rows.push_back({id, score_metrics(metrics)});
        } catch (const EmptyText& e) {
            std::cerr << id << ": " << e.what() << "\n";
            ++failures;
        }
    }

    auto fmt = [](double v) { return detail::fmt2(v); };
    if (global.format == "md" || global.format == "markdown") {
        std::cout << "| File | Flesch-Kincaid | Flesch Reading Ease | FRE band | ARI | "
                     "Dale-Chall | Dale-Chall band |\n|---|---|---|---|---|---|---|\n";
        for (const Row& row : rows) {
            std::cout << "| " << row.id << " | " << fmt(row.scores.fkgl) << " | "
                      << fmt(row.scores.fre) << " | " << row.scores.fre_band << " | "
                      << fmt(row.scores.ari) << " | " << fmt(row.scores.dale_chall) << " | "
                      << row.scores.dale_chall_band << " |\n";
        }
    } else if (global.format == "csv") {
        std::cout << csv::make_row({"file", "flesch_kincaid", "flesch_reading_ease", "fre_band",
                                    "ari", "dale_chall", "dale_chall_band"});
        for (const Row& row : rows) {
            std::cout << csv::make_row({row.id, fmt(row.scores.fkgl), fmt(row.scores.fre),
                                        row.scores.fre_band, fmt(row.scores.ari),
                                        fmt(row.scores.dale_chall), row.scores.dale_chall_band});
        }
    } else if (global.format == "text" || global.format == "txt") {
        for (const Row& row : rows) {
            std::cout << row.id << "\n"
                      << "  Flesch-Kincaid       " << fmt(row.scores.fkgl) << "\n"
                      << "  Flesch Reading Ease  " << fmt(row.scores.fre) << " ("
                      << row.scores.fre_band << ")\n"
                      << "  ARI                  " << fmt(row.scores.ari) << "\n"
                      << "  Dale-Chall           " << fmt(row.scores.dale_chall) << " ("
                      << row.scores.dale_chall_band << ")\n";
        }
    } else {
        throw UnknownFormat(global.format);
    }
    return failures == 0 ? 0 : 1;
}

int run_check(const std::vector<std::string>& files, const Config& config) {
    const Lexicon lexicon = load_lexicon(config);
    const auto inputs = collect_text_inputs(files);
    int failures = 0;
    for (const auto& [id, text] : inputs) {
        try {
            const auto sentences = split_sentences(text);
            const TextMetrics metrics = compute_metrics(text, lexicon);
            const ComplianceReport report = check_compliance(text, metrics, sentences);
            if (report.passed) {
                std::cout << id << ": PASS\n";
                continue;
            }
            ++failures;
            std::cout << id << ": FAIL\n";
            if (!report.fre_ok) {
                std::cout << "  Flesch Reading Ease " << detail::fmt2(flesch_reading_ease(metrics))
                          << " is below 50\n";
            }
            for (const auto& [index, words] : report.long_sentences) {
                std::cout << "  sentence " << index << ": " << words
                          << " words (limit 20)\n";
            }
            for (const auto& [index, token] : report.contractions) {
                std::cout << "  sentence " << index << ": contraction \"" << token << "\"\n";
            }
        } catch (const EmptyText& e) {
            ++failures;
            std::cout << id << ": FAIL\n  " << e.what() << "\n";
        }
    }
    return failures == 0 ? 0 : 1;
}

// ----------------------------------------------------------------------
// corpus pipeline
// ----------------------------------------------------------------------

int run_ingest(const Config& config) {
    const IngestResult result = ingest_dir(config.corpus_dir);
    for (const Document& doc : result.documents) {
        std::cout << doc.id << "\t" << doc.word_count << "\n";
    }
    for (const auto& [path, reason] : result.skipped) {
        std::cerr << "skipped " << path << ": " << reason << "\n";
    }
    std::cerr << "ingested " << result.documents.size() << " documents ("
              << result.skipped.size() << " skipped)\n";
    if (result.documents.empty()) std::cerr << "warning: corpus is empty\n";
    return 0;
}

int run_sample(const Config& config, const GlobalOptions& global, std::optional<int> n,
               std::optional<int> min_words, std::optional<int> max_words,
               const std::string& out_path) {
    const IngestResult ingest = ingest_dir(config.corpus_dir);
    const std::uint64_t seed = global.seed_override.value_or(config.sample.seed);
    const auto excerpts = sample_excerpts(
        ingest.documents, n.value_or(config.sample.n), min_words.value_or(config.sample.min_words),
        max_words.value_or(config.sample.max_words), seed);
    const std::string csv_text = excerpts_to_csv(excerpts);
    if (out_path.empty()) {
        std::cout << csv_text;
    } else {
        write_file(out_path, csv_text);
        std::cerr << "wrote " << excerpts.size() << " excerpts to " << out_path << "\n";
    }
    return 0;
}

// ----------------------------------------------------------------------
// dataset pipeline
// ----------------------------------------------------------------------

int run_build_dataset(const Config& config, const std::string& excerpts_path,
                      const std::string& out_path, const std::string& template_id) {
    const TemplateLibrary templates = load_templates(config);
    const auto excerpts = load_excerpts(excerpts_path);
    const auto records =
        build_records(excerpts, config.system_message, templates.get(template_id));
    write_jsonl(records, out_path);
    std::cerr << "wrote " << records.size() << " records to " << out_path << "\n";
    return 0;
}

int run_split(const Config& config, const GlobalOptions& global, const std::string& in_path,
              std::optional<double> ratio, const std::string& train_out,
              const std::string& test_out) {
    const auto records = read_jsonl(in_path);
    const std::uint64_t seed = global.seed_override.value_or(config.sample.seed);
    const SplitDataset split =
        split_records(records, ratio.value_or(config.split_ratio), seed);
    write_jsonl(split.train, train_out);
    write_jsonl(split.test, test_out);
    std::cerr << "split " << records.size() << " records into " << split.train.size()
              << " train / " << split.test.size() << " test (seed " << seed << ")\n";
    if (split.test.empty()) {
        std::cerr << "warning: test set is empty at this ratio and record count\n";
    }
    return 0;
}

// ----------------------------------------------------------------------
// model interaction
// ----------------------------------------------------------------------

int run_revise(const Config& config, const GlobalOptions& global,
               const std::vector<std::string>& files, const std::string& excerpts_path,
               const std::string& out_path, const std::string& template_id,
               const std::string& model) {
    Client client = make_client(config, global);
    if (!excerpts_path.empty()) {
        if (out_path.empty()) {
            throw ConfigError("revise --excerpts requires --out for the revised CSV");
        }
        auto excerpts = load_excerpts(excerpts_path);
        std::vector<std::string> texts;
        texts.reserve(excerpts.size());
        for (const Excerpt& ex : excerpts) texts.push_back(ex.text);
        const auto revisions = client.revise_batch(texts, template_id, model);
        for (std::size_t i = 0; i < excerpts.size(); ++i) {
            excerpts[i].revised_text = revisions[i];
        }
        save_excerpts(excerpts, out_path);
        std::cerr << "revised " << excerpts.size() << " excerpts to " << out_path << "\n";
    } else {
        const auto inputs = collect_text_inputs(files);
        if (inputs.empty()) throw EmptyInput("revise needs files or --excerpts");
        std::vector<std::string> texts;
        for (const auto& [id, text] : inputs) texts.push_back(text);
        const auto revisions = client.revise_batch(texts, template_id, model);
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            if (inputs.size() > 1) std::cout << "--- " << inputs[i].first << " ---\n";
            std::cout << revisions[i] << "\n";
        }
    }
    std::cerr << "network calls: " << client.network_calls() << "\n";
    return 0;
}

int run_finetune_submit(const Config& config, const GlobalOptions& global,
                        const std::string& file, const std::string& base_model,
                        std::optional<int> epochs, std::optional<int> batch_size) {
    Client client = make_client(config, global);
    const std::string file_id = client.upload_training_file(file);
    std::cerr << "uploaded " << file << " as " << file_id << "\n";
    const FineTuneJob job = client.submit_finetune(
        file_id, base_model.empty() ? config.api.model : base_model, epochs, batch_size);
    std::cout << job.job_id << "\t" << job_status_name(job.status) << "\n";
    std::cerr << "network calls: " << client.network_calls() << "\n";
    return 0;
}

int run_finetune_status(const Config& config, const GlobalOptions& global,
                        const std::string& job_id, bool wait, int interval_ms, int timeout_ms) {
    Client client = make_client(config, global);
    const FineTuneJob job =
        wait ? client.poll_job(job_id, std::chrono::milliseconds(interval_ms),
                               std::chrono::milliseconds(timeout_ms))
             : client.get_job(job_id);
    std::cout << job.job_id << "\t" << job_status_name(job.status);
    if (job.fine_tuned_model) std::cout << "\t" << *job.fine_tuned_model;
    std::cout << "\n";
    std::cerr << "network calls: " << client.network_calls() << "\n";
    return 0;
}

// ----------------------------------------------------------------------
// evaluation
// ----------------------------------------------------------------------

/// A sample source is a directory of .txt files, an excerpt CSV, or a
/// single text file. With use_revised, the CSV's revised_text column is
/// scored instead of the original text.
std::vector<std::pair<std::string, std::string>> load_samples(const std::string& source,
                                                              bool use_revised) {
    const fs::path path(source);
    std::vector<std::pair<std::string, std::string>> samples;
    if (fs::is_directory(path)) {
        for (const Document& doc : ingest_dir(path).documents) {
            samples.emplace_back(doc.id, doc.text);
        }
        return samples;
    }
    if (path.extension() == ".csv") {
        for (const Excerpt& ex : load_excerpts(path)) {
            if (use_revised) {
                if (!ex.revised_text) throw MissingRevision(ex.id);
                samples.emplace_back(ex.id, *ex.revised_text);
            } else {
                samples.emplace_back(ex.id, ex.text);
            }
        }
        return samples;
    }
    samples.emplace_back(source, read_file(path));
    return samples;
}

void emit_report(const ReportInputs& inputs, const GlobalOptions& global,
                 const std::string& out_path) {
    const std::string rendered = render_report(inputs, parse_report_format(global.format));
    if (out_path.empty()) {
        std::cout << rendered;
    } else {
        write_file(out_path, rendered);
        std::cerr << "wrote report to " << out_path << "\n";
    }
}

AggregateStats score_source(const std::string& source, bool use_revised, const Lexicon& lexicon,
                            SourceSet set) {
    const ScoreSetResult result = score_set(load_samples(source, use_revised), lexicon, set);
    for (const auto& [id, reason] : result.skipped) {
        std::cerr << "skipped " << id << ": " << reason << "\n";
    }
    return aggregate(result.scored);
}

int run_evaluate(const Config& config, const GlobalOptions& global, const std::string& baseline,
                 const std::string& candidate, bool baseline_revised, bool candidate_revised,
                 const std::string& out_path) {
    const Lexicon lexicon = load_lexicon(config);
    const AggregateStats base =
        score_source(baseline, baseline_revised, lexicon, SourceSet::kBaselineModel);
    const AggregateStats cand =
        score_source(candidate, candidate_revised, lexicon, SourceSet::kCandidateModel);
    ReportInputs inputs;
    inputs.sample_blocks.emplace_back("baseline", base);
    inputs.sample_blocks.emplace_back("candidate", cand);
    inputs.comparison = compare(base, cand);
    emit_report(inputs, global, out_path);
    return 0;
}

int run_report(const Config& config, const GlobalOptions& global, const std::string& corpus,
               const std::string& baseline, const std::string& candidate, bool baseline_revised,
               bool candidate_revised, const std::string& rubric_path,
               const std::string& out_path) {
    if (corpus.empty() && baseline.empty() && candidate.empty() && rubric_path.empty()) {
        throw EmptyInput("report needs at least one of --corpus/--baseline/--candidate/--rubric");
    }
    const Lexicon lexicon = load_lexicon(config);
    ReportInputs inputs;
    std::optional<AggregateStats> base;
    std::optional<AggregateStats> cand;
    if (!corpus.empty()) {
        inputs.sample_blocks.emplace_back(
            "corpus", score_source(corpus, false, lexicon, SourceSet::kCorpus));
    }
    if (!baseline.empty()) {
        base = score_source(baseline, baseline_revised, lexicon, SourceSet::kBaselineModel);
        inputs.sample_blocks.emplace_back("baseline", *base);
    }
    if (!candidate.empty()) {
        cand = score_source(candidate, candidate_revised, lexicon, SourceSet::kCandidateModel);
        inputs.sample_blocks.emplace_back("candidate", *cand);
    }
    if (base && cand) inputs.comparison = compare(*base, *cand);
    if (!rubric_path.empty()) {
        inputs.rubric = aggregate_rubric(ingest_rubric(rubric_path));
    }
    emit_report(inputs, global, out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hazelkit: readability and revision toolkit for guidance prose"};
    app.require_subcommand(1);

    GlobalOptions global;
    auto* config_opt =
        app.add_option("--config", global.config_path, "config file (default ./hazelkit.json)");
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "override the configured seed");
    app.add_option("--format", global.format, "output format: text, md, csv");
    app.add_flag("--offline", global.offline, "answer API calls from recorded fixtures");
    app.add_option("--fixtures", global.fixtures_dir, "fixture directory for --offline");
    app.fallthrough();

    int exit_code = 0;
    auto guarded = [&](auto&& fn) {
        return [&, fn]() {
            global.config_path_explicit = config_opt->count() > 0;
            if (seed_opt->count() > 0) global.seed_override = seed_value;
            exit_code = fn(load_effective_config(global));
        };
    };

    // score
    auto* score_cmd = app.add_subcommand("score", "readability scores for files or stdin (-)");
    auto score_files = std::make_shared<std::vector<std::string>>();
    score_cmd->add_option("files", *score_files, "text files, directories, or -")->required();
    score_cmd->callback(
        guarded([&](const Config& config) { return run_score(*score_files, global, config); }));

    // check
    auto* check_cmd = app.add_subcommand("check", "editorial compliance gate");
    auto check_files = std::make_shared<std::vector<std::string>>();
    check_cmd->add_option("files", *check_files, "text files, directories, or -")->required();
    check_cmd->callback(
        guarded([&](const Config& config) { return run_check(*check_files, config); }));

    // ingest
    auto* ingest_cmd = app.add_subcommand("ingest", "load and clean the corpus directory");
    ingest_cmd->callback(guarded([&](const Config& config) { return run_ingest(config); }));

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "draw sentence-aligned excerpts");
    auto sample_n = std::make_shared<std::optional<int>>();
    auto sample_min = std::make_shared<std::optional<int>>();
    auto sample_max = std::make_shared<std::optional<int>>();
    auto sample_out = std::make_shared<std::string>();
    sample_cmd->add_option("--n", *sample_n, "number of excerpts");
    sample_cmd->add_option("--min", *sample_min, "minimum words per excerpt");
    sample_cmd->add_option("--max", *sample_max, "maximum words per excerpt");
    sample_cmd->add_option("--out", *sample_out, "output CSV path (default stdout)");
    sample_cmd->callback(guarded([&](const Config& config) {
        return run_sample(config, global, *sample_n, *sample_min, *sample_max, *sample_out);
    }));

    // build-dataset
    auto* build_cmd = app.add_subcommand("build-dataset", "excerpt CSV to JSONL records");
    auto build_excerpts = std::make_shared<std::string>();
    auto build_out = std::make_shared<std::string>();
    auto build_template = std::make_shared<std::string>("plain-english");
    build_cmd->add_option("--excerpts", *build_excerpts, "excerpt CSV with revised_text")
        ->required();
    build_cmd->add_option("--out", *build_out, "output JSONL path")->required();
    build_cmd->add_option("--template", *build_template, "prompt template id");
    build_cmd->callback(guarded([&](const Config& config) {
        return run_build_dataset(config, *build_excerpts, *build_out, *build_template);
    }));

    // split
    auto* split_cmd = app.add_subcommand("split", "train/test split of a JSONL dataset");
    auto split_in = std::make_shared<std::string>();
    auto split_ratio = std::make_shared<std::optional<double>>();
    auto split_train = std::make_shared<std::string>();
    auto split_test = std::make_shared<std::string>();
    split_cmd->add_option("--in", *split_in, "input JSONL")->required();
    split_cmd->add_option("--ratio", *split_ratio, "train fraction (default from config)");
    split_cmd->add_option("--train-out", *split_train, "train JSONL path")->required();
    split_cmd->add_option("--test-out", *split_test, "test JSONL path")->required();
    split_cmd->callback(guarded([&](const Config& config) {
        return run_split(config, global, *split_in, *split_ratio, *split_train, *split_test);
    }));

    // revise
    auto* revise_cmd = app.add_subcommand("revise", "model revision of files or excerpt CSVs");
    auto revise_files = std::make_shared<std::vector<std::string>>();
    auto revise_excerpts = std::make_shared<std::string>();
    auto revise_out = std::make_shared<std::string>();
    auto revise_template = std::make_shared<std::string>("plain-english");
    auto revise_model = std::make_shared<std::string>();
    revise_cmd->add_option("files", *revise_files, "text files or -");
    revise_cmd->add_option("--excerpts", *revise_excerpts, "excerpt CSV to revise");
    revise_cmd->add_option("--out", *revise_out, "output CSV for --excerpts");
    revise_cmd->add_option("--template", *revise_template, "prompt template id");
    revise_cmd->add_option("--model", *revise_model, "model override");
    revise_cmd->callback(guarded([&](const Config& config) {
        return run_revise(config, global, *revise_files, *revise_excerpts, *revise_out,
                          *revise_template, *revise_model);
    }));

    // finetune submit|status
    auto* finetune_cmd = app.add_subcommand("finetune", "fine-tuning jobs");
    finetune_cmd->require_subcommand(1);
    auto* submit_cmd = finetune_cmd->add_subcommand("submit", "validate, upload, and submit");
    auto submit_file = std::make_shared<std::string>();
    auto submit_model = std::make_shared<std::string>();
    auto submit_epochs = std::make_shared<std::optional<int>>();
    auto submit_batch = std::make_shared<std::optional<int>>();
    submit_cmd->add_option("--file", *submit_file, "training JSONL")->required();
    submit_cmd->add_option("--base-model", *submit_model, "base model (default from config)");
    submit_cmd->add_option("--epochs", *submit_epochs, "training epochs");
    submit_cmd->add_option("--batch-size", *submit_batch, "batch size");
    submit_cmd->callback(guarded([&](const Config& config) {
        return run_finetune_submit(config, global, *submit_file, *submit_model, *submit_epochs,
                                   *submit_batch);
    }));
    auto* status_cmd = finetune_cmd->add_subcommand("status", "query or await a job");
    auto status_job = std::make_shared<std::string>();
    auto status_wait = std::make_shared<bool>(false);
    auto status_interval = std::make_shared<int>(2000);
    auto status_timeout = std::make_shared<int>(600000);
    status_cmd->add_option("--job", *status_job, "job id")->required();
    status_cmd->add_flag("--wait", *status_wait, "poll until the job is terminal");
    status_cmd->add_option("--interval-ms", *status_interval, "poll interval");
    status_cmd->add_option("--timeout-ms", *status_timeout, "poll timeout");
    status_cmd->callback(guarded([&](const Config& config) {
        return run_finetune_status(config, global, *status_job, *status_wait, *status_interval,
                                   *status_timeout);
    }));

    // evaluate
    auto* evaluate_cmd = app.add_subcommand("evaluate", "aggregate and compare two sample sets");
    auto eval_baseline = std::make_shared<std::string>();
    auto eval_candidate = std::make_shared<std::string>();
    auto eval_baseline_revised = std::make_shared<bool>(false);
    auto eval_candidate_revised = std::make_shared<bool>(false);
    auto eval_out = std::make_shared<std::string>();
    evaluate_cmd->add_option("--baseline", *eval_baseline, "dir, CSV, or file")->required();
    evaluate_cmd->add_option("--candidate", *eval_candidate, "dir, CSV, or file")->required();
    evaluate_cmd->add_flag("--baseline-revised", *eval_baseline_revised,
                           "score the baseline CSV's revised_text column");
    evaluate_cmd->add_flag("--candidate-revised", *eval_candidate_revised,
                           "score the candidate CSV's revised_text column");
    evaluate_cmd->add_option("--out", *eval_out, "write the report to a file");
    evaluate_cmd->callback(guarded([&](const Config& config) {
        return run_evaluate(config, global, *eval_baseline, *eval_candidate,
                            *eval_baseline_revised, *eval_candidate_revised, *eval_out);
    }));

    // report
    auto* report_cmd = app.add_subcommand("report", "full readability and rubric report");
    auto report_corpus = std::make_shared<std::string>();
    auto report_baseline = std::make_shared<std::string>();
    auto report_candidate = std::make_shared<std::string>();
    auto report_baseline_revised = std::make_shared<bool>(false);
    auto report_candidate_revised = std::make_shared<bool>(false);
    auto report_rubric = std::make_shared<std::string>();
    auto report_out = std::make_shared<std::string>();
    report_cmd->add_option("--corpus", *report_corpus, "corpus sample: dir, CSV, or file");
    report_cmd->add_option("--baseline", *report_baseline, "baseline set: dir, CSV, or file");
    report_cmd->add_option("--candidate", *report_candidate, "candidate set: dir, CSV, or file");
    report_cmd->add_flag("--baseline-revised", *report_baseline_revised,
                         "score the baseline CSV's revised_text column");
    report_cmd->add_flag("--candidate-revised", *report_candidate_revised,
                         "score the candidate CSV's revised_text column");
    report_cmd->add_option("--rubric", *report_rubric, "rubric score CSV");
    report_cmd->add_option("--out", *report_out, "write the report to a file");
    report_cmd->callback(guarded([&](const Config& config) {
        return run_report(config, global, *report_corpus, *report_baseline, *report_candidate,
                          *report_baseline_revised, *report_candidate_revised, *report_rubric,
                          *report_out);
    }));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints contextual help, exits 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the usage error to stderr
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
