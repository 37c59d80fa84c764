// Acceptance suite: runs every acceptance criterion end to end and prints
// one PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hazelkit/corpus.hpp"
#include "hazelkit/dataset.hpp"
#include "hazelkit/evaluation.hpp"
#include "hazelkit/llm.hpp"
#include "hazelkit/random.hpp"
#include "hazelkit/readability.hpp"
#include "hazelkit/text.hpp"
#include "testutil.hpp"

using namespace hazelkit;
namespace fs = std::filesystem;

namespace {

const std::string kBin = HAZELKIT_BIN;
const std::string kGoldenDir = HAZELKIT_GOLDEN_DIR;

void require(bool condition, const std::string& message) {
    if (!condition) throw std::runtime_error(message);
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::size_t count_lines(const std::string& text) {
    std::size_t lines = 0;
    for (const char c : text) {
        if (c == '\n') ++lines;
    }
    return lines;
}

TextMetrics random_metrics(rng::Engine& engine) {
    auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(engine()) /
                                 static_cast<double>(UINT64_MAX));
    };
    TextMetrics m;
    m.asl = uniform(1.0, 60.0);
    m.asw = uniform(0.8, 4.0);
    m.acw = uniform(1.0, 10.0);
    m.pdw = uniform(0.0, 100.0);
    return m;
}

// --------------------------------------------------------------------
// 1. Formula exactness against a brute-force re-evaluation
// --------------------------------------------------------------------
void criterion_formula_exactness() {
    const auto start = std::chrono::steady_clock::now();
    rng::Engine engine(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const TextMetrics m = random_metrics(engine);
        const double fkgl = (0.39 * m.asl) + (11.8 * m.asw) - 15.59;
        const double fre = 206.835 - (1.015 * m.asl) - (84.6 * m.asw);
        const double ari = (4.71 * m.acw) + (0.5 * m.asl) - 21.43;
        double dc = (0.1579 * m.pdw) + (0.0496 * m.asl);
        if (m.pdw > 5.0) dc += 3.6365;
        require(std::fabs(flesch_kincaid(m) - fkgl) <= 1e-9, "FKGL mismatch");
        require(std::fabs(flesch_reading_ease(m) - fre) <= 1e-9, "FRE mismatch");
        require(std::fabs(automated_readability_index(m) - ari) <= 1e-9, "ARI mismatch");
        require(std::fabs(dale_chall(m) - dc) <= 1e-9, "Dale-Chall mismatch");
    }
    require(elapsed_seconds(start) < 1.0, "formula suite exceeded 1 s");
}

// --------------------------------------------------------------------
// 2. Hand-derived oracle values
// --------------------------------------------------------------------
void criterion_hand_oracles() {
    TextMetrics m;
    auto check = [](double actual, double expected, const char* what) {
        require(std::fabs(actual - expected) <= 1e-9, std::string(what) + " off");
    };
    m.asl = 10; m.asw = 1.5;
    check(flesch_kincaid(m), 6.01, "FKGL(10,1.5)");
    m.asl = 1; m.asw = 1;
    check(flesch_reading_ease(m), 121.22, "FRE(1,1)");
    m.asl = 20; m.asw = 1.6;
    check(flesch_reading_ease(m), 51.175, "FRE(20,1.6)");
    m.asl = 20; m.acw = 5;
    check(automated_readability_index(m), 12.12, "ARI(5,20)");
    m.asl = 15; m.pdw = 10;
    check(dale_chall(m), 5.9595, "DC(10,15)");
    m.asl = 10; m.pdw = 0;
    check(dale_chall(m), 0.496, "DC(0,10)");
}

// --------------------------------------------------------------------
// 3. Band fidelity
// --------------------------------------------------------------------
void criterion_bands() {
    require(band(Formula::kFleschReadingEase, 55) == "standard", "FRE 55 band");
    require(band(Formula::kFleschReadingEase, 25) == "scientific", "FRE 25 band");
    require(band(Formula::kDaleChall, 9.5) == "university", "Dale-Chall 9.5 band");
}

// --------------------------------------------------------------------
// 4. Direction of effect, end to end through the CLI
// --------------------------------------------------------------------
void criterion_direction_of_effect() {
    const auto start = std::chrono::steady_clock::now();
    testutil::TempDir dir;
    const fs::path difficult = dir.path() / "difficult";
    const fs::path simple = dir.path() / "simple";
    fs::create_directories(difficult);
    fs::create_directories(simple);
    for (int d = 0; d < 6; ++d) {
        testutil::write_file(difficult / ("d" + std::to_string(d) + ".txt"),
                             testutil::difficult_document(8));
        testutil::write_file(simple / ("s" + std::to_string(d) + ".txt"),
                             testutil::simple_document(30));
    }
    const auto result = testutil::run_process(
        kBin + " evaluate --baseline " + difficult.string() + " --candidate " +
            simple.string() + " --format csv",
        dir.path());
    require(result.exit_code == 0, "evaluate failed: " + result.err);

    std::map<std::string, double> mean_delta;
    std::map<std::string, std::string> direction;
    for (const auto& row : csv::parse(result.out)) {
        if (row.size() == 5 && row[0] == "comparison" && row[2] == "mean_delta") {
            mean_delta[row[3]] = std::stod(row[4]);
        }
        if (row.size() == 5 && row[0] == "comparison" && row[2] == "direction") {
            direction[row[3]] = row[4];
        }
    }
    require(mean_delta.at("Flesch-Kincaid") < 0, "FKGL did not decrease");
    require(mean_delta.at("ARI") < 0, "ARI did not decrease");
    require(mean_delta.at("Dale-Chall") < 0, "Dale-Chall did not decrease");
    require(mean_delta.at("Flesch Reading Ease") > 0, "FRE did not increase");
    for (const auto& [formula, label] : direction) {
        require(label == "more readable", formula + " not labeled more readable");
    }
    require(elapsed_seconds(start) < 10.0, "direction check exceeded 10 s");
}

// --------------------------------------------------------------------
// 5. Table structure reproduction against a golden report
// --------------------------------------------------------------------
std::string fixed_excerpt_csv(const std::vector<std::string>& texts, const std::string& doc) {
    std::vector<Excerpt> excerpts;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        Excerpt ex;
        ex.id = doc + "-" + std::to_string(i);
        ex.document_id = doc;
        ex.sentence_start = static_cast<int>(i);
        ex.sentence_end = static_cast<int>(i);
        ex.text = texts[i];
        ex.word_count = static_cast<int>(tokenize_words(texts[i]).size());
        excerpts.push_back(std::move(ex));
    }
    return excerpts_to_csv(excerpts);
}

void criterion_table_structure() {
    testutil::TempDir dir;
    testutil::write_file(
        dir.file("corpus.csv"),
        fixed_excerpt_csv({"Comprehensive rehabilitation of deteriorating architectural "
                           "infrastructure necessitates systematic methodological analysis. "
                           "Substantial administrative coordination underpins organisational "
                           "implementation throughout restoration programmes.",
                           "Considerable documentation accompanies architectural conservation "
                           "interventions. Professional practitioners evaluate deterioration "
                           "mechanisms before undertaking consolidation."},
                          "corpus"));
    testutil::write_file(
        dir.file("baseline.csv"),
        fixed_excerpt_csv({"Repairing older buildings requires careful planning. Teams work "
                           "through each stage with clear records.",
                           "Good repairs need sound surveys first. Specialists check damage "
                           "before they begin the work."},
                          "baseline"));
    testutil::write_file(dir.file("candidate.csv"),
                         fixed_excerpt_csv({testutil::simple_document(4),
                                            testutil::simple_document(5)},
                                           "candidate"));

    std::string rubric =
        "sample_id,rater_id,chatbot,style_tone,clarity,readability_accessibility,"
        "diversity_inclusion,overall_suitability\n";
    for (int i = 0; i < 15; ++i) {
        rubric += "h" + std::to_string(i) + ",r1,HAZEL,4,4," +
                  std::string(i == 0 ? "5" : "4") + ",4,4\n";
    }
    for (int i = 0; i < 10; ++i) {
        rubric += "c" + std::to_string(i) + ",r1,ChatGPT," + std::string(i < 5 ? "4" : "3") +
                  ",4,4,4,3\n";
    }
    testutil::write_file(dir.file("rubric.csv"), rubric);

    const fs::path out = dir.file("report.md");
    const auto result = testutil::run_process(
        kBin + " report --corpus " + dir.file("corpus.csv").string() + " --baseline " +
            dir.file("baseline.csv").string() + " --candidate " +
            dir.file("candidate.csv").string() + " --rubric " +
            dir.file("rubric.csv").string() + " --format md --out " + out.string(),
        dir.path());
    require(result.exit_code == 0, "report failed: " + result.err);

    const std::string rendered = testutil::read_file(out);
    // structure: three sample blocks x 3 stat rows, and 2 chatbots x 3 rows
    for (const std::string block : {"corpus", "baseline", "candidate"}) {
        for (const std::string stat : {"mean", "median", "sd"}) {
            require(rendered.find("| " + block + " | " + stat + " |") != std::string::npos,
                    "missing row " + block + "/" + stat);
        }
    }
    require(rendered.find("| HAZEL | mean |") != std::string::npos, "missing HAZEL rows");
    require(rendered.find("| ChatGPT | mean |") != std::string::npos, "missing ChatGPT rows");
    require(rendered.find("Readability & Accessibility") != std::string::npos,
            "missing rubric category header");

    const std::string golden = testutil::read_file(kGoldenDir + "/report.md");
    require(!golden.empty(), "golden report missing");
    require(rendered == golden, "report differs from golden file");
}

// --------------------------------------------------------------------
// 6. Aggregation oracle
// --------------------------------------------------------------------
void criterion_aggregation_oracle() {
    rng::Engine engine(99);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(rng::uniform_below(engine, 41));
        std::vector<double> values;
        for (int i = 0; i < n; ++i) {
            values.push_back(-100.0 + 250.0 * (static_cast<double>(engine()) /
                                               static_cast<double>(UINT64_MAX)));
        }
        std::vector<ScoredSample> samples;
        for (const double v : values) {
            ScoredSample s;
            s.scores.fkgl = s.scores.fre = s.scores.ari = s.scores.dale_chall = v;
            samples.push_back(std::move(s));
        }
        const FormulaStats got = aggregate(samples).per_formula.at(Formula::kFleschKincaid);

        double sum = 0.0;
        for (const double v : values) sum += v;
        const double mean = sum / n;
        std::vector<double> sorted = values;
        std::sort(sorted.begin(), sorted.end());
        const double median =
            (n % 2 == 1) ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
        require(std::fabs(got.mean - mean) <= 1e-9, "mean mismatch");
        require(std::fabs(got.median - median) <= 1e-9, "median mismatch");
        if (n < 2) {
            require(!got.sd.has_value(), "sd should be absent for n=1");
        } else {
            double ss = 0.0;
            for (const double v : values) ss += (v - mean) * (v - mean);
            require(got.sd.has_value(), "sd missing");
            require(std::fabs(*got.sd - std::sqrt(ss / (n - 1))) <= 1e-9, "sd mismatch");
        }
    }
}

// --------------------------------------------------------------------
// 7. Sampling contract through the CLI
// --------------------------------------------------------------------
void criterion_sampling_contract() {
    testutil::TempDir dir;
    const fs::path corpus = dir.path() / "corpus";
    testutil::write_synthetic_corpus(corpus, 10, 3200, 77);
    testutil::write_file(dir.file("hazelkit.json"),
                         "{\"corpus_dir\": \"" + corpus.string() + "\"}");
    const std::string cmd = kBin + " sample --config " + dir.file("hazelkit.json").string() +
                            " --n 15 --min 250 --max 300 --seed 42 --out ";
    const fs::path first = dir.file("first.csv");
    const fs::path second = dir.file("second.csv");
    auto result = testutil::run_process(cmd + first.string(), dir.path());
    require(result.exit_code == 0, "first sample run failed: " + result.err);
    result = testutil::run_process(cmd + second.string(), dir.path());
    require(result.exit_code == 0, "second sample run failed: " + result.err);
    const std::string bytes_first = testutil::read_file(first);
    require(bytes_first == testutil::read_file(second), "sample output not byte-identical");

    const auto excerpts = load_excerpts(first);
    require(excerpts.size() == 15, "expected 15 excerpts");
    std::map<std::string, std::vector<Sentence>> sentences;
    for (const Document& doc : ingest_dir(corpus).documents) {
        sentences[doc.id] = split_sentences(doc.text);
    }
    std::map<std::string, std::set<int>> used;
    for (const Excerpt& ex : excerpts) {
        require(ex.word_count >= 250 && ex.word_count <= 300, "word count out of bounds");
        std::string joined;
        for (int s = ex.sentence_start; s <= ex.sentence_end; ++s) {
            if (s > ex.sentence_start) joined += ' ';
            joined += sentences.at(ex.document_id)[static_cast<std::size_t>(s)].text;
            require(used[ex.document_id].insert(s).second, "excerpts overlap");
        }
        require(joined == ex.text, "excerpt is not sentence-aligned");
    }
}

// --------------------------------------------------------------------
// 8. JSONL wire fidelity
// --------------------------------------------------------------------
void criterion_jsonl_fidelity() {
    testutil::TempDir dir;
    TrainingRecord r1;
    r1.system_message = "You assist.";
    r1.user_message = "Revise:\nBe brief.";
    r1.assistant_message = "Short text.";
    TrainingRecord r2;
    r2.system_message = "You assist.";
    r2.user_message = "Say \"hi\" – émigré test";
    r2.assistant_message = "Done.";
    const fs::path out = dir.file("dataset.jsonl");
    write_jsonl({r1, r2}, out);
    require(testutil::read_file(out) == testutil::read_file(kGoldenDir + "/dataset.jsonl"),
            "JSONL bytes differ from golden fixture");
    require(validate_jsonl(out).passed, "write -> validate must pass");

    const std::string good_line = to_jsonl_line(r1);
    const std::string corrupted =
        "not json\n" +
        std::string(R"({"messages":[{"role":"user","content":"b"},{"role":"system","content":"a"},{"role":"assistant","content":"c"}]})") +
        "\n" +
        std::string(R"({"messages":[{"content":"a"},{"role":"user","content":"b"},{"role":"assistant","content":"c"}]})") +
        "\n" + good_line + "\n";
    const fs::path bad = dir.file("bad.jsonl");
    testutil::write_file(bad, corrupted);
    const JsonlValidation validation = validate_jsonl(bad);
    require(!validation.passed, "corrupted file must fail validation");
    std::set<std::string> kinds;
    for (const JsonlDiagnostic& d : validation.diagnostics) {
        kinds.insert(jsonl_diagnostic_name(d.kind));
    }
    require(kinds.count("MalformedJson") == 1, "MalformedJson diagnostic missing");
    require(kinds.count("BadRoleOrder") == 1, "BadRoleOrder diagnostic missing");
    require(kinds.count("MissingKey") == 1, "MissingKey diagnostic missing");
}

// --------------------------------------------------------------------
// 9. Offline pipeline with zero network calls
// --------------------------------------------------------------------
void criterion_offline_pipeline() {
    const auto start = std::chrono::steady_clock::now();
    testutil::TempDir dir;
    const fs::path corpus = dir.path() / "corpus";
    const fs::path fixtures = dir.path() / "fixtures";
    testutil::write_synthetic_corpus(corpus, 10, 9000, 123);
    fs::create_directories(fixtures);

    nlohmann::ordered_json config;
    config["corpus_dir"] = corpus.string();
    config["sample"] = {{"n", 150}, {"min_words", 250}, {"max_words", 300}, {"seed", 42}};
    config["split_ratio"] = 0.8;
    config["api"] = {{"base_url", "http://replay.invalid"},
                     {"model", "test-model"},
                     {"temperature", 0.0},
                     {"max_in_flight", 4},
                     {"fixtures_dir", fixtures.string()}};
    const fs::path config_path = dir.file("hazelkit.json");
    testutil::write_file(config_path, config.dump(2));
    const std::string base = kBin + " --config " + config_path.string();

    // ingest
    auto result = testutil::run_process(base + " ingest", dir.path());
    require(result.exit_code == 0, "ingest failed: " + result.err);

    // sample
    const fs::path excerpts_csv = dir.file("excerpts.csv");
    result = testutil::run_process(base + " sample --out " + excerpts_csv.string(), dir.path());
    require(result.exit_code == 0, "sample failed: " + result.err);
    const auto excerpts = load_excerpts(excerpts_csv);
    require(excerpts.size() == 150, "expected 150 excerpts");

    // prepare replay fixtures for every revise request the CLI will send
    ClientConfig client_config;
    client_config.model = "test-model";
    client_config.temperature = 0.0;
    Client fixture_builder(client_config, std::make_shared<ReplayTransport>(fixtures));
    for (std::size_t i = 0; i < excerpts.size(); ++i) {
        const ChatRequest request =
            fixture_builder.build_revise_request(excerpts[i].text, "plain-english");
        HttpRequest http{"POST", "/v1/chat/completions", "application/json",
                         serialize_chat_request(request)};
        record_fixture(fixtures, http,
                       {200, testutil::chat_completion_body(
                                 testutil::simple_document(8 + static_cast<int>(i % 5)))});
    }

    // revise offline
    const fs::path revised_csv = dir.file("revised.csv");
    result = testutil::run_process(base + " revise --excerpts " + excerpts_csv.string() +
                                       " --template plain-english --offline --out " +
                                       revised_csv.string(),
                                   dir.path());
    require(result.exit_code == 0, "revise failed: " + result.err);
    require(result.err.find("network calls: 0") != std::string::npos,
            "transport counter must be zero, got: " + result.err);

    // build-dataset
    const fs::path dataset = dir.file("dataset.jsonl");
    result = testutil::run_process(base + " build-dataset --excerpts " + revised_csv.string() +
                                       " --out " + dataset.string(),
                                   dir.path());
    require(result.exit_code == 0, "build-dataset failed: " + result.err);
    require(count_lines(testutil::read_file(dataset)) == 150, "expected 150 records");
    require(validate_jsonl(dataset).passed, "dataset must validate");

    // split 120/30
    const fs::path train = dir.file("train.jsonl");
    const fs::path test = dir.file("test.jsonl");
    result = testutil::run_process(base + " split --in " + dataset.string() +
                                       " --ratio 0.8 --seed 7 --train-out " + train.string() +
                                       " --test-out " + test.string(),
                                   dir.path());
    require(result.exit_code == 0, "split failed: " + result.err);
    require(count_lines(testutil::read_file(train)) == 120, "expected 120 train records");
    require(count_lines(testutil::read_file(test)) == 30, "expected 30 test records");

    // evaluate original vs revised
    result = testutil::run_process(base + " evaluate --baseline " + excerpts_csv.string() +
                                       " --candidate " + revised_csv.string() +
                                       " --candidate-revised --format csv",
                                   dir.path());
    require(result.exit_code == 0, "evaluate failed: " + result.err);

    // report with a rubric section
    std::string rubric =
        "sample_id,rater_id,chatbot,style_tone,clarity,readability_accessibility,"
        "diversity_inclusion,overall_suitability\n";
    for (int i = 0; i < 10; ++i) {
        rubric += "h" + std::to_string(i) + ",r1,HAZEL,4,4,4,4,4\n";
        rubric += "c" + std::to_string(i) + ",r1,ChatGPT,4,4,4,4,3\n";
    }
    const fs::path rubric_csv = dir.file("rubric.csv");
    testutil::write_file(rubric_csv, rubric);
    const fs::path report_md = dir.file("report.md");
    result = testutil::run_process(base + " report --corpus " + excerpts_csv.string() +
                                       " --candidate " + revised_csv.string() +
                                       " --candidate-revised --rubric " + rubric_csv.string() +
                                       " --format md --out " + report_md.string(),
                                   dir.path());
    require(result.exit_code == 0, "report failed: " + result.err);
    require(!testutil::read_file(report_md).empty(), "report is empty");

    require(elapsed_seconds(start) < 60.0, "offline pipeline exceeded 60 s");
}

// --------------------------------------------------------------------
// 10. Compliance rules through the CLI
// --------------------------------------------------------------------
void criterion_compliance_rules() {
    testutil::TempDir dir;
    const fs::path good = dir.file("good.txt");
    testutil::write_file(good, "The old barn is dry. We keep the roof in good shape. "
                               "Rain can harm old walls.");
    auto result = testutil::run_process(kBin + " check " + good.string(), dir.path());
    require(result.exit_code == 0, "clean text must pass check");

    const fs::path long_sentence = dir.file("long.txt");
    testutil::write_file(long_sentence,
                         "The man and the dog and the cat and the bird and the fish and the fox "
                         "and the hen and the cow ran far.");
    result = testutil::run_process(kBin + " check " + long_sentence.string(), dir.path());
    require(result.exit_code == 1, "25-word sentence must fail check");
    require(result.out.find("25 words") != std::string::npos, "violation must list word count");

    const fs::path contraction = dir.file("contraction.txt");
    testutil::write_file(contraction, "The old barn is dry. Don't delay repairs.");
    result = testutil::run_process(kBin + " check " + contraction.string(), dir.path());
    require(result.exit_code == 1, "contraction must fail check");
    require(result.out.find("Don't") != std::string::npos,
            "violation must list the contraction");
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<void()> run;
    };
    const std::vector<Criterion> criteria = {
        {"formula exactness vs brute-force re-evaluation (1000 cases, <1s)",
         criterion_formula_exactness},
        {"hand-derived oracle spot checks", criterion_hand_oracles},
        {"band fidelity (FRE 55/25, Dale-Chall 9.5)", criterion_bands},
        {"direction of effect through the CLI (<10s)", criterion_direction_of_effect},
        {"table structure golden report", criterion_table_structure},
        {"aggregation oracle (1000 vectors)", criterion_aggregation_oracle},
        {"sampling contract (seeded, bounded, disjoint)", criterion_sampling_contract},
        {"JSONL wire fidelity and diagnostics", criterion_jsonl_fidelity},
        {"offline pipeline with zero network calls (<60s)", criterion_offline_pipeline},
        {"compliance rules through the CLI", criterion_compliance_rules},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i].run();
            std::printf("PASS  %2zu. %s\n", i + 1, criteria[i].name);
        } catch (const std::exception& e) {
            ++failures;
            std::printf("FAIL  %2zu. %s: %s\n", i + 1, criteria[i].name, e.what());
        }
        std::fflush(stdout);
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
    return 0;
}
