#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hazelkit/csv.hpp"
#include "hazelkit/errors.hpp"
#include "hazelkit/readability.hpp"
#include "hazelkit/text.hpp"

namespace hazelkit {

// ---------------------------------------------------------------------
// Scoring sample sets
// ---------------------------------------------------------------------

enum class SourceSet { kCorpus, kBaselineModel, kCandidateModel };

inline const char* source_set_name(SourceSet set) {
    switch (set) {
        case SourceSet::kCorpus: return "corpus";
        case SourceSet::kBaselineModel: return "baseline";
        case SourceSet::kCandidateModel: return "candidate";
    }
    return "?";
}

struct ScoredSample {
    std::string sample_id;
    SourceSet source_set = SourceSet::kCorpus;
    ReadabilityScores scores;
    TextMetrics metrics;
};

struct ScoreSetResult {
    std::vector<ScoredSample> scored;
    std::vector<std::pair<std::string, std::string>> skipped;  ///< (sample id, reason)
};

/// Scores every (id, text) pair; degenerate texts are collected into the
/// skip report instead of aborting the set.
inline ScoreSetResult score_set(const std::vector<std::pair<std::string, std::string>>& samples,
                                const Lexicon& lexicon, SourceSet set) {
    ScoreSetResult result;
    for (const auto& [id, text] : samples) {
        try {
            ScoredSample sample;
            sample.sample_id = id;
            sample.source_set = set;
            sample.metrics = compute_metrics(text, lexicon);
            sample.scores = score_metrics(sample.metrics);
            result.scored.push_back(std::move(sample));
        } catch (const EmptyText& e) {
            result.skipped.emplace_back(id, e.what());
        }
    }
    return result;
}

// ---------------------------------------------------------------------
// Aggregate statistics: mean, median, sample standard deviation.
// ---------------------------------------------------------------------

struct FormulaStats {
    double mean = 0.0;
    double median = 0.0;
    std::optional<double> sd;  ///< absent when n < 2
};

struct AggregateStats {
    std::map<Formula, FormulaStats> per_formula;
    int n = 0;
};

namespace stats {

inline double mean_of(const std::vector<double>& values) {
    double sum = 0.0;
    for (const double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

inline double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

/// Sample (n-1) standard deviation; absent for fewer than two values.
inline std::optional<double> sample_sd(const std::vector<double>& values) {
    if (values.size() < 2) return std::nullopt;
    const double m = mean_of(values);
    double sum_sq = 0.0;
    for (const double v : values) sum_sq += (v - m) * (v - m);
    return std::sqrt(sum_sq / static_cast<double>(values.size() - 1));
}

inline FormulaStats describe(const std::vector<double>& values) {
    FormulaStats s;
    s.mean = mean_of(values);
    s.median = median_of(values);
    s.sd = sample_sd(values);
    return s;
}

}  // namespace stats

inline AggregateStats aggregate(const std::vector<ScoredSample>& scored) {
    if (scored.empty()) throw EmptySet("cannot aggregate an empty sample set");
    AggregateStats out;
    out.n = static_cast<int>(scored.size());
    for (const Formula formula : kAllFormulas) {
        std::vector<double> values;
        values.reserve(scored.size());
        for (const ScoredSample& sample : scored) {
            values.push_back(score_for(sample.scores, formula));
        }
        out.per_formula[formula] = stats::describe(values);
    }
    return out;
}

// ---------------------------------------------------------------------
// Comparison (candidate - baseline) with direction-of-effect labels.
// ---------------------------------------------------------------------

struct FormulaDelta {
    double baseline_mean = 0.0;
    double candidate_mean = 0.0;
    double mean_delta = 0.0;
    std::optional<double> sd_delta;
    std::string direction;  ///< "more readable", "less readable", or "unchanged"
};

struct ComparisonReport {
    std::map<Formula, FormulaDelta> per_formula;
};

inline ComparisonReport compare(const AggregateStats& baseline, const AggregateStats& candidate) {
    if (baseline.per_formula.size() != candidate.per_formula.size()) {
        throw FormulaMismatch("aggregates cover different formula sets");
    }
    ComparisonReport report;
    for (const auto& [formula, base] : baseline.per_formula) {
        const auto it = candidate.per_formula.find(formula);
        if (it == candidate.per_formula.end()) {
            throw FormulaMismatch(std::string("candidate aggregate lacks ") +
                                  formula_name(formula));
        }
        FormulaDelta delta;
        delta.baseline_mean = base.mean;
        delta.candidate_mean = it->second.mean;
        delta.mean_delta = it->second.mean - base.mean;
        if (base.sd && it->second.sd) delta.sd_delta = *it->second.sd - *base.sd;
        // Higher FRE means easier; the grade-level formulas run the other way.
        const bool higher_is_easier = formula == Formula::kFleschReadingEase;
        if (delta.mean_delta == 0.0) {
            delta.direction = "unchanged";
        } else if ((delta.mean_delta > 0.0) == higher_is_easier) {
            delta.direction = "more readable";
        } else {
            delta.direction = "less readable";
        }
        report.per_formula[formula] = delta;
    }
    return report;
}

// ---------------------------------------------------------------------
// Rubric ingestion and aggregation (two chatbots x five categories).
// ---------------------------------------------------------------------

enum class Chatbot { kHazel, kChatGpt };

inline const char* chatbot_name(Chatbot bot) {
    return bot == Chatbot::kHazel ? "HAZEL" : "ChatGPT";
}

inline constexpr std::array<std::string_view, 5> kRubricCategories = {
    "Style & Tone", "Clarity", "Readability & Accessibility", "Diversity & Inclusion",
    "Overall Suitability"};

struct RubricScore {
    std::string sample_id;
    std::string rater_id;
    Chatbot chatbot = Chatbot::kHazel;
    int style_tone = 0;
    int clarity = 0;
    int readability_accessibility = 0;
    int diversity_inclusion = 0;
    int overall_suitability = 0;

    int category(std::size_t index) const {
        switch (index) {
            case 0: return style_tone;
            case 1: return clarity;
            case 2: return readability_accessibility;
            case 3: return diversity_inclusion;
            default: return overall_suitability;
        }
    }
};

inline const std::vector<std::string>& rubric_csv_columns() {
    static const std::vector<std::string> columns = {
        "sample_id", "rater_id", "chatbot", "style_tone", "clarity",
        "readability_accessibility", "diversity_inclusion", "overall_suitability"};
    return columns;
}

inline std::vector<RubricScore> rubric_from_csv(std::string_view data) {
    const auto rows = csv::parse(data);
    if (rows.empty()) throw MalformedCsv(1, "empty file, expected a header row");
    for (const std::string& column : rubric_csv_columns()) {
        if (std::find(rows[0].begin(), rows[0].end(), column) == rows[0].end()) {
            throw MissingColumn(column);
        }
    }
    if (rows[0] != rubric_csv_columns()) {
        throw MalformedCsv(1, "unexpected column order or extra columns");
    }

    std::vector<RubricScore> scores;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::size_t row_number = r + 1;
        if (row.size() != rubric_csv_columns().size()) {
            throw MalformedCsv(row_number, "expected " +
                                               std::to_string(rubric_csv_columns().size()) +
                                               " fields, got " + std::to_string(row.size()));
        }
        RubricScore score;
        score.sample_id = row[0];
        score.rater_id = row[1];
        if (row[2] == "HAZEL") {
            score.chatbot = Chatbot::kHazel;
        } else if (row[2] == "ChatGPT") {
            score.chatbot = Chatbot::kChatGpt;
        } else {
            throw MalformedCsv(row_number, "chatbot must be HAZEL or ChatGPT, got '" + row[2] +
                                               "'");
        }
        int* fields[5] = {&score.style_tone, &score.clarity, &score.readability_accessibility,
                          &score.diversity_inclusion, &score.overall_suitability};
        for (std::size_t c = 0; c < 5; ++c) {
            const std::string& column_name = rubric_csv_columns()[c + 3];
            const std::string& field = row[c + 3];
            int value = 0;
            try {
                std::size_t used = 0;
                value = std::stoi(field, &used);
                if (used != field.size()) throw std::invalid_argument(field);
            } catch (const std::exception&) {
                throw MalformedCsv(row_number, "bad integer in column " + column_name + ": '" +
                                                   field + "'");
            }
            if (value < 1 || value > 5) {
                throw OutOfRange(row_number, column_name,
                                 std::to_string(value) + " is outside [1,5]");
            }
            *fields[c] = value;
        }
        scores.push_back(std::move(score));
    }
    return scores;
}

inline std::vector<RubricScore> ingest_rubric(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot read file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return rubric_from_csv(buf.str());
}

struct CategoryStats {
    double mean = 0.0;
    double median = 0.0;
    std::optional<double> sd;
};

struct RubricAggregate {
    std::map<Chatbot, std::array<CategoryStats, 5>> per_chatbot;
    std::map<Chatbot, int> n;
};

inline RubricAggregate aggregate_rubric(const std::vector<RubricScore>& scores) {
    if (scores.empty()) throw EmptySet("cannot aggregate an empty rubric set");
    RubricAggregate out;
    for (const Chatbot bot : {Chatbot::kHazel, Chatbot::kChatGpt}) {
        std::array<std::vector<double>, 5> values;
        for (const RubricScore& score : scores) {
            if (score.chatbot != bot) continue;
            for (std::size_t c = 0; c < 5; ++c) {
                values[c].push_back(static_cast<double>(score.category(c)));
            }
        }
        if (values[0].empty()) continue;
        std::array<CategoryStats, 5> per_category;
        for (std::size_t c = 0; c < 5; ++c) {
            const FormulaStats described = stats::describe(values[c]);
            per_category[c] = {described.mean, described.median, described.sd};
        }
        out.per_chatbot[bot] = per_category;
        out.n[bot] = static_cast<int>(values[0].size());
    }
    return out;
}

// ---------------------------------------------------------------------
// Report rendering. Numbers are rounded to 2 decimals here and nowhere
// else.
// ---------------------------------------------------------------------

enum class ReportFormat { kMarkdown, kCsv, kText };

inline ReportFormat parse_report_format(std::string_view name) {
    if (name == "md" || name == "markdown") return ReportFormat::kMarkdown;
    if (name == "csv") return ReportFormat::kCsv;
    if (name == "text" || name == "txt") return ReportFormat::kText;
    throw UnknownFormat(std::string(name));
}

struct ReportInputs {
    std::vector<std::pair<std::string, AggregateStats>> sample_blocks;  ///< (label, stats)
    std::optional<ComparisonReport> comparison;
    std::optional<RubricAggregate> rubric;
};

namespace detail {

inline std::string fmt2(double value) {
    if (std::fabs(value) < 0.005) value = 0.0;  // avoid "-0.00"
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return buf;
}

inline std::string fmt2_opt(const std::optional<double>& value) {
    return value ? fmt2(*value) : std::string("-");
}

inline const char* stat_row_name(std::size_t i) {
    switch (i) {
        case 0: return "mean";
        case 1: return "median";
        default: return "sd";
    }
}

inline std::string stat_value(const FormulaStats& s, std::size_t i) {
    switch (i) {
        case 0: return fmt2(s.mean);
        case 1: return fmt2(s.median);
        default: return fmt2_opt(s.sd);
    }
}

inline std::string stat_value(const CategoryStats& s, std::size_t i) {
    switch (i) {
        case 0: return fmt2(s.mean);
        case 1: return fmt2(s.median);
        default: return fmt2_opt(s.sd);
    }
}

inline std::string pad(const std::string& text, std::size_t width) {
    std::string out = text;
    while (out.size() < width) out += ' ';
    return out;
}

}  // namespace detail

inline std::string render_report(const ReportInputs& inputs, ReportFormat format) {
    if (inputs.sample_blocks.empty() && !inputs.comparison && !inputs.rubric) {
        throw EmptySet("report has no sections");
    }

    std::ostringstream out;
    if (format == ReportFormat::kMarkdown) {
        out << "# Readability report\n";
        if (!inputs.sample_blocks.empty()) {
            out << "\n## Readability scores\n\n";
            out << "| Sample | Statistic |";
            for (const Formula f : kAllFormulas) out << ' ' << formula_name(f) << " |";
            out << "\n|---|---|---|---|---|---|\n";
            for (const auto& [label, stats] : inputs.sample_blocks) {
                for (std::size_t row = 0; row < 3; ++row) {
                    out << "| " << label << " | " << detail::stat_row_name(row) << " |";
                    for (const Formula f : kAllFormulas) {
                        out << ' ' << detail::stat_value(stats.per_formula.at(f), row) << " |";
                    }
                    out << '\n';
                }
            }
        }
        if (inputs.comparison) {
            out << "\n## Comparison (candidate - baseline)\n\n";
            out << "| Formula | Baseline mean | Candidate mean | Mean delta | SD delta | "
                   "Direction |\n|---|---|---|---|---|---|\n";
            for (const Formula f : kAllFormulas) {
                const FormulaDelta& d = inputs.comparison->per_formula.at(f);
                out << "| " << formula_name(f) << " | " << detail::fmt2(d.baseline_mean)
                    << " | " << detail::fmt2(d.candidate_mean) << " | "
                    << detail::fmt2(d.mean_delta) << " | " << detail::fmt2_opt(d.sd_delta)
                    << " | " << d.direction << " |\n";
            }
        }
        if (inputs.rubric) {
            out << "\n## Rubric scores\n\n";
            out << "| Chatbot | Statistic |";
            for (const auto& category : kRubricCategories) out << ' ' << category << " |";
            out << "\n|---|---|---|---|---|---|---|\n";
            for (const auto& [bot, categories] : inputs.rubric->per_chatbot) {
                for (std::size_t row = 0; row < 3; ++row) {
                    out << "| " << chatbot_name(bot) << " | " << detail::stat_row_name(row)
                        << " |";
                    for (std::size_t c = 0; c < 5; ++c) {
                        out << ' ' << detail::stat_value(categories[c], row) << " |";
                    }
                    out << '\n';
                }
            }
        }
        return out.str();
    }

    if (format == ReportFormat::kCsv) {
        out << csv::make_row({"section", "block", "statistic", "metric", "value"});
        for (const auto& [label, stats] : inputs.sample_blocks) {
            for (std::size_t row = 0; row < 3; ++row) {
                for (const Formula f : kAllFormulas) {
                    out << csv::make_row({"scores", label, detail::stat_row_name(row),
                                          formula_name(f),
                                          detail::stat_value(stats.per_formula.at(f), row)});
                }
            }
        }
        if (inputs.comparison) {
            for (const Formula f : kAllFormulas) {
                const FormulaDelta& d = inputs.comparison->per_formula.at(f);
                out << csv::make_row({"comparison", "delta", "mean_delta", formula_name(f),
                                      detail::fmt2(d.mean_delta)});
                out << csv::make_row({"comparison", "delta", "sd_delta", formula_name(f),
                                      detail::fmt2_opt(d.sd_delta)});
                out << csv::make_row(
                    {"comparison", "delta", "direction", formula_name(f), d.direction});
            }
        }
        if (inputs.rubric) {
            for (const auto& [bot, categories] : inputs.rubric->per_chatbot) {
                for (std::size_t row = 0; row < 3; ++row) {
                    for (std::size_t c = 0; c < 5; ++c) {
                        out << csv::make_row({"rubric", chatbot_name(bot),
                                              detail::stat_row_name(row),
                                              std::string(kRubricCategories[c]),
                                              detail::stat_value(categories[c], row)});
                    }
                }
            }
        }
        return out.str();
    }

    // plain text
    if (!inputs.sample_blocks.empty()) {
        out << "Readability scores\n";
        out << detail::pad("Sample", 12) << detail::pad("Statistic", 11);
        for (const Formula f : kAllFormulas) out << detail::pad(formula_name(f), 21);
        out << '\n';
        for (const auto& [label, stats] : inputs.sample_blocks) {
            for (std::size_t row = 0; row < 3; ++row) {
                out << detail::pad(label, 12) << detail::pad(detail::stat_row_name(row), 11);
                for (const Formula f : kAllFormulas) {
                    out << detail::pad(detail::stat_value(stats.per_formula.at(f), row), 21);
                }
                out << '\n';
            }
        }
    }
    if (inputs.comparison) {
        out << "\nComparison (candidate - baseline)\n";
        for (const Formula f : kAllFormulas) {
            const FormulaDelta& d = inputs.comparison->per_formula.at(f);
            out << detail::pad(formula_name(f), 21) << detail::pad(detail::fmt2(d.mean_delta), 10)
                << d.direction << '\n';
        }
    }
    if (inputs.rubric) {
        out << "\nRubric scores\n";
        out << detail::pad("Chatbot", 9) << detail::pad("Statistic", 11);
        for (const auto& category : kRubricCategories) {
            out << detail::pad(std::string(category), 30);
        }
        out << '\n';
        for (const auto& [bot, categories] : inputs.rubric->per_chatbot) {
            for (std::size_t row = 0; row < 3; ++row) {
                out << detail::pad(chatbot_name(bot), 9)
                    << detail::pad(detail::stat_row_name(row), 11);
                for (std::size_t c = 0; c < 5; ++c) {
                    out << detail::pad(detail::stat_value(categories[c], row), 30);
                }
                out << '\n';
            }
        }
    }
    return out.str();
}

}  // namespace hazelkit
