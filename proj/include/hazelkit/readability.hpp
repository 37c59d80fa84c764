#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hazelkit/errors.hpp"
#include "hazelkit/text.hpp"

namespace hazelkit {

enum class Formula {
    kFleschKincaid,
    kFleschReadingEase,
    kAutomatedReadabilityIndex,
    kDaleChall,
};

inline constexpr Formula kAllFormulas[] = {
    Formula::kFleschKincaid,
    Formula::kFleschReadingEase,
    Formula::kAutomatedReadabilityIndex,
    Formula::kDaleChall,
};

inline const char* formula_name(Formula f) {
    switch (f) {
        case Formula::kFleschKincaid: return "Flesch-Kincaid";
        case Formula::kFleschReadingEase: return "Flesch Reading Ease";
        case Formula::kAutomatedReadabilityIndex: return "ARI";
        case Formula::kDaleChall: return "Dale-Chall";
    }
    return "?";
}

// ---------------------------------------------------------------------
// The four formulas. Scores are unclamped and full precision; rounding
// happens only in the report layer.
// ---------------------------------------------------------------------

inline double flesch_kincaid(const TextMetrics& m) {
    return 0.39 * m.asl + 11.8 * m.asw - 15.59;
}

inline double flesch_reading_ease(const TextMetrics& m) {
    return 206.835 - 1.015 * m.asl - 84.6 * m.asw;
}

inline double automated_readability_index(const TextMetrics& m) {
    return 4.71 * m.acw + 0.5 * m.asl - 21.43;
}

/// Raw score 0.1579*PDW + 0.0496*ASL; the 3.6365 adjustment applies only
/// when PDW is strictly greater than 5 percent.
inline double dale_chall(const TextMetrics& m) {
    const double raw = 0.1579 * m.pdw + 0.0496 * m.asl;
    return m.pdw > 5.0 ? raw + 3.6365 : raw;
}

// ---------------------------------------------------------------------
// Band labels. FKGL and ARI report grade levels, not bands.
// ---------------------------------------------------------------------

inline std::string band(Formula formula, double score) {
    switch (formula) {
        case Formula::kFleschReadingEase:
            if (score >= 90.0) return "very easy";
            if (score >= 80.0) return "easy";
            if (score >= 70.0) return "fairly easy";
            if (score >= 50.0) return "standard";
            if (score >= 30.0) return "difficult";
            return "scientific";
        case Formula::kDaleChall:
            if (score < 5.0) return "grade 4 and below";
            if (score < 6.0) return "grades 5-6";
            if (score < 7.0) return "grades 7-8";
            if (score < 8.0) return "grades 9-10";
            if (score < 9.0) return "grades 11-12";
            if (score < 10.0) return "university";
            return "postgraduate";
        default:
            throw UnknownFormula(std::string(formula_name(formula)) +
                                 " reports a grade level, not a band");
    }
}

struct ReadabilityScores {
    double fkgl = 0.0;
    double fre = 0.0;
    double ari = 0.0;
    double dale_chall = 0.0;
    std::string fre_band;
    std::string dale_chall_band;
};

inline ReadabilityScores score_metrics(const TextMetrics& m) {
    ReadabilityScores s;
    s.fkgl = flesch_kincaid(m);
    s.fre = flesch_reading_ease(m);
    s.ari = automated_readability_index(m);
    s.dale_chall = dale_chall(m);
    s.fre_band = band(Formula::kFleschReadingEase, s.fre);
    s.dale_chall_band = band(Formula::kDaleChall, s.dale_chall);
    return s;
}

inline double score_for(const ReadabilityScores& s, Formula f) {
    switch (f) {
        case Formula::kFleschKincaid: return s.fkgl;
        case Formula::kFleschReadingEase: return s.fre;
        case Formula::kAutomatedReadabilityIndex: return s.ari;
        case Formula::kDaleChall: return s.dale_chall;
    }
    return 0.0;
}

// ---------------------------------------------------------------------
// Editorial compliance: FRE >= 50, sentences of 20 words or fewer, and
// no contractions.
// ---------------------------------------------------------------------

namespace detail {

// "'s" counts as a contraction only after one of these, so possessives
// ("England's") pass.
inline const std::unordered_set<std::string>& s_contraction_prefixes() {
    static const std::unordered_set<std::string> prefixes = {
        "he", "she", "it", "that", "there", "here", "what",
        "who", "where", "one", "this", "let"};
    return prefixes;
}

}  // namespace detail

/// True when a normalized token matches the fixed contraction patterns:
/// n't, 're, 've, 'll, 'd, 'm, and pronoun + 's.
inline bool is_contraction(std::string_view normalized) {
    if (normalized.find('\'') == std::string_view::npos) return false;
    auto ends_with = [&](std::string_view suffix) {
        return normalized.size() > suffix.size() &&
               normalized.substr(normalized.size() - suffix.size()) == suffix;
    };
    if (ends_with("n't") || ends_with("'re") || ends_with("'ve") || ends_with("'ll") ||
        ends_with("'d") || ends_with("'m")) {
        return true;
    }
    if (ends_with("'s")) {
        const std::string prefix(normalized.substr(0, normalized.size() - 2));
        return detail::s_contraction_prefixes().count(prefix) > 0;
    }
    return false;
}

struct ComplianceReport {
    bool fre_ok = false;
    std::vector<std::pair<int, int>> long_sentences;          ///< (sentence index, word count) > 20
    std::vector<std::pair<int, std::string>> contractions;    ///< (sentence index, token surface)
    bool passed = false;
};

inline ComplianceReport check_compliance(std::string_view /*text*/, const TextMetrics& m,
                                         const std::vector<Sentence>& sentences) {
    ComplianceReport report;
    report.fre_ok = flesch_reading_ease(m) >= 50.0;
    for (const Sentence& sentence : sentences) {
        if (sentence.word_count > 20) {
            report.long_sentences.emplace_back(sentence.index, sentence.word_count);
        }
        for (const Word& word : tokenize_words(sentence.text)) {
            if (is_contraction(word.normalized)) {
                report.contractions.emplace_back(sentence.index, word.surface);
            }
        }
    }
    report.passed =
        report.fre_ok && report.long_sentences.empty() && report.contractions.empty();
    return report;
}

}  // namespace hazelkit
