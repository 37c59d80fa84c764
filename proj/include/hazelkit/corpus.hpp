#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hazelkit/csv.hpp"
#include "hazelkit/errors.hpp"
#include "hazelkit/random.hpp"
#include "hazelkit/text.hpp"

namespace hazelkit {

struct Document {
    std::string id;  ///< filename stem, unique within a corpus
    std::optional<std::string> title;
    std::string text;  ///< cleaned: single spaces, no line breaks
    int word_count = 0;
    std::string source_path;
};

/// A sentence-aligned passage sampled from one document.
struct Excerpt {
    std::string id;
    std::string document_id;
    int sentence_start = 0;  ///< ordinal of first sentence, 0-based
    int sentence_end = 0;    ///< ordinal of last sentence, inclusive
    std::string text;
    int word_count = 0;
    std::optional<std::string> revised_text;

    bool operator==(const Excerpt&) const = default;
};

/// Collapses every whitespace run (including line breaks and NBSP) to a
/// single space and trims the ends. Idempotent.
inline std::string clean_text(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (std::size_t i = 0; i < raw.size();) {
        const auto d = unicode::decode(raw, i);
        i += static_cast<std::size_t>(d.len);
        if (d.cp == 0xFEFF) continue;  // stray BOM from upstream extraction
        if (unicode::is_space(d.cp)) {
            pending_space = true;
            continue;
        }
        if (pending_space && !out.empty()) out += ' ';
        pending_space = false;
        unicode::encode(d.cp, out);
    }
    return out;
}

struct IngestResult {
    std::vector<Document> documents;
    std::vector<std::pair<std::string, std::string>> skipped;  ///< (path, reason)
};

/// Reads every .txt file in a directory into a cleaned Document, sorted
/// by id. Unreadable files are skipped and reported, not fatal.
inline IngestResult ingest_dir(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    if (!fs::exists(dir) || !fs::is_directory(dir)) {
        throw MissingDirectory(dir.string());
    }
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (ext == ".txt") paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

    IngestResult result;
    for (const auto& path : paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            result.skipped.emplace_back(path.string(), "cannot open file");
            continue;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        if (in.bad()) {
            result.skipped.emplace_back(path.string(), "read failure");
            continue;
        }
        Document doc;
        doc.id = path.stem().string();
        doc.text = clean_text(buf.str());
        doc.word_count = static_cast<int>(tokenize_words(doc.text).size());
        doc.source_path = path.string();
        const bool duplicate =
            std::any_of(result.documents.begin(), result.documents.end(),
                        [&](const Document& d) { return d.id == doc.id; });
        if (duplicate) {
            result.skipped.emplace_back(path.string(), "duplicate document id: " + doc.id);
            continue;
        }
        result.documents.push_back(std::move(doc));
    }
    return result;
}

/// Draws n sentence-aligned excerpts without replacement: windows grow
/// sentence by sentence from a randomly chosen unconsumed start until
/// they reach min_words, and are rejected if they pass max_words first.
/// Windows from the same document never overlap. Deterministic for a
/// fixed (corpus, n, bounds, seed).
inline std::vector<Excerpt> sample_excerpts(const std::vector<Document>& corpus, int n,
                                            int min_words, int max_words, std::uint64_t seed) {
    if (corpus.empty()) throw EmptyInput("cannot sample from an empty corpus");
    if (n <= 0) throw EmptyInput("excerpt count must be positive");
    if (min_words <= 0 || min_words > max_words) {
        throw EmptyInput("invalid word bounds: min " + std::to_string(min_words) + ", max " +
                         std::to_string(max_words));
    }

    struct DocSentences {
        const Document* doc;
        std::vector<std::string> texts;
        std::vector<int> word_counts;
        std::vector<bool> consumed;
    };
    std::vector<DocSentences> docs;
    std::vector<std::pair<std::size_t, std::size_t>> starts;  // (doc index, sentence index)
    for (const Document& doc : corpus) {
        DocSentences ds;
        ds.doc = &doc;
        try {
            for (Sentence& s : split_sentences(doc.text)) {
                ds.word_counts.push_back(s.word_count);
                ds.texts.push_back(std::move(s.text));
            }
        } catch (const EmptyText&) {
            continue;  // letterless document contributes nothing
        }
        ds.consumed.assign(ds.texts.size(), false);
        for (std::size_t s = 0; s < ds.texts.size(); ++s) {
            starts.emplace_back(docs.size(), s);
        }
        docs.push_back(std::move(ds));
    }

    rng::Engine engine(seed);
    rng::shuffle(starts, engine);

    std::vector<Excerpt> excerpts;
    for (const auto& [d, s0] : starts) {
        if (static_cast<int>(excerpts.size()) == n) break;
        DocSentences& ds = docs[d];
        if (ds.consumed[s0]) continue;

        int words = 0;
        std::size_t end = s0;
        bool accepted = false;
        for (std::size_t e = s0; e < ds.texts.size(); ++e) {
            if (ds.consumed[e]) break;  // would overlap an earlier excerpt
            words += ds.word_counts[e];
            if (words > max_words) break;  // overshot before reaching min_words
            if (words >= min_words) {
                end = e;
                accepted = true;
                break;
            }
        }
        if (!accepted) continue;

        Excerpt ex;
        ex.document_id = ds.doc->id;
        ex.sentence_start = static_cast<int>(s0);
        ex.sentence_end = static_cast<int>(end);
        ex.word_count = words;
        for (std::size_t e = s0; e <= end; ++e) {
            if (e > s0) ex.text += ' ';
            ex.text += ds.texts[e];
            ds.consumed[e] = true;
        }
        ex.id = ds.doc->id + ":" + std::to_string(s0) + "-" + std::to_string(end);
        excerpts.push_back(std::move(ex));
    }

    if (static_cast<int>(excerpts.size()) < n) {
        throw InsufficientMaterial(n, static_cast<int>(excerpts.size()));
    }
    return excerpts;
}

inline const std::vector<std::string>& excerpt_csv_columns() {
    static const std::vector<std::string> columns = {
        "id", "document_id", "sentence_start", "sentence_end",
        "word_count", "text", "revised_text"};
    return columns;
}

inline std::string excerpts_to_csv(const std::vector<Excerpt>& excerpts) {
    std::string out = csv::make_row(excerpt_csv_columns());
    for (const Excerpt& ex : excerpts) {
        out += csv::make_row({ex.id, ex.document_id, std::to_string(ex.sentence_start),
                              std::to_string(ex.sentence_end), std::to_string(ex.word_count),
                              ex.text, ex.revised_text.value_or("")});
    }
    return out;
}

inline void save_excerpts(const std::vector<Excerpt>& excerpts,
                          const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot write file: " + path.string());
    out << excerpts_to_csv(excerpts);
    if (!out) throw IoFailure("write failed: " + path.string());
}

inline std::vector<Excerpt> excerpts_from_csv(std::string_view data) {
    const auto rows = csv::parse(data);
    if (rows.empty()) throw MalformedCsv(1, "empty file, expected a header row");
    const auto& header = rows.front();
    for (const std::string& column : excerpt_csv_columns()) {
        if (std::find(header.begin(), header.end(), column) == header.end()) {
            throw MissingColumn(column);
        }
    }
    if (header != excerpt_csv_columns()) {
        throw MalformedCsv(1, "unexpected column order or extra columns");
    }

    auto parse_int = [](const std::string& field, std::size_t row, const char* what) {
        try {
            std::size_t used = 0;
            const int value = std::stoi(field, &used);
            if (used != field.size()) throw std::invalid_argument(field);
            return value;
        } catch (const std::exception&) {
            throw MalformedCsv(row, std::string("bad integer in column ") + what + ": '" +
                                        field + "'");
        }
    };

    std::vector<Excerpt> excerpts;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::size_t row_number = r + 1;
        if (row.size() != excerpt_csv_columns().size()) {
            throw MalformedCsv(row_number, "expected " +
                                               std::to_string(excerpt_csv_columns().size()) +
                                               " fields, got " + std::to_string(row.size()));
        }
        Excerpt ex;
        ex.id = row[0];
        ex.document_id = row[1];
        ex.sentence_start = parse_int(row[2], row_number, "sentence_start");
        ex.sentence_end = parse_int(row[3], row_number, "sentence_end");
        ex.word_count = parse_int(row[4], row_number, "word_count");
        ex.text = row[5];
        if (!row[6].empty()) ex.revised_text = row[6];
        excerpts.push_back(std::move(ex));
    }
    return excerpts;
}

inline std::vector<Excerpt> load_excerpts(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot read file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return excerpts_from_csv(buf.str());
}

}  // namespace hazelkit
