#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hazelkit/builtin_data.hpp"
#include "hazelkit/corpus.hpp"
#include "hazelkit/errors.hpp"
#include "hazelkit/random.hpp"

namespace hazelkit {

/// The default system message shared by every training record.
inline constexpr std::string_view kDefaultSystemMessage =
    "an AI assistant designed to support authors of heritage guidance with writing clear, "
    "accessible content for a general audience in the UK";

struct TrainingRecord {
    std::string system_message;
    std::string user_message;
    std::string assistant_message;
    std::optional<std::string> excerpt_id;  ///< provenance only, never serialized

    bool operator==(const TrainingRecord&) const = default;
};

// ---------------------------------------------------------------------
// Prompt templates: plain text with a {TEXT} placeholder.
// ---------------------------------------------------------------------

inline std::string instantiate_template(std::string_view tmpl, std::string_view text) {
    static constexpr std::string_view kPlaceholder = "{TEXT}";
    std::string out;
    out.reserve(tmpl.size() + text.size());
    std::size_t pos = 0;
    while (true) {
        const std::size_t hit = tmpl.find(kPlaceholder, pos);
        if (hit == std::string_view::npos) {
            out.append(tmpl.substr(pos));
            break;
        }
        out.append(tmpl.substr(pos, hit - pos));
        out.append(text);
        pos = hit + kPlaceholder.size();
    }
    return out;
}

class TemplateLibrary {
public:
    static TemplateLibrary builtin() {
        TemplateLibrary lib;
        lib.add("plain-english", builtin::kTemplatePlainEnglish);
        lib.add("active-voice", builtin::kTemplateActiveVoice);
        lib.add("short-sentences", builtin::kTemplateShortSentences);
        lib.add("general-improvement", builtin::kTemplateGeneralImprovement);
        return lib;
    }

    /// One template per .txt file; the id is the filename stem.
    static TemplateLibrary from_dir(const std::filesystem::path& dir) {
        namespace fs = std::filesystem;
        if (!fs::exists(dir) || !fs::is_directory(dir)) {
            throw MissingDirectory(dir.string());
        }
        TemplateLibrary lib;
        std::vector<fs::path> paths;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".txt") {
                paths.push_back(entry.path());
            }
        }
        std::sort(paths.begin(), paths.end());
        for (const auto& path : paths) {
            std::ifstream in(path, std::ios::binary);
            if (!in) throw IoFailure("cannot read template: " + path.string());
            std::ostringstream buf;
            buf << in.rdbuf();
            lib.add(path.stem().string(), buf.str());
        }
        return lib;
    }

    void add(std::string id, std::string_view body) {
        while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) {
            body.remove_suffix(1);
        }
        templates_[std::move(id)] = std::string(body);
    }

    bool has(const std::string& id) const { return templates_.count(id) > 0; }

    const std::string& get(const std::string& id) const {
        const auto it = templates_.find(id);
        if (it == templates_.end()) throw UnknownTemplate(id);
        return it->second;
    }

    std::string instantiate(const std::string& id, std::string_view text) const {
        return instantiate_template(get(id), text);
    }

    std::vector<std::string> ids() const {
        std::vector<std::string> out;
        out.reserve(templates_.size());
        for (const auto& [id, _] : templates_) out.push_back(id);
        return out;
    }

private:
    std::map<std::string, std::string> templates_;
};

// ---------------------------------------------------------------------
// Record construction and splitting
// ---------------------------------------------------------------------

/// One record per revised excerpt: the user message is the template
/// instantiated with the original text, the assistant message is the
/// revision, and the system message is constant across the set.
inline std::vector<TrainingRecord> build_records(const std::vector<Excerpt>& pairs,
                                                 std::string_view system_message,
                                                 std::string_view prompt_template) {
    std::vector<TrainingRecord> records;
    records.reserve(pairs.size());
    for (const Excerpt& excerpt : pairs) {
        if (!excerpt.revised_text || excerpt.revised_text->empty()) {
            throw MissingRevision(excerpt.id);
        }
        TrainingRecord record;
        record.system_message = std::string(system_message);
        record.user_message = instantiate_template(prompt_template, excerpt.text);
        record.assistant_message = *excerpt.revised_text;
        record.excerpt_id = excerpt.id;
        records.push_back(std::move(record));
    }
    return records;
}

struct SplitDataset {
    std::vector<TrainingRecord> train;
    std::vector<TrainingRecord> test;
    std::uint64_t seed = 0;
    double ratio = 0.0;
};

/// Deterministic shuffle under `seed`, then partition at round(ratio * n).
inline SplitDataset split_records(std::vector<TrainingRecord> records, double ratio,
                                  std::uint64_t seed) {
    if (records.empty()) throw EmptyInput("cannot split an empty record set");
    if (!(ratio > 0.0 && ratio < 1.0)) {
        throw EmptyInput("split ratio must be in (0,1), got " + std::to_string(ratio));
    }
    rng::Engine engine(seed);
    rng::shuffle(records, engine);
    const auto train_size = static_cast<std::size_t>(
        std::llround(ratio * static_cast<double>(records.size())));
    SplitDataset split;
    split.seed = seed;
    split.ratio = ratio;
    split.train.assign(records.begin(), records.begin() + static_cast<std::ptrdiff_t>(train_size));
    split.test.assign(records.begin() + static_cast<std::ptrdiff_t>(train_size), records.end());
    return split;
}

// ---------------------------------------------------------------------
// JSON Lines serialization in the fine-tuning chat schema:
// {"messages":[{"role":"system",...},{"role":"user",...},{"role":"assistant",...}]}
// ---------------------------------------------------------------------

inline std::string to_jsonl_line(const TrainingRecord& record) {
    using ordered_json = nlohmann::ordered_json;
    auto message = [](std::string_view role, const std::string& content) {
        ordered_json m;
        m["role"] = role;  // key order role, content is part of the wire format
        m["content"] = content;
        return m;
    };
    ordered_json line;
    line["messages"] = ordered_json::array({message("system", record.system_message),
                                            message("user", record.user_message),
                                            message("assistant", record.assistant_message)});
    return line.dump();
}

inline void write_jsonl(const std::vector<TrainingRecord>& records,
                        const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot write file: " + path.string());
    for (const TrainingRecord& record : records) {
        out << to_jsonl_line(record) << '\n';
    }
    if (!out) throw IoFailure("write failed: " + path.string());
}

struct JsonlDiagnostic {
    enum class Kind { kMalformedJson, kBadRoleOrder, kMissingKey };
    Kind kind = Kind::kMalformedJson;
    std::size_t line = 0;  ///< 1-based
    std::string key;       ///< set for kMissingKey
    std::string detail;
};

inline const char* jsonl_diagnostic_name(JsonlDiagnostic::Kind kind) {
    switch (kind) {
        case JsonlDiagnostic::Kind::kMalformedJson: return "MalformedJson";
        case JsonlDiagnostic::Kind::kBadRoleOrder: return "BadRoleOrder";
        case JsonlDiagnostic::Kind::kMissingKey: return "MissingKey";
    }
    return "?";
}

struct JsonlValidation {
    bool passed = false;
    std::size_t line_count = 0;  ///< non-empty lines examined
    std::vector<JsonlDiagnostic> diagnostics;
};

/// Checks every line against the exact schema and collects one verdict
/// per offending line instead of failing fast.
inline JsonlValidation validate_jsonl_text(std::string_view data) {
    JsonlValidation result;
    std::size_t line_number = 0;
    std::size_t pos = 0;
    auto add = [&](JsonlDiagnostic::Kind kind, std::string key, std::string detail) {
        result.diagnostics.push_back({kind, line_number, std::move(key), std::move(detail)});
    };

    while (pos < data.size()) {
        const std::size_t eol = data.find('\n', pos);
        const std::string_view line =
            data.substr(pos, eol == std::string_view::npos ? data.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? data.size() : eol + 1;
        ++line_number;
        if (line.empty()) {
            add(JsonlDiagnostic::Kind::kMalformedJson, "", "blank line");
            continue;
        }
        ++result.line_count;

        const auto parsed = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (parsed.is_discarded()) {
            add(JsonlDiagnostic::Kind::kMalformedJson, "", "not valid JSON");
            continue;
        }
        if (!parsed.is_object()) {
            add(JsonlDiagnostic::Kind::kMalformedJson, "", "top-level value is not an object");
            continue;
        }
        if (!parsed.contains("messages")) {
            add(JsonlDiagnostic::Kind::kMissingKey, "messages", "object lacks \"messages\"");
            continue;
        }
        if (parsed.size() != 1) {
            add(JsonlDiagnostic::Kind::kMalformedJson, "", "keys other than \"messages\"");
            continue;
        }
        const auto& messages = parsed["messages"];
        if (!messages.is_array() || messages.size() != 3) {
            add(JsonlDiagnostic::Kind::kMalformedJson, "",
                "\"messages\" is not a 3-element array");
            continue;
        }
        bool structural_problem = false;
        std::vector<std::string> roles;
        for (const auto& message : messages) {
            if (!message.is_object()) {
                add(JsonlDiagnostic::Kind::kMalformedJson, "", "message is not an object");
                structural_problem = true;
                break;
            }
            if (!message.contains("role")) {
                add(JsonlDiagnostic::Kind::kMissingKey, "role", "message lacks \"role\"");
                structural_problem = true;
                break;
            }
            if (!message.contains("content")) {
                add(JsonlDiagnostic::Kind::kMissingKey, "content", "message lacks \"content\"");
                structural_problem = true;
                break;
            }
            if (message.size() != 2 || !message["role"].is_string() ||
                !message["content"].is_string()) {
                add(JsonlDiagnostic::Kind::kMalformedJson, "",
                    "message must hold exactly string keys \"role\" and \"content\"");
                structural_problem = true;
                break;
            }
            roles.push_back(message["role"].get<std::string>());
        }
        if (structural_problem) continue;
        if (roles != std::vector<std::string>{"system", "user", "assistant"}) {
            add(JsonlDiagnostic::Kind::kBadRoleOrder, "",
                "roles must be system, user, assistant in order");
        }
    }
    result.passed = result.diagnostics.empty() && result.line_count > 0;
    return result;
}

inline JsonlValidation validate_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot read file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return validate_jsonl_text(buf.str());
}

/// Strict reader for files produced by write_jsonl; throws on the first
/// schema violation. Use validate_jsonl for diagnostics.
inline std::vector<TrainingRecord> read_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot read file: " + path.string());
    std::vector<TrainingRecord> records;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw IoFailure("line " + std::to_string(line_number) + ": " + e.what());
        }
        const auto& messages = parsed.at("messages");
        if (!messages.is_array() || messages.size() != 3) {
            throw IoFailure("line " + std::to_string(line_number) +
                            ": expected a 3-element messages array");
        }
        TrainingRecord record;
        record.system_message = messages[0].at("content").get<std::string>();
        record.user_message = messages[1].at("content").get<std::string>();
        record.assistant_message = messages[2].at("content").get<std::string>();
        records.push_back(std::move(record));
    }
    return records;
}

}  // namespace hazelkit
