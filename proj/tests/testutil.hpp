#pragma once

// Shared helpers for the test suites: temp directories, a subprocess
// runner for CLI-driving tests, a scripted transport, and deterministic
// synthetic corpora.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "hazelkit/llm.hpp"
#include "hazelkit/random.hpp"

namespace testutil {

namespace fs = std::filesystem;

/// Creates a unique directory under the system temp dir and removes it
/// on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
        path_ = fs::temp_directory_path() /
                ("hazelkit-test-" + std::to_string(::getpid()) + "-" +
                 std::to_string(stamp) + "-" + std::to_string(counter.fetch_add(1)));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }
    fs::path file(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

inline void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct ProcResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

/// Runs a shell command, capturing stdout/stderr into files in `dir`.
inline ProcResult run_process(const std::string& command, const fs::path& dir) {
    static std::atomic<unsigned> counter{0};
    const unsigned id = counter.fetch_add(1);
    const fs::path out_path = dir / ("proc-" + std::to_string(id) + ".out");
    const fs::path err_path = dir / ("proc-" + std::to_string(id) + ".err");
    const std::string full =
        command + " >" + out_path.string() + " 2>" + err_path.string();
    const int status = std::system(full.c_str());
    ProcResult result;
    result.out = read_file(out_path);
    result.err = read_file(err_path);
    if (status == -1) {
        result.exit_code = -1;
    } else if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    } else {
        result.exit_code = 128;
    }
    return result;
}

/// Transport that replays a fixed response queue in order; the queue is
/// shared across threads. Optionally reports itself as live.
class ScriptedTransport : public hazelkit::Transport {
public:
    explicit ScriptedTransport(std::vector<hazelkit::HttpResponse> responses, bool live = false)
        : responses_(responses.begin(), responses.end()), live_(live) {}

    hazelkit::HttpResponse send(const hazelkit::HttpRequest& request) override {
        std::lock_guard<std::mutex> lock(mutex_);
        requests_.push_back(request);
        if (responses_.empty()) return {500, "scripted transport exhausted"};
        hazelkit::HttpResponse response = responses_.front();
        responses_.pop_front();
        return response;
    }

    bool is_live() const override { return live_; }

    std::vector<hazelkit::HttpRequest> requests() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return requests_;
    }
    std::size_t calls() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return requests_.size();
    }

private:
    mutable std::mutex mutex_;
    std::deque<hazelkit::HttpResponse> responses_;
    std::vector<hazelkit::HttpRequest> requests_;
    bool live_;
};

/// Builds an OpenAI-style chat completion body around `content`.
inline std::string chat_completion_body(const std::string& content) {
    nlohmann::json body;
    body["choices"] = nlohmann::json::array();
    body["choices"].push_back({{"message", {{"role", "assistant"}, {"content", content}}}});
    body["usage"] = {{"prompt_tokens", 12}, {"completion_tokens", 8}, {"total_tokens", 20}};
    return body.dump();
}

// ----------------------------------------------------------------------
// Deterministic synthetic prose
// ----------------------------------------------------------------------

/// Easy-vocabulary sentences, 6-14 words each, until at least
/// `target_words` words are emitted.
inline std::string synthetic_document(hazelkit::rng::Engine& engine, int target_words) {
    static const std::vector<std::string> bank = {
        "the", "old",  "stone", "wall",  "barn", "roof", "rain", "work", "team", "home",
        "dry",  "warm", "small", "plain", "road", "door", "wood", "step", "cost", "help"};
    std::string text;
    int words = 0;
    while (words < target_words) {
        const int length = 6 + static_cast<int>(hazelkit::rng::uniform_below(engine, 9));
        for (int w = 0; w < length; ++w) {
            std::string word = bank[hazelkit::rng::uniform_below(engine, bank.size())];
            if (w == 0) word[0] = static_cast<char>(std::toupper(word[0]));
            if (w > 0) text += ' ';
            text += word;
        }
        text += ". ";
        words += length;
    }
    if (!text.empty() && text.back() == ' ') text.pop_back();
    return text;
}

/// Writes `count` synthetic documents (doc00.txt ...) into dir.
inline void write_synthetic_corpus(const fs::path& dir, int count, int words_per_doc,
                                   std::uint64_t seed) {
    fs::create_directories(dir);
    hazelkit::rng::Engine engine(seed);
    for (int d = 0; d < count; ++d) {
        char name[16];
        std::snprintf(name, sizeof(name), "doc%02d.txt", d);
        write_file(dir / name, synthetic_document(engine, words_per_doc));
    }
}

/// Hard-to-read prose: long sentences built from long, rare words.
inline std::string difficult_document(int sentences) {
    std::string text;
    for (int s = 0; s < sentences; ++s) {
        text += "Comprehensive rehabilitation of deteriorating architectural infrastructure "
                "necessitates systematic methodological interventions alongside considerable "
                "administrative coordination throughout organisational implementation phases "
                "requiring substantial documentation.";
        if (s + 1 < sentences) text += ' ';
    }
    return text;
}

/// Mechanically simplified counterpart: short sentences, short words.
inline std::string simple_document(int sentences) {
    static const std::vector<std::string> bank = {
        "We fix old homes.", "The work is plain.", "Each step is small.",
        "The team can help.", "The cost stays low.", "The roof is dry now."};
    std::string text;
    for (int s = 0; s < sentences; ++s) {
        if (s > 0) text += ' ';
        text += bank[static_cast<std::size_t>(s) % bank.size()];
    }
    return text;
}

}  // namespace testutil
