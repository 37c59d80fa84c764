#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hazelkit/dataset.hpp"
#include "hazelkit/errors.hpp"

namespace hazelkit {

struct SampleConfig {
    int n = 150;
    int min_words = 250;
    int max_words = 300;
    std::uint64_t seed = 42;
};

struct ApiConfig {
    std::string base_url = "https://api.openai.com";
    std::string model = "gpt-3.5-turbo";
    double temperature = 0.7;
    int max_in_flight = 4;
    std::string fixtures_dir;  ///< replay fixtures for --offline runs
};

struct Config {
    std::string corpus_dir = "corpus";
    std::string lexicon_path;    ///< empty: builtin word list
    std::string templates_dir;   ///< empty: builtin templates
    SampleConfig sample;
    double split_ratio = 0.8;
    ApiConfig api;
    std::string system_message{kDefaultSystemMessage};
    bool from_file = false;
};

/// Loads a JSON config file and validates every path it mentions up
/// front, reporting all problems at once.
inline Config load_config(const std::filesystem::path& path) {
    namespace fs = std::filesystem;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file: " + path.string());
    nlohmann::json parsed;
    try {
        in >> parsed;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }

    Config config;
    config.from_file = true;
    std::vector<std::string> problems;
    auto check_dir = [&](const std::string& value, const char* key) {
        if (!fs::exists(value) || !fs::is_directory(value)) {
            problems.push_back(std::string(key) + ": directory not found: " + value);
        }
    };
    auto check_file = [&](const std::string& value, const char* key) {
        if (!fs::exists(value) || !fs::is_regular_file(value)) {
            problems.push_back(std::string(key) + ": file not found: " + value);
        }
    };

    try {
        if (parsed.contains("corpus_dir")) {
            config.corpus_dir = parsed["corpus_dir"].get<std::string>();
            check_dir(config.corpus_dir, "corpus_dir");
        }
        if (parsed.contains("lexicon_path")) {
            config.lexicon_path = parsed["lexicon_path"].get<std::string>();
            check_file(config.lexicon_path, "lexicon_path");
        }
        if (parsed.contains("templates_dir")) {
            config.templates_dir = parsed["templates_dir"].get<std::string>();
            check_dir(config.templates_dir, "templates_dir");
        }
        if (parsed.contains("sample")) {
            const auto& sample = parsed["sample"];
            config.sample.n = sample.value("n", config.sample.n);
            config.sample.min_words = sample.value("min_words", config.sample.min_words);
            config.sample.max_words = sample.value("max_words", config.sample.max_words);
            config.sample.seed = sample.value("seed", config.sample.seed);
        }
        if (parsed.contains("split_ratio")) {
            config.split_ratio = parsed["split_ratio"].get<double>();
        }
        if (parsed.contains("api")) {
            const auto& api = parsed["api"];
            config.api.base_url = api.value("base_url", config.api.base_url);
            config.api.model = api.value("model", config.api.model);
            config.api.temperature = api.value("temperature", config.api.temperature);
            config.api.max_in_flight = api.value("max_in_flight", config.api.max_in_flight);
            config.api.fixtures_dir = api.value("fixtures_dir", config.api.fixtures_dir);
            if (!config.api.fixtures_dir.empty()) {
                check_dir(config.api.fixtures_dir, "api.fixtures_dir");
            }
        }
        if (parsed.contains("system_message")) {
            config.system_message = parsed["system_message"].get<std::string>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config " + path.string() + " has a bad value: " + e.what());
    }

    if (!problems.empty()) {
        std::string message = "config " + path.string() + " references missing paths:";
        for (const std::string& problem : problems) message += "\n  " + problem;
        throw ConfigError(message);
    }
    return config;
}

}  // namespace hazelkit
