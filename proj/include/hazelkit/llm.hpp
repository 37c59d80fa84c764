#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hazelkit/dataset.hpp"
#include "hazelkit/errors.hpp"

namespace hazelkit {

// ---------------------------------------------------------------------
// Wire types
// ---------------------------------------------------------------------

struct ChatMessage {
    std::string role;
    std::string content;

    bool operator==(const ChatMessage&) const = default;
};

struct ChatRequest {
    std::string model;
    std::vector<ChatMessage> messages;
    double temperature = 0.7;
    std::optional<int> max_output_tokens;

    bool operator==(const ChatRequest&) const = default;
};

struct TokenUsage {
    long prompt_tokens = 0;
    long completion_tokens = 0;
    long total_tokens = 0;
};

struct ChatResult {
    std::string content;
    TokenUsage usage;
};

enum class JobStatus { kQueued, kRunning, kSucceeded, kFailed, kCancelled };

inline const char* job_status_name(JobStatus status) {
    switch (status) {
        case JobStatus::kQueued: return "queued";
        case JobStatus::kRunning: return "running";
        case JobStatus::kSucceeded: return "succeeded";
        case JobStatus::kFailed: return "failed";
        case JobStatus::kCancelled: return "cancelled";
    }
    return "?";
}

struct FineTuneJob {
    std::string job_id;
    std::string base_model;
    std::string training_file_id;
    std::optional<int> epochs;
    std::optional<int> batch_size;
    JobStatus status = JobStatus::kQueued;
    std::optional<std::string> fine_tuned_model;  ///< present iff status == kSucceeded
    std::string error_message;                    ///< last API error detail, if any
};

// ---------------------------------------------------------------------
// Transport abstraction: live HTTP, replay from fixtures, or record.
// ---------------------------------------------------------------------

struct HttpRequest {
    std::string method;        ///< "GET" or "POST"
    std::string path;          ///< e.g. "/v1/chat/completions"
    std::string content_type;  ///< empty for GET
    std::string body;
};

struct HttpResponse {
    int status = 0;
    std::string body;
};

class Transport {
public:
    virtual ~Transport() = default;

    /// Must be safe for concurrent callers.
    virtual HttpResponse send(const HttpRequest& request) = 0;

    /// Live transports require an API key and touch the network.
    virtual bool is_live() const { return false; }

    long network_calls() const { return network_calls_.load(); }

protected:
    std::atomic<long> network_calls_{0};
};

inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (const unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

inline std::string request_fingerprint(const HttpRequest& request) {
    return request.method + "\n" + request.path + "\n" + request.body;
}

/// Stable fixture filename stem for a request.
inline std::string fixture_key(const HttpRequest& request) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(request_fingerprint(request))));
    return buf;
}

/// Answers requests from recorded fixture files; never touches the
/// network. A fixture holds a response sequence so repeated identical
/// requests (job polling) can advance; the last response repeats.
class ReplayTransport : public Transport {
public:
    explicit ReplayTransport(std::filesystem::path fixture_dir)
        : dir_(std::move(fixture_dir)) {}

    HttpResponse send(const HttpRequest& request) override {
        const std::string key = fixture_key(request);
        const std::filesystem::path path = dir_ / (key + ".json");
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw FixtureMiss("no fixture " + key + ".json for " + request.method + " " +
                              request.path + " in " + dir_.string());
        }
        nlohmann::json fixture;
        try {
            in >> fixture;
        } catch (const nlohmann::json::parse_error& e) {
            throw FixtureMiss("unreadable fixture " + path.string() + ": " + e.what());
        }
        const auto& responses = fixture.at("responses");
        std::size_t index = 0;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            index = cursor_[key]++;
        }
        if (index >= responses.size()) index = responses.size() - 1;
        HttpResponse response;
        response.status = responses[index].at("status").get<int>();
        response.body = responses[index].at("body").get<std::string>();
        ++replayed_calls_;
        return response;
    }

    long replayed_calls() const { return replayed_calls_.load(); }

private:
    std::filesystem::path dir_;
    std::mutex mutex_;
    std::map<std::string, std::size_t> cursor_;
    std::atomic<long> replayed_calls_{0};
};

/// Writes one fixture file per request to a directory so that a later
/// ReplayTransport can answer the same traffic offline.
inline void record_fixture(const std::filesystem::path& dir, const HttpRequest& request,
                           const HttpResponse& response) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path path = dir / (fixture_key(request) + ".json");
    nlohmann::ordered_json fixture;
    if (std::ifstream existing(path, std::ios::binary); existing) {
        try {
            existing >> fixture;
        } catch (const nlohmann::json::parse_error&) {
            fixture = nlohmann::ordered_json();
        }
    }
    if (!fixture.contains("responses")) {
        fixture["request"] = {{"method", request.method},
                              {"path", request.path},
                              {"body", request.body}};
        fixture["responses"] = nlohmann::ordered_json::array();
    }
    fixture["responses"].push_back({{"status", response.status}, {"body", response.body}});
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot write fixture: " + path.string());
    out << fixture.dump(2) << '\n';
}

class RecordTransport : public Transport {
public:
    RecordTransport(std::shared_ptr<Transport> inner, std::filesystem::path fixture_dir)
        : inner_(std::move(inner)), dir_(std::move(fixture_dir)) {}

    HttpResponse send(const HttpRequest& request) override {
        const HttpResponse response = inner_->send(request);
        std::lock_guard<std::mutex> lock(mutex_);
        record_fixture(dir_, request, response);
        return response;
    }

    bool is_live() const override { return inner_->is_live(); }

private:
    std::shared_ptr<Transport> inner_;
    std::filesystem::path dir_;
    std::mutex mutex_;
};

// ---------------------------------------------------------------------
// Client
// ---------------------------------------------------------------------

struct RetryPolicy {
    int max_attempts = 3;
    int base_delay_ms = 500;  ///< doubled per retry; 0 disables sleeping
};

struct ClientConfig {
    std::string api_key;  ///< required only for live transports
    std::string model = "gpt-3.5-turbo";
    double temperature = 0.7;
    int max_in_flight = 4;
    RetryPolicy retry;
    std::string system_message{kDefaultSystemMessage};
};

/// Byte-stable serialization used both on the wire and for fixture keys.
inline std::string serialize_chat_request(const ChatRequest& request) {
    nlohmann::ordered_json body;
    body["model"] = request.model;
    auto messages = nlohmann::ordered_json::array();
    for (const ChatMessage& message : request.messages) {
        nlohmann::ordered_json m;
        m["role"] = message.role;
        m["content"] = message.content;
        messages.push_back(std::move(m));
    }
    body["messages"] = std::move(messages);
    body["temperature"] = request.temperature;
    if (request.max_output_tokens) body["max_tokens"] = *request.max_output_tokens;
    return body.dump();
}

class Client {
public:
    Client(ClientConfig config, std::shared_ptr<Transport> transport,
           TemplateLibrary templates = TemplateLibrary::builtin())
        : config_(std::move(config)),
          transport_(std::move(transport)),
          templates_(std::move(templates)) {}

    const ClientConfig& config() const { return config_; }
    const TemplateLibrary& templates() const { return templates_; }
    long network_calls() const { return transport_->network_calls(); }

    ChatResult chat_complete(const ChatRequest& request) {
        HttpRequest http;
        http.method = "POST";
        http.path = "/v1/chat/completions";
        http.content_type = "application/json";
        http.body = serialize_chat_request(request);
        const HttpResponse response = send_with_retry(http);
        try {
            const auto parsed = nlohmann::json::parse(response.body);
            ChatResult result;
            result.content =
                parsed.at("choices").at(0).at("message").at("content").get<std::string>();
            if (parsed.contains("usage")) {
                const auto& usage = parsed["usage"];
                result.usage.prompt_tokens = usage.value("prompt_tokens", 0L);
                result.usage.completion_tokens = usage.value("completion_tokens", 0L);
                result.usage.total_tokens = usage.value("total_tokens", 0L);
            }
            return result;
        } catch (const nlohmann::json::exception& e) {
            throw ApiError(response.status,
                           std::string("unexpected chat completion body: ") + e.what());
        }
    }

    /// The exact request `revise_text` sends; exposed so fixtures can be
    /// prepared ahead of an offline run.
    ChatRequest build_revise_request(std::string_view text, const std::string& template_id,
                                     const std::string& model = "") const {
        ChatRequest request;
        request.model = model.empty() ? config_.model : model;
        request.temperature = config_.temperature;
        request.messages.push_back({"system", config_.system_message});
        request.messages.push_back({"user", templates_.instantiate(template_id, text)});
        return request;
    }

    std::string revise_text(std::string_view text, const std::string& template_id,
                            const std::string& model = "") {
        return chat_complete(build_revise_request(text, template_id, model)).content;
    }

    /// Revises a batch with at most max_in_flight concurrent requests.
    /// Results always line up with the input order.
    std::vector<std::string> revise_batch(const std::vector<std::string>& texts,
                                          const std::string& template_id,
                                          const std::string& model = "") {
        std::vector<std::string> results(texts.size());
        std::vector<std::exception_ptr> failures(texts.size());
        std::atomic<std::size_t> next{0};
        const std::size_t workers =
            std::min<std::size_t>(std::max(config_.max_in_flight, 1), texts.size());
        auto work = [&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= texts.size()) return;
                try {
                    results[i] = revise_text(texts[i], template_id, model);
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work);
        for (std::thread& t : threads) t.join();
        for (const std::exception_ptr& failure : failures) {
            if (failure) std::rethrow_exception(failure);
        }
        return results;
    }

    /// Validates locally, then uploads the JSONL file. Returns the file id.
    std::string upload_training_file(const std::filesystem::path& path) {
        const JsonlValidation validation = validate_jsonl(path);
        if (!validation.passed) {
            std::string summary = "training file failed validation: " + path.string();
            for (const JsonlDiagnostic& d : validation.diagnostics) {
                summary += "\n  line " + std::to_string(d.line) + ": " +
                           jsonl_diagnostic_name(d.kind) +
                           (d.key.empty() ? "" : "(" + d.key + ")") + " " + d.detail;
            }
            throw ValidationRefused(summary);
        }
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoFailure("cannot read file: " + path.string());
        std::ostringstream buf;
        buf << in.rdbuf();

        // Fixed boundary keeps the body byte-stable for record/replay.
        static constexpr std::string_view kBoundary = "hazelkit-form-boundary-4a91";
        std::string body;
        body += "--";
        body += kBoundary;
        body += "\r\nContent-Disposition: form-data; name=\"purpose\"\r\n\r\nfine-tune\r\n--";
        body += kBoundary;
        body += "\r\nContent-Disposition: form-data; name=\"file\"; filename=\"" +
                path.filename().string() + "\"\r\nContent-Type: application/jsonl\r\n\r\n";
        body += buf.str();
        body += "\r\n--";
        body += kBoundary;
        body += "--\r\n";

        HttpRequest http;
        http.method = "POST";
        http.path = "/v1/files";
        http.content_type = "multipart/form-data; boundary=" + std::string(kBoundary);
        http.body = std::move(body);
        const HttpResponse response = send_with_retry(http);
        try {
            return nlohmann::json::parse(response.body).at("id").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw ApiError(response.status, std::string("unexpected upload body: ") + e.what());
        }
    }

    FineTuneJob submit_finetune(const std::string& training_file_id,
                                const std::string& base_model,
                                std::optional<int> epochs = std::nullopt,
                                std::optional<int> batch_size = std::nullopt) {
        nlohmann::ordered_json body;
        body["model"] = base_model;
        body["training_file"] = training_file_id;
        if (epochs || batch_size) {
            nlohmann::ordered_json hyper;
            if (epochs) hyper["n_epochs"] = *epochs;
            if (batch_size) hyper["batch_size"] = *batch_size;
            body["hyperparameters"] = std::move(hyper);
        }
        HttpRequest http;
        http.method = "POST";
        http.path = "/v1/fine_tuning/jobs";
        http.content_type = "application/json";
        http.body = body.dump();
        const HttpResponse response = send_with_retry(http);
        FineTuneJob job = parse_job(response);
        if (job.epochs == std::nullopt) job.epochs = epochs;
        if (job.batch_size == std::nullopt) job.batch_size = batch_size;
        return job;
    }

    FineTuneJob get_job(const std::string& job_id) {
        HttpRequest http;
        http.method = "GET";
        http.path = "/v1/fine_tuning/jobs/" + job_id;
        return parse_job(send_with_retry(http));
    }

    /// Polls until the job reaches a terminal status. Throws JobFailed on
    /// a failed job and PollTimeout once `timeout` elapses.
    FineTuneJob poll_job(const std::string& job_id, std::chrono::milliseconds interval,
                         std::chrono::milliseconds timeout) {
        const auto deadline = std::chrono::steady_clock::now() + timeout;
        while (true) {
            const FineTuneJob job = get_job(job_id);
            switch (job.status) {
                case JobStatus::kSucceeded:
                case JobStatus::kCancelled:
                    return job;
                case JobStatus::kFailed:
                    throw JobFailed("fine-tuning job " + job_id + " failed" +
                                    (job.error_message.empty() ? "" : ": " + job.error_message));
                case JobStatus::kQueued:
                case JobStatus::kRunning:
                    break;
            }
            if (std::chrono::steady_clock::now() >= deadline) {
                throw PollTimeout("job " + job_id + " still " + job_status_name(job.status) +
                                  " after timeout");
            }
            if (interval.count() > 0) std::this_thread::sleep_for(interval);
        }
    }

private:
    HttpResponse send_with_retry(const HttpRequest& request) {
        if (transport_->is_live() && config_.api_key.empty()) {
            throw AuthError("no API key configured; set HAZELKIT_API_KEY");
        }
        const int attempts = std::max(config_.retry.max_attempts, 1);
        for (int attempt = 1; attempt <= attempts; ++attempt) {
            const HttpResponse response = transport_->send(request);
            if (response.status >= 200 && response.status < 300) return response;
            if (response.status == 401) {
                throw AuthError("API key rejected (HTTP 401)");
            }
            const bool retryable = response.status == 429 || response.status >= 500;
            if (!retryable) {
                throw ApiError(response.status, snippet(response.body));
            }
            if (attempt == attempts) {
                if (response.status == 429) {
                    throw RateLimited("rate limited after " + std::to_string(attempts) +
                                      " attempts");
                }
                throw TransientServerError("HTTP " + std::to_string(response.status) +
                                           " after " + std::to_string(attempts) + " attempts");
            }
            const auto delay = std::chrono::milliseconds(
                static_cast<long>(config_.retry.base_delay_ms) << (attempt - 1));
            if (delay.count() > 0) std::this_thread::sleep_for(delay);
        }
        throw TransientServerError("retry loop exhausted");  // unreachable
    }

    static std::string snippet(const std::string& body) {
        return body.size() <= 200 ? body : body.substr(0, 200) + "...";
    }

    FineTuneJob parse_job(const HttpResponse& response) {
        try {
            const auto parsed = nlohmann::json::parse(response.body);
            FineTuneJob job;
            job.job_id = parsed.at("id").get<std::string>();
            job.base_model = parsed.value("model", "");
            job.training_file_id = parsed.value("training_file", "");
            job.status = parse_status(parsed.at("status").get<std::string>());
            if (parsed.contains("fine_tuned_model") && parsed["fine_tuned_model"].is_string()) {
                job.fine_tuned_model = parsed["fine_tuned_model"].get<std::string>();
            }
            if (parsed.contains("error") && parsed["error"].is_object()) {
                job.error_message = parsed["error"].value("message", "");
            }
            if (parsed.contains("hyperparameters") && parsed["hyperparameters"].is_object()) {
                const auto& hyper = parsed["hyperparameters"];
                if (hyper.contains("n_epochs") && hyper["n_epochs"].is_number_integer()) {
                    job.epochs = hyper["n_epochs"].get<int>();
                }
                if (hyper.contains("batch_size") && hyper["batch_size"].is_number_integer()) {
                    job.batch_size = hyper["batch_size"].get<int>();
                }
            }
            return job;
        } catch (const nlohmann::json::exception& e) {
            throw ApiError(response.status, std::string("unexpected job body: ") + e.what());
        }
    }

    static JobStatus parse_status(const std::string& status) {
        if (status == "validating_files" || status == "queued") return JobStatus::kQueued;
        if (status == "running") return JobStatus::kRunning;
        if (status == "succeeded") return JobStatus::kSucceeded;
        if (status == "failed") return JobStatus::kFailed;
        if (status == "cancelled") return JobStatus::kCancelled;
        throw ApiError(200, "unknown job status: " + status);
    }

    ClientConfig config_;
    std::shared_ptr<Transport> transport_;
    TemplateLibrary templates_;
};

}  // namespace hazelkit
