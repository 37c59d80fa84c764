#pragma once

// Separate header so that test binaries using replay transports do not
// pull in cpp-httplib (and its optional TLS dependency).

#include <memory>
#include <string>

#include <httplib.h>

#include "hazelkit/errors.hpp"
#include "hazelkit/llm.hpp"

namespace hazelkit {

class LiveTransport : public Transport {
public:
    LiveTransport(std::string base_url, std::string api_key)
        : base_url_(std::move(base_url)), api_key_(std::move(api_key)) {}

    HttpResponse send(const HttpRequest& request) override {
        ++network_calls_;
        httplib::Client client(base_url_);
        client.set_connection_timeout(30);
        client.set_read_timeout(120);
        const httplib::Headers headers = {{"Authorization", "Bearer " + api_key_}};

        httplib::Result result;
        if (request.method == "GET") {
            result = client.Get(request.path, headers);
        } else {
            result = client.Post(request.path, headers, request.body, request.content_type);
        }
        if (!result) {
            // connection-level failure surfaces as retryable
            throw TransientServerError("connection to " + base_url_ + " failed: " +
                                       httplib::to_string(result.error()));
        }
        return {result->status, result->body};
    }

    bool is_live() const override { return true; }

private:
    std::string base_url_;
    std::string api_key_;
};

}  // namespace hazelkit
