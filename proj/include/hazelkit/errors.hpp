#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hazelkit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- text -------------------------------------------------------------

class EmptyText : public Error {
public:
    EmptyText() : Error("text contains no letters") {}
    explicit EmptyText(const std::string& what) : Error(what) {}
};

// --- corpus -----------------------------------------------------------

class MissingDirectory : public Error {
public:
    explicit MissingDirectory(const std::string& path)
        : Error("missing directory: " + path), path(path) {}
    std::string path;
};

class InsufficientMaterial : public Error {
public:
    InsufficientMaterial(int requested_n, int achieved_n)
        : Error("insufficient material: requested " + std::to_string(requested_n) +
                " excerpts but only " + std::to_string(achieved_n) + " disjoint windows fit"),
          requested(requested_n),
          achieved(achieved_n) {}
    int requested;
    int achieved;
};

class MalformedCsv : public Error {
public:
    MalformedCsv(std::size_t row_number, const std::string& detail)
        : Error("malformed CSV at row " + std::to_string(row_number) + ": " + detail),
          row(row_number) {}
    std::size_t row;
};

class MissingColumn : public Error {
public:
    explicit MissingColumn(const std::string& column_name)
        : Error("missing column: " + column_name), column(column_name) {}
    std::string column;
};

// --- dataset ----------------------------------------------------------

class MissingRevision : public Error {
public:
    explicit MissingRevision(const std::string& excerpt_id)
        : Error("excerpt has no revised text: " + excerpt_id), excerpt_id(excerpt_id) {}
    std::string excerpt_id;
};

class EmptyInput : public Error {
public:
    explicit EmptyInput(const std::string& what) : Error(what) {}
};

class IoFailure : public Error {
public:
    explicit IoFailure(const std::string& what) : Error(what) {}
};

// --- readability ------------------------------------------------------

class UnknownFormula : public Error {
public:
    explicit UnknownFormula(const std::string& what) : Error(what) {}
};

// --- evaluation -------------------------------------------------------

class EmptySet : public Error {
public:
    explicit EmptySet(const std::string& what) : Error(what) {}
};

class FormulaMismatch : public Error {
public:
    explicit FormulaMismatch(const std::string& what) : Error(what) {}
};

class OutOfRange : public Error {
public:
    OutOfRange(std::size_t row_number, const std::string& column_name, const std::string& detail)
        : Error("value out of range at row " + std::to_string(row_number) + ", column " +
                column_name + ": " + detail),
          row(row_number),
          column(column_name) {}
    std::size_t row;
    std::string column;
};

class UnknownFormat : public Error {
public:
    explicit UnknownFormat(const std::string& name)
        : Error("unknown report format: " + name) {}
};

// --- llm client -------------------------------------------------------

class AuthError : public Error {
public:
    explicit AuthError(const std::string& what) : Error(what) {}
};

class RateLimited : public Error {
public:
    explicit RateLimited(const std::string& what) : Error(what) {}
};

class TransientServerError : public Error {
public:
    explicit TransientServerError(const std::string& what) : Error(what) {}
};

class ApiError : public Error {
public:
    ApiError(int status_code, const std::string& what)
        : Error("API error (HTTP " + std::to_string(status_code) + "): " + what),
          status(status_code) {}
    int status;
};

class FixtureMiss : public Error {
public:
    explicit FixtureMiss(const std::string& what) : Error(what) {}
};

class UnknownTemplate : public Error {
public:
    explicit UnknownTemplate(const std::string& id)
        : Error("unknown prompt template: " + id), id(id) {}
    std::string id;
};

class ValidationRefused : public Error {
public:
    explicit ValidationRefused(const std::string& what) : Error(what) {}
};

class JobFailed : public Error {
public:
    explicit JobFailed(const std::string& what) : Error(what) {}
};

class PollTimeout : public Error {
public:
    explicit PollTimeout(const std::string& what) : Error(what) {}
};

// --- cli --------------------------------------------------------------

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace hazelkit
