#pragma once

#include <stdexcept>
#include <string>

namespace pem {

// Exit-code categories used by the CLI: 1 usage, 2 I/O, 3 data validation,
// 4 internal.
enum class ErrorCategory { Usage = 1, Io = 2, Data = 3, Internal = 4 };

class PemError : public std::runtime_error {
public:
    PemError(ErrorCategory cat, std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), category_(cat), code_(std::move(code)) {}

    ErrorCategory category() const { return category_; }
    const std::string& code() const { return code_; }

private:
    ErrorCategory category_;
    std::string code_;
};

class IoError : public PemError {
public:
    IoError(const std::string& msg) : PemError(ErrorCategory::Io, "IoFailure", msg) {}
};

class DataError : public PemError {
public:
    DataError(std::string code, const std::string& msg)
        : PemError(ErrorCategory::Data, std::move(code), msg) {}
};

class InternalError : public PemError {
public:
    InternalError(const std::string& msg) : PemError(ErrorCategory::Internal, "Internal", msg) {}
};

} // namespace pem
