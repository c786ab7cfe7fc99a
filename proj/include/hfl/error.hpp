// SPDX-License-Identifier: Apache-2.0

#ifndef HFL_ERROR_HPP
#define HFL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hfl {

enum class ErrorCode {
    Parse = 1,
    Domain,
    SizeLimit,
    NotWellOrder,
    WellFoundedness,
    Argument,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Malformed text. `column` is 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t column)
        : Error(ErrorCode::Parse, what + " at column " + std::to_string(column)), column_(column) {}
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

class SizeLimitError : public Error {
public:
    explicit SizeLimitError(const std::string& what) : Error(ErrorCode::SizeLimit, what) {}
};

class NotWellOrderError : public Error {
public:
    explicit NotWellOrderError(const std::string& what) : Error(ErrorCode::NotWellOrder, what) {}
};

class WellFoundednessError : public Error {
public:
    explicit WellFoundednessError(const std::string& what)
        : Error(ErrorCode::WellFoundedness, what) {}
};

class ArgumentError : public Error {
public:
    explicit ArgumentError(const std::string& what) : Error(ErrorCode::Argument, what) {}
};

} // namespace hfl

#endif
