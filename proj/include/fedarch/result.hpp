#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace fedarch {

// Value-or-error return for operations whose failure is an expected
// outcome (model output parsing, transport), as opposed to contract
// violations, which throw.
template <class T, class E>
class Result {
 public:
  Result(T value) : v_(std::in_place_index<0>, std::move(value)) {}
  Result(E error) : v_(std::in_place_index<1>, std::move(error)) {}

  bool ok() const { return v_.index() == 0; }
  explicit operator bool() const { return ok(); }

  const T& value() const& { return std::get<0>(v_); }
  T& value() & { return std::get<0>(v_); }
  T&& take() && { return std::get<0>(std::move(v_)); }
  const E& error() const { return std::get<1>(v_); }

 private:
  std::variant<T, E> v_;
};

// Raw model output that could not be turned into a record or score card.
// Carries the original text so retries and audits can reference it.
struct ParseFailure {
  std::string message;
  std::string raw;
};

// Structured-text parse error with source location.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line = 0, std::string field = "")
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line),
        field_(std::move(field)) {}

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fedarch
