#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "vipr/model.hpp"

namespace vipr {

enum class ParseErrorKind {
  UnexpectedToken,
  DecimalNotation,
  BadCount,
  BadIndex,
  UnknownSense,
  UnknownReason,
  MissingSection,
  TrailingGarbage,
};

const char* parse_error_kind_name(ParseErrorKind kind);

/// Malformed certificate text. `line` and `column` are 1-based and point at
/// the offending token (or at the end of input when it ended early).
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& message);

  [[nodiscard]] ParseErrorKind kind() const { return kind_; }
  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
};

struct ParsedCertificate {
  Problem problem;
  Certificate certificate;

  friend bool operator==(const ParsedCertificate&, const ParsedCertificate&) = default;
};

/// Reads a VIPR 1.0 certificate. File indices are 0-based; the returned model
/// is 1-based throughout.
ParsedCertificate parse_certificate(std::string_view text);
ParsedCertificate parse_certificate(std::istream& input);
ParsedCertificate parse_certificate_file(const std::string& path);

/// Writes the model back in VIPR 1.0 syntax, ending with a single newline.
std::string serialize_certificate(const Problem& problem, const Certificate& certificate);

}  // namespace vipr
