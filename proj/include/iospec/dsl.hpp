#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "iospec/spec.hpp"

namespace iospec {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::string message, std::vector<std::string> expected = {});

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::string message_;
  std::vector<std::string> expected_;
};

// Syntactically valid source whose specification is not well-formed.
class WellFormednessError : public std::runtime_error {
 public:
  explicit WellFormednessError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Parses `.iospec` source. Throws ParseError or WellFormednessError.
Specification parse_spec(std::string_view source);

// Parses a single term (no well-formedness check). Throws ParseError.
Term parse_term(std::string_view source);

/// Canonical text; every statement on its own line, two-space indentation,
/// trailing newline. Nop prints as "".
std::string print_spec(const Specification& s);

std::string print_term(const Term& t);
std::string print_value_set(const ValueSet& vs);
std::string print_pattern(const OutputPattern& p);

}  // namespace iospec
