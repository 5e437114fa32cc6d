#pragma once

#include <stdexcept>
#include <string>

#include "endgraph/signature.hpp"

namespace endgraph {

/// Syntax error with the byte offset of the offending input position.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t offset, const std::string& expected)
      : std::runtime_error("parse error at byte " + std::to_string(offset) +
                           ": expected " + expected),
        offset_(offset),
        expected_(expected) {}
  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

private:
  std::size_t offset_;
  std::string expected_;
};

/// Parse a signature expression.  The result must be closed (free index
/// variables are only legal inside {...} family binders).
Signature parseSignature(const std::string& text);

/// Parse an ordinal expression such as "w^2*3+w*7+4"; must be closed.
Ordinal parseOrdinal(const std::string& text);

/// Parse an ordinal expression that may carry one free index variable.
OrdinalExpr parseOrdinalExpr(const std::string& text);

}  // namespace endgraph
