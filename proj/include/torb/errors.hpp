#pragma once

#include <stdexcept>
#include <string>

namespace torb {

// A domain-rule violation: invalid face, rank-deficient matrix, failed
// precondition. Maps to CLI exit code 1.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: bad JSON, schema violations, unreadable files.
// Maps to CLI exit code 2.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace torb
