#pragma once

#include <stdexcept>
#include <string>

namespace familial {

// Raised when inputs are well-formed but the requested statistic is undefined
// for them (zero variance, every observation tied with the null value, ...).
// Malformed inputs use std::invalid_argument instead.
class degenerate_error : public std::domain_error {
 public:
  explicit degenerate_error(const std::string& what) : std::domain_error(what) {}
};

}  // namespace familial
