#pragma once

#include <stdexcept>
#include <string>

namespace walkforge {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed textual input (ordinal expressions, JSON payloads).
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"), pos(position) {}
  std::size_t pos;
};

// A configuration object violates its own invariants (bad bounds, missing
// table rows, non-injective promotion maps, ...).
struct ConfigError : Error {
  using Error::Error;
};

// A C-sequence provider failed to answer a query it is contractually able to
// answer, e.g. an explicit table with no member >= the walk target.
struct ProviderCorruption : Error {
  using Error::Error;
};

}  // namespace walkforge
