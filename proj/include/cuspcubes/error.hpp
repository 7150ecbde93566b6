#pragma once

#include <stdexcept>
#include <string>

namespace cuspcubes {

// Thrown for malformed input: bad slopes, invalid diagrams, bad arc specs.
class invalid_input : public std::invalid_argument {
 public:
  explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when an internal consistency check fails. Seeing one means a bug.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

namespace detail {

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw invalid_input(msg);
}

inline void ensure(bool ok, const std::string& msg) {
  if (!ok) throw internal_error(msg);
}

}  // namespace detail
}  // namespace cuspcubes
