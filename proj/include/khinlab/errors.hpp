#ifndef KHINLAB_ERRORS_HPP
#define KHINLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace khinlab {

enum class ErrorKind {
  bad_argument,        // domain violation (nonpositive p, a outside (0,1), ...)
  dimension_too_large, // enumeration would exceed the configured cap
  malformed_weight,    // weight spec violates its invariants
  no_valid_delta,      // quantile level above the weight's nonzero mass
  s_below_threshold,   // P(w != 0) too small for the requested mode
  parse_error,         // unreadable input file or number
  unknown_suite,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace khinlab

#endif
