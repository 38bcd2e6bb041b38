#pragma once

#include <stdexcept>
#include <string>

namespace efo {

// input: the caller handed us malformed data (bad JSON, unknown ids, ...).
// precondition: a well-formed instance outside a solver's stated domain.
// internal: an invariant the library promises to maintain was violated.
enum class ErrorKind { input, precondition, internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string reason, const std::string& detail = "")
      : std::runtime_error(detail.empty() ? reason : reason + ": " + detail),
        kind_(kind),
        reason_(std::move(reason)) {}

  ErrorKind kind() const { return kind_; }
  // Stable machine-readable slug, e.g. "not-envy-freeable".
  const std::string& reason() const { return reason_; }

 private:
  ErrorKind kind_;
  std::string reason_;
};

[[noreturn]] inline void throw_input(const std::string& reason,
                                     const std::string& detail = "") {
  throw Error(ErrorKind::input, reason, detail);
}

[[noreturn]] inline void throw_precondition(const std::string& reason,
                                            const std::string& detail = "") {
  throw Error(ErrorKind::precondition, reason, detail);
}

[[noreturn]] inline void throw_internal(const std::string& reason,
                                        const std::string& detail = "") {
  throw Error(ErrorKind::internal, reason, detail);
}

inline void check_internal(bool ok, const std::string& reason,
                           const std::string& detail = "") {
  if (!ok) throw_internal(reason, detail);
}

}  // namespace efo
