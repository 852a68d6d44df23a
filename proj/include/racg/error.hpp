#pragma once

#include <chrono>
#include <stdexcept>
#include <string>

namespace racg {

enum class ErrorCode {
  Parse,
  Validation,
  ResourceLimit,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

// Per-thread compute deadline. Long-running searches call Budget::check()
// and throw ResourceLimit once the deadline passes.
class Budget {
public:
  static void set_deadline_ms(long ms);
  static void clear();
  static void check();

  // RAII scope, used by the C API to honor RACG_BUDGET_MS per call.
  class Scope {
  public:
    explicit Scope(long ms) {
      if (ms > 0) set_deadline_ms(ms);
    }
    ~Scope() { clear(); }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;
  };
};

}  // namespace racg
