#pragma once

#include <stdexcept>
#include <string>

namespace untwist {

// Error categories shared by the library and the CLI.  The CLI maps each
// category to a distinct process exit code (usage errors are code 2, handled
// by the argument parser itself).
enum class ErrorCode : int {
    negative_coefficient = 3,  // periodicity subtraction went below zero
    degree_exceeded = 4,       // interpolated polynomial has degree > d
    mismatch = 5,              // held-out prediction disagreed with data
    missing_entry = 6,         // twist-parameter table lacks a partition
    dimension_mismatch = 7,    // algebra dimension failed its closed-form check
    budget = 8,                // configured size budget exceeded
    domain = 9,                // invalid argument outside any category above
    internal = 10,             // self-certification failed (should not happen)
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }
    int exit_code() const { return static_cast<int>(code_); }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline void require(bool ok, ErrorCode code, const std::string& what) {
    if (!ok) fail(code, what);
}

}  // namespace untwist
