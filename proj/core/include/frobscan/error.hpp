#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace frobscan {

enum class ErrorCode {
  Parse,        // malformed expression or input file
  Domain,       // precondition violation (bad parameter, wrong shape)
  WorkCap,      // requested computation exceeds the configured budget
  NoPlan,       // char-sum planner found no eliminable structure
  Internal,     // invariant broken at runtime; always a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Syntax / unknown-identifier errors carry the byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(ErrorCode::Parse, what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class WorkCapError : public Error {
 public:
  WorkCapError(const std::string& what, uint64_t required, uint64_t cap)
      : Error(ErrorCode::WorkCap, what + ": needs " + std::to_string(required) +
                                      " evaluations, cap is " + std::to_string(cap)),
        required_(required) {}
  uint64_t required() const { return required_; }

 private:
  uint64_t required_;
};

}  // namespace frobscan
