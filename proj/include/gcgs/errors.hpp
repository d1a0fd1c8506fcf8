#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gcgs {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- code transforms ---

struct SyntaxError : Error {
  SyntaxError(std::size_t position, const std::string& what)
      : Error("syntax error at byte " + std::to_string(position) + ": " + what),
        position(position) {}
  std::size_t position;
};

struct NoSuchIdentifier : Error {
  explicit NoSuchIdentifier(const std::string& name)
      : Error("no such identifier: " + name), name(name) {}
  std::string name;
};

struct CollisionError : Error {
  explicit CollisionError(const std::string& name)
      : Error("replacement collides with existing name: " + name), name(name) {}
  std::string name;
};

struct EmptySearchSpace : Error {
  EmptySearchSpace() : Error("no applicable (identifier, replacement) pair") {}
};

// --- oracle ---

struct BudgetExhausted : Error {
  BudgetExhausted() : Error("query budget exhausted") {}
};

struct TransportError : Error {
  explicit TransportError(const std::string& what, bool retryable = true)
      : Error(what), retryable(retryable) {}
  bool retryable;
};

struct MalformedReply : Error {
  using Error::Error;
};

// --- confidence ---

struct MissingProbabilities : Error {
  MissingProbabilities() : Error("reply carries no class probabilities") {}
};

struct MissingLogprobs : Error {
  MissingLogprobs() : Error("reply carries no token logprobs") {}
};

// --- judge ---

struct MissingLabel : Error {
  MissingLabel() : Error("reply carries no class label") {}
};

struct SandboxError : Error {
  using Error::Error;
};

// --- harness / metrics ---

struct FormatError : Error {
  FormatError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

struct NoEligibleInstances : Error {
  NoEligibleInstances() : Error("no baseline-correct instances") {}
};

}  // namespace gcgs
