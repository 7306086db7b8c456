#pragma once

#include <stdexcept>
#include <string>

namespace metalie {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Violated precondition: mismatched dimensions or fields, invalid payloads,
/// out-of-range generator indices, non-automorphism arguments.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A decomposition was requested outside the hypotheses that make it valid
/// (lower-degree thresholds, rank/characteristic restrictions, cubic
/// obstructions in tame mode).
class HypothesisError : public Error {
public:
  using Error::Error;
};

/// An internally recomputed identity failed.  This is never a user error:
/// it means a claimed rewriting step did not recompose to its target, and
/// the engine aborts instead of emitting a wrong word.
class CertificationError : public Error {
public:
  using Error::Error;
};

}  // namespace metalie
