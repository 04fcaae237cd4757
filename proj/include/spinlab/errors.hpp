#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spinlab {

/// A caller supplied a parameter outside an operation's domain.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A simulation reached a state that the dynamics can never produce.
/// Only implementation bugs raise this; callers must not continue.
class InvariantFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An experiment config failed validation. `field` names the offending key.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Wraps a failure raised inside one replica of a fan-out.
class ReplicaFailure : public std::runtime_error {
 public:
  ReplicaFailure(std::uint64_t replica, std::uint64_t seed, const std::string& what, bool invariant)
      : std::runtime_error("replica " + std::to_string(replica) + " (seed " + std::to_string(seed) +
                           "): " + what),
        replica_(replica),
        seed_(seed),
        invariant_(invariant) {}

  std::uint64_t replica() const noexcept { return replica_; }
  std::uint64_t seed() const noexcept { return seed_; }
  bool is_invariant_failure() const noexcept { return invariant_; }

 private:
  std::uint64_t replica_;
  std::uint64_t seed_;
  bool invariant_;
};

}  // namespace spinlab
