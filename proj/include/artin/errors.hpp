// Error taxonomy shared by the library and the CLI exit-code scheme.
#pragma once

#include <stdexcept>
#include <string>

namespace artin {

// Violated mathematical precondition: bad/ramified prime, non-coprime data,
// reducible input where irreducibility is required, root-of-unity element.
// CLI exit code 2.
struct MathError : std::runtime_error {
  explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

struct BadPrimeError : MathError {
  explicit BadPrimeError(const std::string& what) : MathError(what) {}
};

struct NotCoprimeError : MathError {
  explicit NotCoprimeError(const std::string& what) : MathError(what) {}
};

struct RootOfUnityError : MathError {
  explicit RootOfUnityError(const std::string& what) : MathError(what) {}
};

// A bound of the artifact was exceeded (sieve budget, 63-bit factorization
// range). CLI exit code 2.
struct ResourceError : MathError {
  explicit ResourceError(const std::string& what) : MathError(what) {}
};

// Inconsistent configuration (selector does not match the field, bad
// threshold). CLI exit code 1.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Input file cannot be parsed or is internally inconsistent. CLI exit code 1.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct CacheIntegrityError : IoError {
  explicit CacheIntegrityError(const std::string& what) : IoError(what) {}
};

// An honest "cannot decide" terminal state (irreducibility certification).
// CLI exit code 3.
struct UndeterminedError : std::runtime_error {
  explicit UndeterminedError(const std::string& what)
      : std::runtime_error(what) {}
};

// A correctness invariant failed (e.g. the two order paths disagree outside
// the exclusion set). Always a bug, never swallowed. CLI exit code 4.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace artin
