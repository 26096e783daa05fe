#pragma once

#include <stdexcept>
#include <string>

namespace trapcert {

/// Argument outside the mathematical domain of an operation (t <= 0, k <= 0, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A value that cannot be represented as a normal binary64 number.
class RangeError : public std::range_error {
public:
  using std::range_error::range_error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A certificate that the construction guarantees has failed. Always a bug or
/// a deliberately injected fault.
class CertificateFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace trapcert
