#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace irmen {

/// Malformed configuration, workload or image text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter set that violates one or more invariants.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Shapes or list lengths that do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The integrated state stopped being finite.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::size_t neuron);
  std::size_t neuron() const { return neuron_; }

 private:
  std::size_t neuron_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace irmen
