#pragma once

#include <stdexcept>
#include <string>

namespace canon {

/// Invalid input: malformed scheme text, broken invariants, impossible requests.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured budget (visited prefixes, graph nodes, matrix size) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Power iteration did not settle within the iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace canon
