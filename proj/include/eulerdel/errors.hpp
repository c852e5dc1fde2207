#pragma once

#include <stdexcept>

namespace eulerdel {

/// A configured size ceiling (coordinate count, edge count, slot count) would
/// be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The solver produced an answer that failed exact verification twice.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eulerdel
