#ifndef DEFQUAD_ERRORS_HPP
#define DEFQUAD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace defquad {

// Parameter outside its family's admissible range.
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A bracket, factorial or derived quantity left the double range.
class OverflowError : public std::runtime_error {
public:
  explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

// Eigen iteration failed to converge within its cap.
class ConvergenceError : public std::runtime_error {
public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace defquad

#endif
