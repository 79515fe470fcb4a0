#ifndef RNET_ERROR_HPP
#define RNET_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rnet {

// Failure categories. The numeric values are the CLI exit codes.
enum class ErrorKind : int {
  kInternal = 1,
  kInput = 2,              // malformed text, bad indices, dimension mismatch
  kModel = 3,              // ungrounded interior, enumeration limit
  kExpansionMismatch = 4,  // path expansion disagrees with LU determinant
  kRank = 5,               // rank-deficient system, no usable rows
  kRoundTrip = 6,          // recovered conductivities do not reproduce the data
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::kInput, what) {}
};

// Raised by the SPD solve; at the forward level it means some interior
// component has no path to the boundary.
class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(const std::string& what)
      : Error(ErrorKind::kModel, what) {}
};

class InteriorNotGrounded : public Error {
 public:
  explicit InteriorNotGrounded(const std::string& what)
      : Error(ErrorKind::kModel, what) {}
};

class EnumerationLimit : public Error {
 public:
  explicit EnumerationLimit(const std::string& what)
      : Error(ErrorKind::kModel, what) {}
};

class ExpansionMismatch : public Error {
 public:
  explicit ExpansionMismatch(const std::string& what)
      : Error(ErrorKind::kExpansionMismatch, what) {}
};

class NotSparseDifference : public Error {
 public:
  explicit NotSparseDifference(const std::string& what)
      : Error(ErrorKind::kInput, what) {}
};

class AllRowsDegenerate : public Error {
 public:
  explicit AllRowsDegenerate(const std::string& what)
      : Error(ErrorKind::kRank, what) {}
};

// Numerical or exact rank below the number of unknowns. `unresolved` holds
// the undetermined columns: 0-based column indices when raised by lstsq,
// 1-based edge ids when raised by the inverse solver.
class RankDeficient : public Error {
 public:
  RankDeficient(const std::string& what, std::size_t rank,
                std::vector<int> unresolved)
      : Error(ErrorKind::kRank, what),
        rank_(rank),
        unresolved_(std::move(unresolved)) {}
  std::size_t rank() const noexcept { return rank_; }
  const std::vector<int>& unresolved() const noexcept { return unresolved_; }

 private:
  std::size_t rank_;
  std::vector<int> unresolved_;
};

}  // namespace rnet

#endif  // RNET_ERROR_HPP
