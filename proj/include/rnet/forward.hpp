#ifndef RNET_FORWARD_HPP
#define RNET_FORWARD_HPP

#include <span>
#include <vector>

#include "rnet/matrix.hpp"
#include "rnet/network.hpp"

namespace rnet {

// Boundary response matrix: boundary potentials to boundary currents.
class DtNMap {
 public:
  // Wraps a square matrix. No symmetry check: inverse-problem input may be
  // data of unknown provenance.
  explicit DtNMap(Matrix entries);

  int n_boundary() const noexcept { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const noexcept { return entries_; }

  // Worst violations of the structural invariants, each divided by
  // max_abs(entries): asymmetry, row sum, positive off-diagonal.
  struct InvariantReport {
    double asymmetry = 0.0;
    double row_sum = 0.0;
    double positive_offdiag = 0.0;
    bool holds(double tol) const {
      return asymmetry <= tol && row_sum <= tol && positive_offdiag <= tol;
    }
  };
  InvariantReport invariants() const;

 private:
  Matrix entries_;
};

// Row set P and column set Q of boundary labels, each strictly ascending,
// |P| = |Q|. P and Q may overlap.
class BoundaryPair {
 public:
  BoundaryPair() = default;
  // Throws InputError unless the invariants hold for n_boundary.
  BoundaryPair(std::vector<Vertex> p, std::vector<Vertex> q, int n_boundary);

  const std::vector<Vertex>& p() const noexcept { return p_; }
  const std::vector<Vertex>& q() const noexcept { return q_; }
  std::size_t size() const noexcept { return p_.size(); }

  friend bool operator==(const BoundaryPair&, const BoundaryPair&) = default;
  friend auto operator<=>(const BoundaryPair&, const BoundaryPair&) = default;

 private:
  std::vector<Vertex> p_;
  std::vector<Vertex> q_;
};

// Lambda = A - B C^{-1} B^T. Throws InteriorNotGrounded if C is not
// positive definite.
DtNMap dtn(const Network& net);

// Potential on all vertices whose boundary values are u_boundary and which
// is harmonic at every interior vertex.
std::vector<double> harmonic_extension(const Network& net, std::span<const double> u_boundary);

// det Lambda(P, Q), rows and columns in ascending label order.
double dtn_subdet(const DtNMap& lam, const BoundaryPair& pair);

// det K(rows, cols) for 1-based label sets, ascending order; sorted
// internally. Empty sets give 1.
double kirchhoff_subdet(const KirchhoffMatrix& k, std::span<const Vertex> rows,
                        std::span<const Vertex> cols);

// Sorted union of a boundary set with the interior labels.
std::vector<Vertex> with_interior(const Network& net, std::span<const Vertex> boundary_set);

// |value - reference| / max(|reference|, 1e-300); an exactly zero reference
// with nonzero value gives 1.
double relative_discrepancy(double value, double reference);

// Relative discrepancy of det Lambda(P,Q) * det K(I,I) against
// det K(P u I, Q u I).
double schur_identity_check(const Network& net, const BoundaryPair& pair);

}  // namespace rnet

#endif  // RNET_FORWARD_HPP
