#pragma once

// Explicit real matrix models of sl(n,R), su(p,q), so(p,q) and sp(n,R).
//
// Used as an oracle independent of the root tables: the Killing form comes from
// ad-traces of the structure constants, and curvature spectra come from an
// eigensolver applied to X -> -[[X,h],h] on p.

#include "cvanish/catalog.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace cvanish {

enum class MatrixFamily { sl_real, su, so, sp_real };

struct MatrixAlgebra {
  MatrixFamily family = MatrixFamily::sl_real;
  std::vector<int> params;
  std::string name;  ///< "sl(3,R)", "su(1,2)", ...

  /// Frobenius-orthonormal basis: antisymmetric (k) elements first, then symmetric (p).
  std::vector<Eigen::MatrixXd> basis;
  int k_dim = 0;
  int p_dim = 0;
  int rank = 0;
  /// Indices into basis; a_basis is the first `rank` entries of p_basis.
  std::vector<int> p_basis;
  std::vector<int> a_basis;
  /// Cartan involution X -> -X^T in basis coordinates: +1 on k, -1 on p.
  Eigen::VectorXd theta;
  /// ad(basis[i]) in basis coordinates.
  std::vector<Eigen::MatrixXd> ad;
  /// max over all basis pairs of |[X_i,X_j] - sum_k c_k X_k|_F
  double closure_residual = 0.0;

  int dim() const { return static_cast<int>(basis.size()); }
  /// Frobenius coordinates of a matrix in the basis.
  Eigen::VectorXd coordinates(const Eigen::MatrixXd& m) const;
  Eigen::MatrixXd element(const Eigen::VectorXd& coords) const;
  /// ad of an arbitrary element given in basis coordinates.
  Eigen::MatrixXd ad_of(const Eigen::VectorXd& coords) const;
};

std::string_view matrix_family_name(MatrixFamily family);

/// Desk-scale models: n <= 6, p + q <= 6. Throws ParameterError otherwise.
MatrixAlgebra build_algebra(MatrixFamily family, const std::vector<int>& params);

/// Matrix model for a catalog space (AI, AIII, BDI, CI). Throws ParameterError
/// ("no matrix model") for every other family.
MatrixAlgebra build_algebra_for(const SpaceDescriptor& space);
bool has_matrix_model(const SpaceDescriptor& space);

/// B(X_i, X_j) = trace(ad X_i ad X_j). Throws InternalError if singular.
Eigen::MatrixXd killing_form(const MatrixAlgebra& algebra);

/// Killing-orthonormal basis of a: column j holds basis coordinates of the j-th vector.
Eigen::MatrixXd killing_orthonormal_flat(const MatrixAlgebra& algebra, const Eigen::MatrixXd& killing);

/// Matrix of X -> -[[X,h],h] on p in a Killing-orthonormal basis of p.
/// `h_flat` are coordinates of h in the Killing-orthonormal basis of a and are
/// normalized to unit length. Throws ParameterError if h_flat has the wrong size or is zero.
Eigen::MatrixXd curvature_operator_matrix(const MatrixAlgebra& algebra, const Eigen::MatrixXd& killing,
                                          const Eigen::VectorXd& h_flat);

struct SymmetricEigen {
  Eigen::VectorXd values;   ///< descending
  Eigen::MatrixXd vectors;  ///< columns, matching values
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal norm is <= 1e-12 (relative to
/// max(1, |A|_F)). Throws ParameterError if the input is not symmetric within 1e-8.
SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& matrix);
std::vector<double> sym_eigenvalues(const Eigen::MatrixXd& matrix);

struct OracleRoot {
  Eigen::VectorXd vector;  ///< in Killing-orthonormal a coordinates
  int multiplicity = 0;
};

/// Positive restricted roots read off the joint eigenspaces of ad(a), positive
/// with respect to a generic element chosen from `seed`.
std::vector<OracleRoot> oracle_positive_roots(const MatrixAlgebra& algebra, const Eigen::MatrixXd& killing,
                                              std::uint64_t seed = 7);

struct CrossCheckReport {
  std::string space_label;
  std::string algebra_name;
  int trials = 0;
  double max_discrepancy = 0.0;
  double max_trace_error = 0.0;
  bool passed = false;
  std::string diagnostic;
  /// Isometry from catalog flat coordinates to Killing-orthonormal a coordinates.
  Eigen::MatrixXd isometry;
};

/// Compares sorted curvature spectra from the matrix model with the root-theoretic
/// prediction over `trials` random unit directions. Passes iff max discrepancy <= 1e-8.
CrossCheckReport cross_check(const SpaceDescriptor& space, int trials, std::uint64_t seed = 0);

}  // namespace cvanish
