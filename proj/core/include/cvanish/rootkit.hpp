#pragma once

// Restricted root systems in exact coordinates.
//
// Roots are stored with rational coordinates in an ambient Euclidean space
// (R^{n+1} for A_n, R^3 for G2, R^8 for E6/E7). The maximal flat is the span
// of the roots; `flat_roots()` gives double-precision coordinates in a fixed
// orthonormal basis of that span, already multiplied by the normalization scale.
// The scale itself is kept as an exact rational square, so every norm and
// pairing comparison can be made without rounding.

#include "cvanish/rational.hpp"

#include <Eigen/Dense>

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cvanish {

enum class Family { A, B, C, D, BC, E6, E7, E8, F4, G2 };

std::string_view family_name(Family family);

/// "A2", "BC1", "E6". Exceptional families ignore the rank argument.
std::string root_type_name(Family family, int rank);

/// Inverse of root_type_name. Throws ParameterError.
std::pair<Family, int> parse_root_type(std::string_view text);

/// Orbit-class names a multiplicity map may use for this family.
///   A, D, E6-E8: "all"
///   B:  "e_i+-e_j", "e_i"
///   C:  "e_i+-e_j", "2e_i"
///   BC: "e_i+-e_j", "e_i", "2e_i"
///   F4, G2: "long", "short"
std::vector<std::string> orbit_vocabulary(Family family);

struct RootVector {
  std::vector<Rational> coords;

  Rational norm2() const { return dot(coords, coords); }
  friend bool operator==(const RootVector&, const RootVector&) = default;
};

/// Closed positive Weyl chamber {h : <alpha_i, h> >= 0} in flat coordinates.
struct ChamberCone {
  int rank = 0;
  std::vector<RootVector> simple_roots;
  /// Exact Gram matrix of the (unnormalized) simple roots.
  RationalMatrix gram;
  /// Column i is simple root i in flat coordinates (normalized).
  Eigen::MatrixXd walls;

  bool contains(const Eigen::VectorXd& h, double tol = 1e-12) const;
  Eigen::VectorXd reflect(const Eigen::VectorXd& h, int wall) const;
  /// Applies simple reflections until h lies in the closed chamber.
  Eigen::VectorXd fold(Eigen::VectorXd h) const;
  /// Unit vectors spanning the extreme rays (dual basis to the walls, normalized).
  std::vector<Eigen::VectorXd> extreme_rays() const;
};

class RestrictedRootSystem {
 public:
  Family family() const { return family_; }
  int rank() const { return rank_; }
  int ambient_dim() const { return ambient_dim_; }
  std::string type_name() const { return root_type_name(family_, rank_); }

  /// Positive roots sorted by height, then by simple-root coefficients.
  const std::vector<RootVector>& positive_roots() const { return roots_; }
  std::size_t root_count() const { return roots_.size(); }
  const std::vector<RootVector>& simple_roots() const { return chamber_.simple_roots; }
  /// Coefficients of each positive root in the simple-root basis (nonnegative).
  const std::vector<std::vector<Rational>>& simple_coefficients() const { return coefficients_; }
  /// Orbit class of each positive root, see orbit_vocabulary.
  const std::vector<std::string>& orbit_classes() const { return classes_; }
  const std::vector<int>& multiplicities() const { return multiplicities_; }
  int total_multiplicity() const;

  bool normalized() const { return normalized_; }
  /// Square of the factor applied to the stored coordinates.
  const Rational& scale_squared() const { return scale2_; }
  double normalization_scale() const;
  /// |c * lambda_i|^2 with c the normalization scale.
  Rational scaled_norm2(std::size_t i) const { return scale2_ * roots_[i].norm2(); }
  /// Unscaled exact pairing <lambda_i, lambda_j>.
  Rational pairing(std::size_t i, std::size_t j) const { return dot(roots_[i].coords, roots_[j].coords); }

  /// rank x root_count; column i is the scaled root i in flat coordinates.
  const Eigen::MatrixXd& flat_roots() const { return flat_roots_; }
  /// ambient_dim x rank orthonormal basis of the flat.
  const Eigen::MatrixXd& flat_basis() const { return flat_basis_; }
  const ChamberCone& chamber() const { return chamber_; }

  /// True when the Dynkin graph of the simple roots is connected.
  bool dynkin_connected() const;

  friend RestrictedRootSystem build_root_system(Family family, int rank);
  friend RestrictedRootSystem attach_multiplicities(RestrictedRootSystem system,
                                                    const std::map<std::string, int>& multiplicity_map);
  friend RestrictedRootSystem killing_normalize(RestrictedRootSystem system);
  friend RestrictedRootSystem rescale(RestrictedRootSystem system, const Rational& factor_squared);

 private:
  void refresh_flat();

  Family family_ = Family::A;
  int rank_ = 0;
  int ambient_dim_ = 0;
  std::vector<RootVector> roots_;
  std::vector<std::vector<Rational>> coefficients_;
  std::vector<std::string> classes_;
  std::vector<int> multiplicities_;
  bool normalized_ = false;
  Rational scale2_{1};
  Eigen::MatrixXd flat_basis_;
  Eigen::MatrixXd flat_roots_;
  ChamberCone chamber_;
};

using MultiplicityMap = std::map<std::string, int>;

/// Standard positive roots in standard coordinates, multiplicities all 1.
/// Valid ranks: A n>=1, B n>=1, C n>=1, BC n>=1, D n>=2; exceptional families
/// accept only their own rank. Throws ParameterError otherwise.
RestrictedRootSystem build_root_system(Family family, int rank);

/// Assigns one multiplicity per orbit class. Every class present in the system
/// must be covered with a positive value; keys outside the family's vocabulary
/// are rejected. Throws DataError.
RestrictedRootSystem attach_multiplicities(RestrictedRootSystem system, const MultiplicityMap& multiplicity_map);

/// Rescales so that sum m_lambda lambda lambda^T = 1/2 on the flat, checked exactly.
/// Throws DataError when the weighted form is not scalar.
RestrictedRootSystem killing_normalize(RestrictedRootSystem system);

/// Multiplies the current scale by sqrt(factor_squared). Leaves the system flagged unnormalized.
RestrictedRootSystem rescale(RestrictedRootSystem system, const Rational& factor_squared);

/// Exact weighted form W_ij = sum_k m_k <lambda_k, alpha_i><lambda_k, alpha_j> on the simple roots
/// (unscaled). W = t * gram exactly when the Ricci form is scalar.
RationalMatrix weighted_simple_form(const RestrictedRootSystem& system);

}  // namespace cvanish
