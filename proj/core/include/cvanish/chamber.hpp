#pragma once

// Maximization of the eigen-sum functional
//
//   F_p(h) = (sum of the p largest of {|lambda(h)| x m_lambda} u {0 x (rank-1)})
//            - (sum of the remaining entries)
//
// over unit vectors h of the maximal flat. F_p is Weyl invariant, so the search
// is restricted to the closed positive chamber, where every lambda(h) >= 0 and
// F_p becomes a maximum of linear functionals.

#include "cvanish/catalog.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace cvanish {

enum class OptimumMethod { exact_cone, grid, refined };

std::string_view method_name(OptimumMethod method);

struct Optimum {
  double value = 0.0;
  Eigen::VectorXd argmax_h;
  OptimumMethod method = OptimumMethod::exact_cone;
  std::vector<int> active_walls;
  /// Other maximizing directions (exact ties for exact_cone, within 1e-10 for sampled methods).
  std::vector<Eigen::VectorXd> ties;
  /// True when the value is a proven maximum (exact enumeration completed).
  bool certified = false;
  /// sign(value) * (value / scale)^2 as an exact rational, for exact_cone results on root data.
  std::optional<Rational> signed_square;
  /// Multiplicity taken from each positive root in the maximizing top-p selection.
  std::vector<int> top_counts;
  /// Angular grid step (rank 2) or estimated sample spacing (rank >= 3).
  double grid_spacing = 0.0;
  std::uint64_t evaluations = 0;
};

/// max <w, h> over unit h in the closed chamber, by active-set enumeration over
/// subsets of walls. Throws ParameterError for a degenerate chamber.
Optimum maximize_linear_on_chamber_sphere(const Eigen::VectorXd& w, const ChamberCone& chamber);

/// Exact variant for w = sum_j coeffs[j] * alpha_j (unnormalized simple roots of `system`).
/// The returned value is scaled by the system's normalization scale.
Optimum maximize_linear_exact(const RestrictedRootSystem& system, const std::vector<Rational>& simple_coeffs);

/// F_p(h) evaluated directly by sorting |lambda(h)|; h is normalized first.
double eigen_sum_functional(const SpaceDescriptor& space, const Eigen::VectorXd& h, int p);

struct ChamberOptions {
  /// Above this many candidate selections the exact method gives way to sampling.
  std::uint64_t max_selections = 100000;
  int fallback_resolution = 100000;
  std::uint64_t seed = 0;
};

/// max over unit chamber h of F_p(h). Requires 1 <= p <= dim - 1.
Optimum sum_of_p_largest_max(const SpaceDescriptor& space, int p, const ChamberOptions& options = {});

/// Independent sampled maximization of F_p followed by local pattern search.
/// Rank 2: `resolution` equally spaced angles on the chamber arc. Rank >= 3:
/// `resolution` random sphere points folded into the chamber, plus extreme rays
/// and wall midpoints. Requires resolution >= 10.
Optimum grid_oracle(const SpaceDescriptor& space, int p, int resolution, std::uint64_t seed = 0);

/// Lipschitz constant of F_p on the unit sphere: sum m_lambda |lambda|.
double eigen_sum_lipschitz(const SpaceDescriptor& space);

}  // namespace cvanish
