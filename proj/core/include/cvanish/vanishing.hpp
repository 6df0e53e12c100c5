#pragma once

// Vanishing criteria for L^2 harmonic p-forms on a symmetric space:
//   eigen_sum    sum of the p largest Hessian eigenvalues <= sum of the rest, every direction
//   pinching     p(p+1) <= B/A
//   root_triple  every root (with multiplicity) is bounded in norm by two others
// plus numerical checks of the implications used to prove them.

#include "cvanish/chamber.hpp"
#include "cvanish/curvature.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cvanish {

enum class Condition { eigen_sum, pinching, root_triple };

std::string_view condition_name(Condition condition);
Condition parse_condition(std::string_view name);

/// A verdict holds iff margin >= -kVerdictTolerance.
inline constexpr double kVerdictTolerance = 1e-9;

struct RootTriple {
  int lambda = -1;  ///< index into positive_roots()
  int nu = -1;      ///< -1 when absent
  int mu = -1;
  double norm_lambda = 0.0;
  double norm_nu = 0.0;
  double norm_mu = 0.0;
};

struct VanishingCertificate {
  std::string space_label;
  int p = 1;
  Condition condition = Condition::eigen_sum;
  bool holds = false;
  double margin = 0.0;
  /// Exact form of the margin when known ("0", "-sqrt(1/2)", "1/2").
  std::string margin_exact;
  std::optional<Eigen::VectorXd> witness_direction;
  std::optional<RootTriple> witness_triple;
  std::string method;  ///< "exact", "sampled", "closed_form"
  bool in_theorem_scope = false;
};

enum class EigenSumMethod { exact, grid };

struct EigenSumOptions {
  EigenSumMethod method = EigenSumMethod::exact;
  int grid_resolution = 100000;
  std::uint64_t seed = 0;
};

/// Accepts 0 <= p <= dim; p = 0 and p >= dim-1 are evaluated directly.
VanishingCertificate check_eigen_sum(const SpaceDescriptor& space, int p, const EigenSumOptions& options = {});
VanishingCertificate check_pinching(const SpaceDescriptor& space, int p);
/// Degree fixed at 1; multiplicities are expanded so a root of multiplicity 2 can pair with itself.
VanishingCertificate check_root_triple(const SpaceDescriptor& space);

struct DegreeResult {
  int degree = 0;
  std::vector<VanishingCertificate> certificates;  ///< one per degree evaluated
};

/// Largest p such that the eigen-sum condition holds for every degree 1..p.
DegreeResult max_vanishing_degree(const SpaceDescriptor& space, const EigenSumOptions& options = {});

struct ProofChainReport {
  std::string space_label;
  int p = 1;
  std::size_t evaluations = 0;
  double min_value = 0.0;
  Eigen::VectorXd worst_direction;
  double worst_radius = 0.0;
  bool passed = false;
};

/// For sampled chamber directions h and each radius r, evaluates
///   sum_{i>p} eta_i - sum_{i<=p} eta_i,  eta = Hessian eigenvalues sorted descending.
/// Throws ParameterError if the eigen-sum condition fails at p.
ProofChainReport verify_proof_chain(const SpaceDescriptor& space, int p, int samples, const std::vector<double>& radii,
                                    std::uint64_t seed = 0);

struct ImplicationCase {
  std::string space_label;
  int p = 0;
};

struct ImplicationReport {
  std::size_t checked = 0;
  std::size_t premise_held = 0;  ///< instances where pinching holds
  std::vector<ImplicationCase> counterexamples;
};

/// For each space and p in [p_min, p_max] with p <= dim-1: pinching holds implies eigen-sum holds.
ImplicationReport check_pinching_implies_eigen_sum(const std::vector<SpaceDescriptor>& spaces, int p_min, int p_max);

/// Spaces where check_root_triple and check_eigen_sum(p = 1) disagree.
std::vector<ImplicationCase> root_triple_disagreements(const std::vector<SpaceDescriptor>& spaces);

}  // namespace cvanish
