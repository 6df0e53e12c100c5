#include "cvanish/vanishing.hpp"

#include "cvanish/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cvanish {
namespace {

std::optional<Integer> exact_isqrt(const Integer& n) {
  const Integer r = boost::multiprecision::sqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

std::string signed_sqrt_string(const Rational& signed_square) {
  if (signed_square == 0) return "0";
  const Rational mag = boost::abs(signed_square);
  const auto num = exact_isqrt(mag.numerator());
  const auto den = exact_isqrt(mag.denominator());
  const std::string body =
      num && den ? to_string(Rational(*num, *den)) : "sqrt(" + to_string(mag) + ")";
  return signed_square < 0 ? "-" + body : body;
}

VanishingCertificate base_certificate(const SpaceDescriptor& space, int p, Condition condition) {
  VanishingCertificate c;
  c.space_label = space.label;
  c.p = p;
  c.condition = condition;
  c.in_theorem_scope = space.in_theorem_scope();
  return c;
}

void fill_from_optimum(VanishingCertificate& c, const Optimum& o, const Rational& scale2) {
  c.margin = -o.value;
  c.witness_direction = o.argmax_h;
  if (o.signed_square) {
    // margin = -value, value = sign * sqrt(|s| * scale^2)
    c.margin_exact = signed_sqrt_string(-*o.signed_square * scale2);
    if (*o.signed_square == 0) c.margin = 0.0;
  }
  c.holds = c.margin >= -kVerdictTolerance;
  c.method = o.certified ? "exact" : "sampled";
}

/// Sign of sqrt(a) + sqrt(b) - sqrt(c) for nonnegative rationals.
int sqrt_slack_sign(const Rational& a, const Rational& b, const Rational& c) {
  const Rational d = c - a - b;  // sqrt(a)+sqrt(b) >= sqrt(c)  <=>  2 sqrt(ab) >= d
  if (d < 0) return 1;
  const Rational lhs = Rational(4) * a * b;
  const Rational rhs = d * d;
  if (lhs > rhs) return 1;
  if (lhs == rhs) return 0;
  return -1;
}

}  // namespace

std::string_view condition_name(Condition condition) {
  switch (condition) {
    case Condition::eigen_sum: return "eigen_sum";
    case Condition::pinching: return "pinching";
    case Condition::root_triple: return "root_triple";
  }
  return "?";
}

Condition parse_condition(std::string_view name) {
  if (name == "eigen" || name == "eigen_sum") return Condition::eigen_sum;
  if (name == "pinching") return Condition::pinching;
  if (name == "triple" || name == "root_triple") return Condition::root_triple;
  throw ParameterError("unknown condition '" + std::string(name) + "'");
}

VanishingCertificate check_eigen_sum(const SpaceDescriptor& space, int p, const EigenSumOptions& options) {
  if (p < 0 || p > space.dim) throw ParameterError("p must lie in [0, dim] = [0, " + std::to_string(space.dim) + "]");
  VanishingCertificate c = base_certificate(space, p, Condition::eigen_sum);
  const auto& system = space.system;

  if (p == 0) {
    // F_0 = -(sum of all entries): maximize the linear functional -sum m_lambda lambda.
    std::vector<Rational> d(system.rank(), Rational(0));
    for (std::size_t i = 0; i < system.root_count(); ++i)
      for (int a = 0; a < system.rank(); ++a)
        d[a] -= Rational(system.multiplicities()[i]) * system.simple_coefficients()[i][a];
    fill_from_optimum(c, maximize_linear_exact(system, d), system.scale_squared());
    return c;
  }

  const int effective = std::min(p, space.dim - 1);
  Optimum o;
  if (options.method == EigenSumMethod::grid) {
    o = grid_oracle(space, effective, options.grid_resolution, options.seed);
  } else {
    ChamberOptions chamber_options;
    chamber_options.seed = options.seed;
    chamber_options.fallback_resolution = options.grid_resolution;
    o = sum_of_p_largest_max(space, effective, chamber_options);
  }
  fill_from_optimum(c, o, system.scale_squared());
  return c;
}

VanishingCertificate check_pinching(const SpaceDescriptor& space, int p) {
  if (p < 0 || p > space.dim) throw ParameterError("p must lie in [0, dim] = [0, " + std::to_string(space.dim) + "]");
  VanishingCertificate c = base_certificate(space, p, Condition::pinching);
  const PinchingReport r = pinching(space);
  const Rational margin = r.ratio_exact - Rational(p * (p + 1));
  c.margin = to_double(margin);
  c.margin_exact = to_string(margin);
  c.holds = margin >= 0 || c.margin >= -kVerdictTolerance;
  c.method = "closed_form";
  return c;
}

VanishingCertificate check_root_triple(const SpaceDescriptor& space) {
  VanishingCertificate c = base_certificate(space, 1, Condition::root_triple);
  c.method = "exact";
  const auto& system = space.system;
  const std::size_t k = system.root_count();
  std::vector<Rational> norm2(k);
  std::vector<double> norm(k);
  for (std::size_t i = 0; i < k; ++i) {
    norm2[i] = system.scaled_norm2(i);
    norm[i] = std::sqrt(to_double(norm2[i]));
  }
  std::vector<std::size_t> by_norm(k);
  for (std::size_t i = 0; i < k; ++i) by_norm[i] = i;
  std::stable_sort(by_norm.begin(), by_norm.end(), [&](std::size_t a, std::size_t b) { return norm2[a] > norm2[b]; });

  const auto& mult = system.multiplicities();
  const int entries = system.total_multiplicity();
  if (entries < 3) {
    RootTriple t;
    t.lambda = static_cast<int>(by_norm[0]);
    t.norm_lambda = norm[by_norm[0]];
    if (mult[by_norm[0]] > 1) {
      t.nu = t.lambda;
      t.norm_nu = t.norm_lambda;
    } else if (k > 1) {
      t.nu = static_cast<int>(by_norm[1]);
      t.norm_nu = norm[by_norm[1]];
    }
    c.witness_triple = t;
    c.margin = -t.norm_lambda;
    c.margin_exact = signed_sqrt_string(-norm2[by_norm[0]]);
    c.holds = false;
    return c;
  }

  std::optional<RootTriple> tightest;
  int tightest_sign = 2;
  double tightest_slack = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    // two largest entries of the multiset with one copy of root i removed
    std::vector<int> picks;
    for (std::size_t j : by_norm) {
      int available = mult[j] - (j == i ? 1 : 0);
      while (available-- > 0 && picks.size() < 2) picks.push_back(static_cast<int>(j));
      if (picks.size() == 2) break;
    }
    RootTriple t{static_cast<int>(i), picks[0], picks[1], norm[i], norm[picks[0]], norm[picks[1]]};
    const int sign = sqrt_slack_sign(norm2[picks[0]], norm2[picks[1]], norm2[i]);
    const double slack = sign == 0 ? 0.0 : t.norm_nu + t.norm_mu - t.norm_lambda;
    if (!tightest || sign < tightest_sign || (sign == tightest_sign && slack < tightest_slack)) {
      tightest = t;
      tightest_sign = sign;
      tightest_slack = slack;
    }
  }
  c.witness_triple = tightest;
  c.margin = tightest_slack;
  if (tightest_sign == 0) c.margin_exact = "0";
  c.holds = tightest_sign >= 0 || c.margin >= -kVerdictTolerance;
  return c;
}

DegreeResult max_vanishing_degree(const SpaceDescriptor& space, const EigenSumOptions& options) {
  // F_p is nondecreasing in p, so the degrees where the condition holds form an
  // initial segment and can be located by bisection.
  DegreeResult result;
  auto evaluate = [&](int p) {
    auto cert = check_eigen_sum(space, p, options);
    const bool holds = cert.holds;
    result.certificates.push_back(std::move(cert));
    return holds;
  };
  int lo = 0;
  int hi = space.dim - 1;
  if (hi < 1 || evaluate(hi)) {
    result.degree = std::max(hi, 0);
  } else {
    while (hi - lo > 1) {
      const int mid = lo + (hi - lo) / 2;
      if (evaluate(mid))
        lo = mid;
      else
        hi = mid;
    }
    result.degree = lo;
  }
  std::sort(result.certificates.begin(), result.certificates.end(),
            [](const auto& a, const auto& b) { return a.p < b.p; });
  return result;
}

ProofChainReport verify_proof_chain(const SpaceDescriptor& space, int p, int samples, const std::vector<double>& radii,
                                    std::uint64_t seed) {
  const VanishingCertificate premise = check_eigen_sum(space, p);
  if (!premise.holds)
    throw ParameterError("eigen-sum condition fails for " + space.label + " at p = " + std::to_string(p) +
                         "; the Hessian chain is not claimed");
  if (radii.empty()) throw ParameterError("at least one radius is required");

  const auto& chamber = space.system.chamber();
  std::vector<Eigen::VectorXd> directions = chamber.extreme_rays();
  if (premise.witness_direction) directions.push_back(*premise.witness_direction);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd h(space.rank);
    for (int i = 0; i < space.rank; ++i) h[i] = gauss(rng);
    directions.push_back(chamber.fold(h / h.norm()));
  }

  ProofChainReport report;
  report.space_label = space.label;
  report.p = p;
  report.min_value = std::numeric_limits<double>::infinity();
  for (const auto& h : directions)
    for (double r : radii) {
      const std::vector<double> eta = hessian_spectrum(space, h, r).expanded();
      double value = 0.0;
      for (std::size_t i = 0; i < eta.size(); ++i) value += static_cast<int>(i) < p ? -eta[i] : eta[i];
      ++report.evaluations;
      if (value < report.min_value) {
        report.min_value = value;
        report.worst_direction = h;
        report.worst_radius = r;
      }
    }
  report.passed = report.min_value >= -kVerdictTolerance;
  return report;
}

ImplicationReport check_pinching_implies_eigen_sum(const std::vector<SpaceDescriptor>& spaces, int p_min, int p_max) {
  ImplicationReport report;
  for (const auto& space : spaces)
    for (int p = std::max(p_min, 0); p <= p_max && p <= space.dim - 1; ++p) {
      ++report.checked;
      if (!check_pinching(space, p).holds) continue;
      ++report.premise_held;
      if (!check_eigen_sum(space, p).holds) report.counterexamples.push_back({space.label, p});
    }
  return report;
}

std::vector<ImplicationCase> root_triple_disagreements(const std::vector<SpaceDescriptor>& spaces) {
  std::vector<ImplicationCase> out;
  for (const auto& space : spaces)
    if (check_root_triple(space).holds != check_eigen_sum(space, 1).holds) out.push_back({space.label, 1});
  return out;
}

}  // namespace cvanish
