#include "cvanish/curvature.hpp"

#include "cvanish/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace cvanish {
namespace {

Eigen::VectorXd checked_direction(const SpaceDescriptor& space, const Eigen::VectorXd& h, DirectionPolicy policy,
                                  bool& rescaled) {
  if (h.size() != space.rank)
    throw ParameterError("direction has " + std::to_string(h.size()) + " coordinates, rank is " +
                         std::to_string(space.rank));
  const double norm = h.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw ParameterError("direction must be a nonzero finite vector");
  rescaled = std::abs(norm - 1.0) > 1e-12;
  if (policy == DirectionPolicy::as_given) return h;
  return h / norm;
}

CurvatureSpectrum values_at(const SpaceDescriptor& space, const Eigen::VectorXd& h, DirectionPolicy policy) {
  CurvatureSpectrum s;
  s.kind = SpectrumKind::root_values;
  s.direction = checked_direction(space, h, policy, s.direction_rescaled);
  const Eigen::VectorXd pairings = space.system.flat_roots().transpose() * s.direction;
  const auto& mult = space.system.multiplicities();
  for (Eigen::Index i = 0; i < pairings.size(); ++i) s.entries.push_back({std::abs(pairings[i]), mult[i]});
  return s;
}

}  // namespace

int CurvatureSpectrum::total_multiplicity() const {
  int n = 0;
  for (const auto& e : entries) n += e.multiplicity;
  return n;
}

double CurvatureSpectrum::weighted_sum() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.value * e.multiplicity;
  return s;
}

std::vector<double> CurvatureSpectrum::expanded() const {
  std::vector<double> v;
  for (const auto& e : entries) v.insert(v.end(), static_cast<std::size_t>(e.multiplicity), e.value);
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

CurvatureSpectrum root_values(const SpaceDescriptor& space, const Eigen::VectorXd& h, DirectionPolicy policy) {
  return values_at(space, h, policy);
}

CurvatureSpectrum curvature_spectrum(const SpaceDescriptor& space, const Eigen::VectorXd& h, DirectionPolicy policy) {
  CurvatureSpectrum s = values_at(space, h, policy);
  s.kind = SpectrumKind::curvature_operator;
  for (auto& e : s.entries) e.value = -e.value * e.value;
  if (space.rank > 1) s.entries.push_back({0.0, space.rank - 1});
  return s;
}

double lambda_coth_direct(double value, double radius) { return value / std::tanh(value * radius); }

double lambda_coth_series(double value, double radius) {
  const double v2 = value * value;
  return 1.0 / radius + v2 * radius / 3.0 - v2 * v2 * radius * radius * radius / 45.0;
}

double lambda_coth(double value, double radius) {
  if (std::abs(value * radius) < kSeriesSwitchover) return lambda_coth_series(value, radius);
  return lambda_coth_direct(value, radius);
}

CurvatureSpectrum hessian_spectrum(const SpaceDescriptor& space, const Eigen::VectorXd& h, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ParameterError("radius must be positive");
  CurvatureSpectrum s = values_at(space, h, DirectionPolicy::normalize);
  s.kind = SpectrumKind::hessian_of_distance;
  s.radius = radius;
  for (auto& e : s.entries) e.value = lambda_coth(e.value, radius);
  if (space.rank > 1) s.entries.push_back({1.0 / radius, space.rank - 1});
  return s;
}

CurvatureSpectrum asymptotic_hessian_spectrum(const SpaceDescriptor& space, const Eigen::VectorXd& h) {
  CurvatureSpectrum s = values_at(space, h, DirectionPolicy::normalize);
  s.kind = SpectrumKind::hessian_of_distance;
  s.radius = std::numeric_limits<double>::infinity();
  if (space.rank > 1) s.entries.push_back({0.0, space.rank - 1});
  return s;
}

double distance_laplacian(const SpaceDescriptor& space, const Eigen::VectorXd& h, double radius) {
  return hessian_spectrum(space, h, radius).weighted_sum();
}

double ricci_radial(const SpaceDescriptor& space, const Eigen::VectorXd& h, DirectionPolicy policy) {
  const CurvatureSpectrum s = values_at(space, h, policy);
  double sum = 0.0;
  for (const auto& e : s.entries) sum += e.multiplicity * e.value * e.value;
  return -sum;
}

PinchingReport pinching(const SpaceDescriptor& space) {
  PinchingReport r;
  r.a_exact = Rational(0);
  for (std::size_t i = 0; i < space.system.root_count(); ++i)
    r.a_exact = std::max(r.a_exact, space.system.scaled_norm2(i));
  if (r.a_exact <= 0) throw DataError("space has no roots");
  // B is 1/2 by the Killing normalization of the root system.
  r.ratio_exact = Rational(1, 2) / r.a_exact;
  r.a = to_double(r.a_exact);
  r.ratio = to_double(r.ratio_exact);
  int p = 0;
  while (Rational((p + 1) * (p + 2)) <= r.ratio_exact) ++p;
  r.max_p_by_pinching = p;
  return r;
}

}  // namespace cvanish
