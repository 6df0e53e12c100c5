#pragma once

// Curvature-transformation spectra, distance-function Hessians and pinching
// constants for a space in the catalog, all evaluated from restricted roots.

#include "cvanish/catalog.hpp"

#include <Eigen/Dense>

#include <vector>

namespace cvanish {

enum class SpectrumKind { curvature_operator, hessian_of_distance, root_values };

struct SpectrumEntry {
  double value = 0.0;
  int multiplicity = 0;
};

struct CurvatureSpectrum {
  SpectrumKind kind = SpectrumKind::root_values;
  std::vector<SpectrumEntry> entries;
  Eigen::VectorXd direction;
  double radius = 0.0;              ///< hessian_of_distance only
  bool direction_rescaled = false;  ///< input h was not unit length

  int total_multiplicity() const;
  /// sum of value * multiplicity
  double weighted_sum() const;
  /// Values repeated by multiplicity, sorted descending.
  std::vector<double> expanded() const;
};

enum class DirectionPolicy { normalize, as_given };

/// {(|lambda(h)|, m_lambda)} over the positive roots, one entry per root.
CurvatureSpectrum root_values(const SpaceDescriptor& space, const Eigen::VectorXd& h,
                              DirectionPolicy policy = DirectionPolicy::normalize);

/// {(-lambda(h)^2, m_lambda)} plus the flat zero (0, rank-1).
CurvatureSpectrum curvature_spectrum(const SpaceDescriptor& space, const Eigen::VectorXd& h,
                                     DirectionPolicy policy = DirectionPolicy::normalize);

/// Eigenvalues of Hess(r) at distance `radius` along h: v coth(v r) per root,
/// 1/r for each of the rank-1 flat directions.
CurvatureSpectrum hessian_spectrum(const SpaceDescriptor& space, const Eigen::VectorXd& h, double radius);

/// r -> infinity limit of hessian_spectrum: {(|lambda(h)|, m_lambda)} plus (0, rank-1).
CurvatureSpectrum asymptotic_hessian_spectrum(const SpaceDescriptor& space, const Eigen::VectorXd& h);

/// Laplacian of the distance function: trace of hessian_spectrum.
double distance_laplacian(const SpaceDescriptor& space, const Eigen::VectorXd& h, double radius);

/// -sum m_lambda lambda(h)^2, which is -1/2 for unit h.
double ricci_radial(const SpaceDescriptor& space, const Eigen::VectorXd& h,
                    DirectionPolicy policy = DirectionPolicy::normalize);

/// v coth(v r), continuous through v = 0 (value 1/r). Uses a short series for |v r| < 1e-4.
double lambda_coth(double value, double radius);
double lambda_coth_series(double value, double radius);
double lambda_coth_direct(double value, double radius);

inline constexpr double kSeriesSwitchover = 1e-4;

struct PinchingReport {
  Rational a_exact;      ///< max |lambda|^2
  Rational ratio_exact;  ///< B / A
  double a = 0.0;
  double b = 0.5;
  double ratio = 0.0;
  int max_p_by_pinching = 0;  ///< largest p with p(p+1) <= B/A
};

PinchingReport pinching(const SpaceDescriptor& space);

}  // namespace cvanish
