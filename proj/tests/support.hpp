#pragma once

#include "cvanish/catalog.hpp"

#include <Eigen/Dense>

#include <random>
#include <vector>

namespace test_support {

inline Eigen::VectorXd random_unit(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = g(rng);
  return v / v.norm();
}

/// Irreducible spaces of rank <= 2 worked by hand; all satisfy the 1-form condition with margin 0.
inline const std::vector<std::string>& worked_examples() {
  static const std::vector<std::string> names = {"SL(3,R)/SO(3)", "SU(1,2)/S(U(1)xU(2))", "SO_0(2,3)/SO(2)xSO(3)",
                                                 "Sp(2,R)/U(2)"};
  return names;
}

inline std::vector<cvanish::SpaceDescriptor> small_catalog(int max_param = 4) {
  cvanish::CatalogFilter f;
  f.max_param = max_param;
  return cvanish::Catalog{}.enumerate(f);
}

/// F_p from scratch: sort |lambda(h)| with multiplicity plus rank-1 zeros.
inline double brute_eigen_sum(const cvanish::SpaceDescriptor& s, Eigen::VectorXd h, int p) {
  h.normalize();
  std::vector<double> v;
  const auto& roots = s.system.flat_roots();
  for (Eigen::Index i = 0; i < roots.cols(); ++i)
    for (int k = 0; k < s.system.multiplicities()[static_cast<std::size_t>(i)]; ++k)
      v.push_back(std::abs(roots.col(i).dot(h)));
  for (int k = 0; k < s.rank - 1; ++k) v.push_back(0.0);
  std::sort(v.rbegin(), v.rend());
  double f = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) f += static_cast<int>(i) < p ? v[i] : -v[i];
  return f;
}

}  // namespace test_support
