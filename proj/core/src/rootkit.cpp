#include "cvanish/rootkit.hpp"

#include "cvanish/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>

namespace cvanish {
namespace {

using Coords = std::vector<Rational>;

Coords unit(int dim, int i, Rational value = 1) {
  Coords v(dim, Rational(0));
  v[i] = value;
  return v;
}

Coords combine(int dim, std::initializer_list<std::pair<int, Rational>> terms) {
  Coords v(dim, Rational(0));
  for (const auto& [i, c] : terms) v[i] += c;
  return v;
}

Coords half_vector(std::initializer_list<int> signs) {
  Coords v;
  for (int s : signs) v.emplace_back(s, 2);
  return v;
}

// Bourbaki simple roots of E8; E7 and E6 use the first 7 and 6.
std::vector<Coords> e8_simple() {
  return {
      half_vector({1, -1, -1, -1, -1, -1, -1, 1}),
      combine(8, {{0, 1}, {1, 1}}),
      combine(8, {{1, 1}, {0, -1}}),
      combine(8, {{2, 1}, {1, -1}}),
      combine(8, {{3, 1}, {2, -1}}),
      combine(8, {{4, 1}, {3, -1}}),
      combine(8, {{5, 1}, {4, -1}}),
      combine(8, {{6, 1}, {5, -1}}),
  };
}

std::vector<Coords> reflect_closure(const std::vector<Coords>& simple) {
  std::set<Coords> roots(simple.begin(), simple.end());
  std::vector<Coords> frontier(simple.begin(), simple.end());
  std::vector<Rational> norms;
  for (const auto& a : simple) norms.push_back(dot(a, a));
  while (!frontier.empty()) {
    std::vector<Coords> next;
    for (const auto& beta : frontier) {
      for (std::size_t i = 0; i < simple.size(); ++i) {
        const Rational c = Rational(2) * dot(beta, simple[i]) / norms[i];
        if (c == 0) continue;
        Coords image = beta;
        for (std::size_t k = 0; k < image.size(); ++k) image[k] -= c * simple[i][k];
        if (roots.insert(image).second) next.push_back(std::move(image));
      }
    }
    frontier = std::move(next);
  }
  return {roots.begin(), roots.end()};
}

struct Construction {
  int ambient = 0;
  std::vector<Coords> simple;
  std::vector<Coords> positive;  // may be empty: filled from closure
};

Construction classical(Family family, int n) {
  Construction c;
  if (family == Family::A) {
    c.ambient = n + 1;
    for (int i = 0; i < n; ++i) c.simple.push_back(combine(n + 1, {{i, 1}, {i + 1, -1}}));
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) c.positive.push_back(combine(n + 1, {{i, 1}, {j, -1}}));
    return c;
  }
  c.ambient = n;
  for (int i = 0; i + 1 < n; ++i) c.simple.push_back(combine(n, {{i, 1}, {i + 1, -1}}));
  switch (family) {
    case Family::B:
    case Family::BC:
      c.simple.push_back(unit(n, n - 1));
      break;
    case Family::C:
      c.simple.push_back(unit(n, n - 1, 2));
      break;
    case Family::D:
      c.simple.push_back(combine(n, {{n - 2, 1}, {n - 1, 1}}));
      break;
    default:
      break;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      c.positive.push_back(combine(n, {{i, 1}, {j, -1}}));
      c.positive.push_back(combine(n, {{i, 1}, {j, 1}}));
    }
  if (family == Family::B || family == Family::BC)
    for (int i = 0; i < n; ++i) c.positive.push_back(unit(n, i));
  if (family == Family::C || family == Family::BC)
    for (int i = 0; i < n; ++i) c.positive.push_back(unit(n, i, 2));
  return c;
}

Construction exceptional(Family family) {
  Construction c;
  switch (family) {
    case Family::E6:
    case Family::E7:
    case Family::E8: {
      const int r = family == Family::E6 ? 6 : family == Family::E7 ? 7 : 8;
      auto all = e8_simple();
      c.ambient = 8;
      c.simple.assign(all.begin(), all.begin() + r);
      break;
    }
    case Family::F4:
      c.ambient = 4;
      c.simple = {combine(4, {{1, 1}, {2, -1}}), combine(4, {{2, 1}, {3, -1}}), unit(4, 3),
                  half_vector({1, -1, -1, -1})};
      break;
    case Family::G2:
      c.ambient = 3;
      c.simple = {combine(3, {{0, 1}, {1, -1}}), combine(3, {{0, -2}, {1, 1}, {2, 1}})};
      break;
    default:
      break;
  }
  return c;
}

int fixed_rank(Family family) {
  switch (family) {
    case Family::E6: return 6;
    case Family::E7: return 7;
    case Family::E8: return 8;
    case Family::F4: return 4;
    case Family::G2: return 2;
    default: return 0;
  }
}

std::string classify(Family family, const RootVector& root, const Rational& max_norm2) {
  switch (family) {
    case Family::A:
    case Family::D:
    case Family::E6:
    case Family::E7:
    case Family::E8:
      return "all";
    case Family::F4:
    case Family::G2:
      return root.norm2() == max_norm2 ? "long" : "short";
    default: {
      int nonzero = 0;
      Rational value(0);
      for (const auto& x : root.coords)
        if (x != 0) {
          ++nonzero;
          value = x;
        }
      if (nonzero == 2) return "e_i+-e_j";
      return value == 2 ? "2e_i" : "e_i";
    }
  }
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::BC: return "BC";
    case Family::E6: return "E6";
    case Family::E7: return "E7";
    case Family::E8: return "E8";
    case Family::F4: return "F4";
    case Family::G2: return "G2";
  }
  return "?";
}

std::string root_type_name(Family family, int rank) {
  if (fixed_rank(family) != 0) return std::string(family_name(family));
  return std::string(family_name(family)) + std::to_string(rank);
}

std::pair<Family, int> parse_root_type(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(static_cast<char>(std::toupper(ch)));
  for (Family f : {Family::E6, Family::E7, Family::E8, Family::F4, Family::G2})
    if (s == family_name(f)) return {f, fixed_rank(f)};
  for (Family f : {Family::BC, Family::A, Family::B, Family::C, Family::D}) {
    const auto prefix = family_name(f);
    if (s.rfind(prefix, 0) != 0) continue;
    const std::string digits = s.substr(prefix.size());
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(c); }))
      continue;
    return {f, std::stoi(digits)};
  }
  throw ParameterError("unknown root system type '" + std::string(text) + "'");
}

std::vector<std::string> orbit_vocabulary(Family family) {
  switch (family) {
    case Family::B: return {"e_i+-e_j", "e_i"};
    case Family::C: return {"e_i+-e_j", "2e_i"};
    case Family::BC: return {"e_i+-e_j", "e_i", "2e_i"};
    case Family::F4:
    case Family::G2: return {"long", "short"};
    default: return {"all"};
  }
}

bool ChamberCone::contains(const Eigen::VectorXd& h, double tol) const {
  return ((walls.transpose() * h).array() >= -tol).all();
}

Eigen::VectorXd ChamberCone::reflect(const Eigen::VectorXd& h, int wall) const {
  const Eigen::VectorXd a = walls.col(wall);
  return h - 2.0 * a.dot(h) / a.squaredNorm() * a;
}

Eigen::VectorXd ChamberCone::fold(Eigen::VectorXd h) const {
  // Each reflection in a wall with negative pairing strictly lowers the number
  // of positive roots negative on h, so this terminates.
  for (int guard = 0; guard < 100000; ++guard) {
    const Eigen::VectorXd pairings = walls.transpose() * h;
    Eigen::Index worst = 0;
    if (pairings.minCoeff(&worst) >= 0.0) return h;
    h = reflect(h, static_cast<int>(worst));
  }
  return h;
}

std::vector<Eigen::VectorXd> ChamberCone::extreme_rays() const {
  // Dual basis: columns of walls^{-T}.
  const Eigen::MatrixXd dual = walls.transpose().inverse();
  std::vector<Eigen::VectorXd> rays;
  for (int i = 0; i < rank; ++i) rays.push_back(dual.col(i).normalized());
  return rays;
}

int RestrictedRootSystem::total_multiplicity() const {
  return std::accumulate(multiplicities_.begin(), multiplicities_.end(), 0);
}

double RestrictedRootSystem::normalization_scale() const { return std::sqrt(to_double(scale2_)); }

bool RestrictedRootSystem::dynkin_connected() const {
  const auto& g = chamber_.gram;
  std::vector<bool> seen(rank_, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < rank_; ++j)
      if (!seen[j] && g[i][j] != 0) {
        seen[j] = true;
        ++count;
        stack.push_back(j);
      }
  }
  return count == rank_;
}

void RestrictedRootSystem::refresh_flat() {
  const double scale = normalization_scale();
  flat_basis_ = Eigen::MatrixXd::Zero(ambient_dim_, rank_);
  if (ambient_dim_ == rank_) {
    flat_basis_.setIdentity();
  } else {
    // Gram-Schmidt on the simple roots, in order.
    for (int i = 0; i < rank_; ++i) {
      Eigen::VectorXd v(ambient_dim_);
      for (int k = 0; k < ambient_dim_; ++k) v[k] = to_double(chamber_.simple_roots[i].coords[k]);
      for (int j = 0; j < i; ++j) v -= flat_basis_.col(j).dot(v) * flat_basis_.col(j);
      for (int j = 0; j < i; ++j) v -= flat_basis_.col(j).dot(v) * flat_basis_.col(j);
      flat_basis_.col(i) = v.normalized();
    }
  }
  auto to_flat = [&](const RootVector& r) {
    Eigen::VectorXd v(ambient_dim_);
    for (int k = 0; k < ambient_dim_; ++k) v[k] = to_double(r.coords[k]);
    return Eigen::VectorXd(scale * (flat_basis_.transpose() * v));
  };
  flat_roots_.resize(rank_, static_cast<Eigen::Index>(roots_.size()));
  for (std::size_t i = 0; i < roots_.size(); ++i) flat_roots_.col(static_cast<Eigen::Index>(i)) = to_flat(roots_[i]);
  chamber_.walls.resize(rank_, rank_);
  for (int i = 0; i < rank_; ++i) chamber_.walls.col(i) = to_flat(chamber_.simple_roots[i]);
}

RestrictedRootSystem build_root_system(Family family, int rank) {
  const int fixed = fixed_rank(family);
  if (fixed != 0 && rank != fixed)
    throw ParameterError(std::string(family_name(family)) + " has rank " + std::to_string(fixed));
  const int min_rank = family == Family::D ? 2 : 1;
  if (fixed == 0 && rank < min_rank)
    throw ParameterError(std::string(family_name(family)) + " requires rank >= " + std::to_string(min_rank));
  if (rank > 64) throw ParameterError("rank too large");

  Construction c = fixed != 0 ? exceptional(family) : classical(family, rank);

  RestrictedRootSystem s;
  s.family_ = family;
  s.rank_ = rank;
  s.ambient_dim_ = c.ambient;

  auto& cone = s.chamber_;
  cone.rank = rank;
  for (auto& a : c.simple) cone.simple_roots.push_back(RootVector{a});
  cone.gram.assign(rank, std::vector<Rational>(rank, Rational(0)));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) cone.gram[i][j] = dot(c.simple[i], c.simple[j]);
  const RationalMatrix gram_inv = invert(cone.gram);

  auto coefficients_of = [&](const Coords& root) {
    std::vector<Rational> pair(rank);
    for (int j = 0; j < rank; ++j) pair[j] = dot(root, c.simple[j]);
    std::vector<Rational> coeff(rank, Rational(0));
    for (int i = 0; i < rank; ++i) coeff[i] = dot(gram_inv[i], pair);
    return coeff;
  };

  std::vector<Coords> candidates = c.positive.empty() ? reflect_closure(c.simple) : c.positive;
  struct Entry {
    Rational height;
    std::vector<Rational> coeff;
    Coords coords;
  };
  std::vector<Entry> entries;
  for (auto& root : candidates) {
    auto coeff = coefficients_of(root);
    const bool nonneg = std::all_of(coeff.begin(), coeff.end(), [](const Rational& x) { return x >= 0; });
    const bool nonpos = std::all_of(coeff.begin(), coeff.end(), [](const Rational& x) { return x <= 0; });
    if (!c.positive.empty() && !nonneg)
      throw InternalError("listed root is not in the positive cone of the simple roots");
    if (!nonneg) {
      if (!nonpos) throw InternalError("root with mixed-sign simple coefficients");
      continue;
    }
    Rational height = std::accumulate(coeff.begin(), coeff.end(), Rational(0));
    entries.push_back({height, std::move(coeff), std::move(root)});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.height != b.height) return a.height < b.height;
    return a.coeff > b.coeff;
  });

  Rational max_norm2(0);
  for (const auto& e : entries) max_norm2 = std::max(max_norm2, dot(e.coords, e.coords));
  for (auto& e : entries) {
    s.roots_.push_back(RootVector{std::move(e.coords)});
    s.coefficients_.push_back(std::move(e.coeff));
    s.classes_.push_back(classify(family, s.roots_.back(), max_norm2));
  }
  s.multiplicities_.assign(s.roots_.size(), 1);
  s.refresh_flat();
  return s;
}

RestrictedRootSystem attach_multiplicities(RestrictedRootSystem system, const MultiplicityMap& multiplicity_map) {
  const auto vocabulary = orbit_vocabulary(system.family_);
  for (const auto& [key, value] : multiplicity_map) {
    if (std::find(vocabulary.begin(), vocabulary.end(), key) == vocabulary.end())
      throw DataError("orbit class '" + key + "' does not exist for " + system.type_name());
    if (value <= 0) throw DataError("multiplicity of '" + key + "' must be positive");
  }
  for (std::size_t i = 0; i < system.roots_.size(); ++i) {
    auto it = multiplicity_map.find(system.classes_[i]);
    if (it == multiplicity_map.end())
      throw DataError("multiplicity map misses orbit class '" + system.classes_[i] + "' of " + system.type_name());
    system.multiplicities_[i] = it->second;
  }
  return system;
}

RationalMatrix weighted_simple_form(const RestrictedRootSystem& system) {
  const int r = system.rank();
  const auto& simple = system.simple_roots();
  RationalMatrix w(r, std::vector<Rational>(r, Rational(0)));
  for (std::size_t k = 0; k < system.root_count(); ++k) {
    std::vector<Rational> pair(r);
    for (int i = 0; i < r; ++i) pair[i] = dot(system.positive_roots()[k].coords, simple[i].coords);
    const Rational m(system.multiplicities()[k]);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) w[i][j] += m * pair[i] * pair[j];
  }
  return w;
}

RestrictedRootSystem killing_normalize(RestrictedRootSystem system) {
  // On span(simple roots), sum m lambda lambda^T = t * I iff W = t * gram.
  const RationalMatrix w = weighted_simple_form(system);
  const auto& g = system.chamber_.gram;
  const Rational t = w[0][0] / g[0][0];
  for (int i = 0; i < system.rank_; ++i)
    for (int j = 0; j < system.rank_; ++j)
      if (w[i][j] != t * g[i][j])
        throw DataError("Ricci identity: weighted root form of " + system.type_name() +
                        " is not scalar (non-irreducible or corrupted multiplicities)");
  // (c^2 t) = 1/2
  system.scale2_ = Rational(1) / (Rational(2) * t);
  system.normalized_ = true;
  system.refresh_flat();
  return system;
}

RestrictedRootSystem rescale(RestrictedRootSystem system, const Rational& factor_squared) {
  if (factor_squared <= 0) throw ParameterError("rescale factor must be positive");
  system.scale2_ *= factor_squared;
  system.normalized_ = false;
  system.refresh_flat();
  return system;
}

}  // namespace cvanish
