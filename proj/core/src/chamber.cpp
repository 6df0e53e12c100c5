#include "cvanish/chamber.hpp"

#include "cvanish/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace cvanish {
namespace {

// ---------------------------------------------------------------------------
// Exact active-set enumeration in simple-root coordinates.
//
// A vector w of the flat is held as coefficients d with w = sum_j d_j alpha_j.
// For a wall subset W the face subspace is L_W = {h : <alpha_i, h> = 0, i in W}
// and the projection of w onto it is w - sum_{j in W} c_j alpha_j with
// G_W c = (<alpha_j, w>)_{j in W}. When dim L_W = 1 the face is an extreme ray
// and its single unit vector is the only candidate.
// ---------------------------------------------------------------------------

struct Face {
  std::vector<int> walls;
  RationalMatrix inverse;  // inverse of the Gram matrix restricted to `walls`
};

struct Ray {
  std::vector<int> walls;
  std::vector<Rational> direction;  // simple-root coordinates
  Rational norm2;
};

struct ExactCone {
  int rank = 0;
  RationalMatrix gram;
  std::vector<Face> faces;
  std::vector<Ray> rays;
};

ExactCone make_exact_cone(const ChamberCone& chamber) {
  ExactCone cone;
  cone.rank = chamber.rank;
  cone.gram = chamber.gram;
  const int r = chamber.rank;
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    const int count = std::popcount(mask);
    if (count > r - 1) continue;
    std::vector<int> walls;
    for (int i = 0; i < r; ++i)
      if (mask & (1u << i)) walls.push_back(i);
    RationalMatrix sub(walls.size(), std::vector<Rational>(walls.size()));
    for (std::size_t a = 0; a < walls.size(); ++a)
      for (std::size_t b = 0; b < walls.size(); ++b) sub[a][b] = cone.gram[walls[a]][walls[b]];
    RationalMatrix inverse = walls.empty() ? RationalMatrix{} : invert(sub);
    if (count == r - 1) {
      int k = 0;
      while (mask & (1u << k)) ++k;
      Ray ray;
      ray.walls = walls;
      ray.direction.assign(r, Rational(0));
      ray.direction[k] = 1;
      for (std::size_t a = 0; a < walls.size(); ++a) {
        Rational c(0);
        for (std::size_t b = 0; b < walls.size(); ++b) c += inverse[a][b] * cone.gram[walls[b]][k];
        ray.direction[walls[a]] = -c;
      }
      ray.norm2 = Rational(0);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) ray.norm2 += ray.direction[i] * cone.gram[i][j] * ray.direction[j];
      cone.rays.push_back(std::move(ray));
    } else {
      cone.faces.push_back({std::move(walls), std::move(inverse)});
    }
  }
  return cone;
}

struct Candidate {
  Rational signed_square;         // sign(v) v^2, unscaled
  std::vector<Rational> direction;  // simple-root coordinates
  std::vector<int> active;
};

/// Best candidates for w = sum d_j alpha_j. All returned candidates share the same signed_square.
/// `floor`: skip when no candidate can reach it (|w|^2 < floor, floor > 0).
std::vector<Candidate> best_on_cone(const ExactCone& cone, const std::vector<Rational>& d,
                                    const std::optional<Rational>& floor) {
  const int r = cone.rank;
  std::vector<Rational> b(r, Rational(0));
  for (int i = 0; i < r; ++i) b[i] = dot(cone.gram[i], d);
  const Rational w2 = dot(d, b);
  if (floor && *floor > 0 && w2 < *floor) return {};

  std::vector<Candidate> best;
  auto offer = [&](Candidate c) {
    if (best.empty() || c.signed_square > best.front().signed_square) {
      best.clear();
      best.push_back(std::move(c));
    } else if (c.signed_square == best.front().signed_square) {
      best.push_back(std::move(c));
    }
  };

  for (const Face& face : cone.faces) {
    const std::size_t nw = face.walls.size();
    std::vector<Rational> c(nw, Rational(0));
    Rational removed(0);
    for (std::size_t a = 0; a < nw; ++a) {
      for (std::size_t bb = 0; bb < nw; ++bb) c[a] += face.inverse[a][bb] * b[face.walls[bb]];
      removed += c[a] * b[face.walls[a]];
    }
    const Rational pw2 = w2 - removed;
    if (pw2 <= 0) continue;
    std::vector<int> active = face.walls;
    bool feasible = true;
    for (int i = 0; i < r && feasible; ++i) {
      if (std::find(face.walls.begin(), face.walls.end(), i) != face.walls.end()) continue;
      Rational pairing = b[i];
      for (std::size_t a = 0; a < nw; ++a) pairing -= cone.gram[i][face.walls[a]] * c[a];
      if (pairing < 0) feasible = false;
      if (pairing == 0) active.push_back(i);
    }
    if (!feasible) continue;
    std::vector<Rational> dir = d;
    for (std::size_t a = 0; a < nw; ++a) dir[face.walls[a]] -= c[a];
    std::sort(active.begin(), active.end());
    offer({pw2, std::move(dir), std::move(active)});
  }
  for (const Ray& ray : cone.rays) {
    const Rational t = dot(ray.direction, b);
    Rational s = t * t / ray.norm2;
    if (t < 0) s = -s;
    offer({s, ray.direction, ray.walls});
  }
  return best;
}

Eigen::VectorXd to_flat_unit(const ChamberCone& chamber, const std::vector<Rational>& simple_coords) {
  Eigen::VectorXd x(chamber.rank);
  for (int i = 0; i < chamber.rank; ++i) x[i] = to_double(simple_coords[i]);
  Eigen::VectorXd h = chamber.walls * x;
  return h / h.norm();
}

bool lex_greater(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] > b[i] + 1e-12) return true;
    if (a[i] < b[i] - 1e-12) return false;
  }
  return false;
}

double signed_root(const Rational& signed_square, const Rational& scale2) {
  const double mag = std::sqrt(to_double(boost::abs(signed_square) * scale2));
  return signed_square < 0 ? -mag : mag;
}

/// Collapses exact-tie candidates into an Optimum with a deterministic argmax.
struct TieSet {
  std::optional<Rational> best;
  struct Item {
    Eigen::VectorXd h;
    std::vector<int> active;
    std::vector<int> counts;
  };
  std::vector<Item> items;

  void offer(const ChamberCone& chamber, std::vector<Candidate> cands, const std::vector<int>& counts) {
    if (cands.empty()) return;
    const Rational& s = cands.front().signed_square;
    if (!best || s > *best) {
      best = s;
      items.clear();
    } else if (s != *best) {
      return;
    }
    for (auto& c : cands) {
      Eigen::VectorXd h = to_flat_unit(chamber, c.direction);
      const bool dup = std::any_of(items.begin(), items.end(), [&](const Item& it) { return (it.h - h).norm() < 1e-9; });
      if (!dup) items.push_back({std::move(h), std::move(c.active), counts});
    }
  }

  Optimum finish(const Rational& scale2) const {
    Optimum o;
    o.method = OptimumMethod::exact_cone;
    o.certified = true;
    o.signed_square = *best;
    o.value = signed_root(*best, scale2);
    std::size_t pick = 0;
    for (std::size_t i = 1; i < items.size(); ++i)
      if (lex_greater(items[i].h, items[pick].h)) pick = i;
    o.argmax_h = items[pick].h;
    o.active_walls = items[pick].active;
    o.top_counts = items[pick].counts;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (i != pick) o.ties.push_back(items[i].h);
    return o;
  }
};

// ---------------------------------------------------------------------------
// Top-p selections. On the chamber, beta - alpha in the nonnegative span of the
// simple roots forces beta(h) >= alpha(h), so the p largest entries can always
// be taken as a dominance-closed set of whole roots plus at most one partially
// used root whose dominators are all whole.
// ---------------------------------------------------------------------------

struct SelectionSpace {
  std::vector<int> mult;
  std::vector<std::vector<int>> dominators;  // strict dominance
  std::vector<std::size_t> order;            // descending height
};

SelectionSpace make_selection_space(const RestrictedRootSystem& system) {
  SelectionSpace s;
  const std::size_t k = system.root_count();
  s.mult = system.multiplicities();
  s.dominators.resize(k);
  const auto& coeff = system.simple_coefficients();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      bool ge = true, differ = false;
      for (int a = 0; a < system.rank(); ++a) {
        if (coeff[j][a] < coeff[i][a]) ge = false;
        if (coeff[j][a] != coeff[i][a]) differ = true;
      }
      if (ge && differ) s.dominators[i].push_back(static_cast<int>(j));
    }
  s.order.resize(k);
  std::iota(s.order.begin(), s.order.end(), std::size_t{0});
  std::reverse(s.order.begin(), s.order.end());  // roots are stored by ascending height
  return s;
}

/// Calls visit(counts) for each candidate selection of total size `target`.
/// Returns false if more than `limit` selections would be produced.
template <typename Visit>
bool enumerate_selections(const SelectionSpace& s, int target, std::uint64_t limit, Visit&& visit) {
  const std::size_t k = s.mult.size();
  std::vector<int> counts(k, 0);
  std::uint64_t produced = 0;
  bool ok = true;

  auto closed_under_dominators = [&](std::size_t i) {
    return std::all_of(s.dominators[i].begin(), s.dominators[i].end(),
                       [&](int j) { return counts[j] == s.mult[j]; });
  };

  // Depth-first over upper sets in descending-height order.
  auto dfs = [&](auto&& self, std::size_t pos, int used) -> void {
    if (!ok) return;
    if (pos == k) {
      if (used == target) {
        if (++produced > limit) {
          ok = false;
          return;
        }
        visit(counts);
        return;
      }
      const int remaining = target - used;
      for (std::size_t i = 0; i < k && ok; ++i) {
        if (counts[i] != 0 || s.mult[i] <= remaining || !closed_under_dominators(i)) continue;
        counts[i] = remaining;
        if (++produced > limit) {
          ok = false;
        } else {
          visit(counts);
        }
        counts[i] = 0;
      }
      return;
    }
    const std::size_t i = s.order[pos];
    self(self, pos + 1, used);
    if (used + s.mult[i] <= target && closed_under_dominators(i)) {
      counts[i] = s.mult[i];
      self(self, pos + 1, used + s.mult[i]);
      counts[i] = 0;
    }
  };
  dfs(dfs, 0, 0);
  return ok;
}

// ---------------------------------------------------------------------------
// Sampling oracle.
// ---------------------------------------------------------------------------

struct Objective {
  const Eigen::MatrixXd& roots;
  const std::vector<int>& mult;
  int p;
  int total;
  mutable std::uint64_t evaluations = 0;

  double operator()(const Eigen::VectorXd& unit_h) const {
    ++evaluations;
    const Eigen::VectorXd values = (roots.transpose() * unit_h).cwiseAbs();
    std::vector<std::pair<double, int>> entries;
    entries.reserve(static_cast<std::size_t>(values.size()));
    double sum = 0.0;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      entries.emplace_back(values[i], mult[i]);
      sum += values[i] * mult[i];
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    double top = 0.0;
    int left = std::min(p, total);
    for (const auto& [v, m] : entries) {
      if (left == 0) break;
      const int take = std::min(left, m);
      top += take * v;
      left -= take;
    }
    return 2.0 * top - sum;
  }
};

Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& h, const std::vector<Eigen::VectorXd>& extra_normals,
                              std::mt19937_64* rng) {
  const Eigen::Index r = h.size();
  Eigen::MatrixXd constraints(static_cast<Eigen::Index>(1 + extra_normals.size()), r);
  constraints.row(0) = h.transpose();
  for (std::size_t i = 0; i < extra_normals.size(); ++i)
    constraints.row(static_cast<Eigen::Index>(i + 1)) = extra_normals[i].transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraints, Eigen::ComputeFullV);
  const Eigen::Index rank_c = (svd.singularValues().array() > 1e-12).count();
  Eigen::MatrixXd null = svd.matrixV().rightCols(r - rank_c);
  if (rng != nullptr && null.cols() > 1) {
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd mix(null.cols(), null.cols());
    for (Eigen::Index i = 0; i < mix.size(); ++i) mix.data()[i] = gauss(*rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(mix);
    null = null * Eigen::MatrixXd(qr.householderQ());
  }
  return null;
}

/// Generating-set pattern search on sphere n chamber. F is a maximum of smooth
/// pieces on the chamber, so a move that improves the active piece improves F.
std::pair<Eigen::VectorXd, double> pattern_search(const Objective& f, const ChamberCone& chamber,
                                                  Eigen::VectorXd h, double step, std::mt19937_64& rng) {
  double best = f(h);
  const int r = chamber.rank;
  if (r < 2) return {h, best};
  Eigen::MatrixXd unit_walls = chamber.walls;
  for (int i = 0; i < r; ++i) unit_walls.col(i).normalize();

  while (step > 1e-13) {
    std::vector<Eigen::MatrixXd> direction_sets;
    direction_sets.push_back(tangent_basis(h, {}, &rng));
    std::vector<int> near;
    for (int i = 0; i < r; ++i)
      if (unit_walls.col(i).dot(h) <= 2.0 * step) near.push_back(i);
    const int nn = static_cast<int>(near.size());
    if (nn > 0 && nn <= 4) {
      for (unsigned mask = 1; mask < (1u << nn); ++mask) {
        std::vector<Eigen::VectorXd> normals;
        for (int a = 0; a < nn; ++a)
          if (mask & (1u << a)) normals.push_back(unit_walls.col(near[a]));
        direction_sets.push_back(tangent_basis(h, normals, nullptr));
      }
    } else if (nn > 4) {
      std::vector<Eigen::VectorXd> normals;
      for (int i : near) normals.push_back(unit_walls.col(i));
      direction_sets.push_back(tangent_basis(h, normals, nullptr));
    }

    bool improved = false;
    for (const auto& set : direction_sets) {
      for (Eigen::Index c = 0; c < set.cols() && !improved; ++c)
        for (double sign : {1.0, -1.0}) {
          Eigen::VectorXd trial = h + sign * step * set.col(c);
          trial.normalize();
          if (!chamber.contains(trial, 1e-14)) continue;
          const double value = f(trial);
          if (value > best) {
            best = value;
            h = trial;
            improved = true;
            break;
          }
        }
      if (improved) break;
    }
    if (!improved) step *= 0.5;
  }
  return {h, best};
}

double sphere_area(int dim_ambient) {
  // surface area of the unit sphere in R^n
  const double n = dim_ambient;
  return 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
}

}  // namespace

std::string_view method_name(OptimumMethod method) {
  switch (method) {
    case OptimumMethod::exact_cone: return "exact_cone";
    case OptimumMethod::grid: return "grid";
    case OptimumMethod::refined: return "refined";
  }
  return "?";
}

Optimum maximize_linear_on_chamber_sphere(const Eigen::VectorXd& w, const ChamberCone& chamber) {
  const int r = chamber.rank;
  if (r < 1 || chamber.walls.rows() != r || chamber.walls.cols() != r || w.size() != r)
    throw ParameterError("chamber and functional dimensions disagree");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(chamber.walls);
  if (lu.rank() < r) throw ParameterError("degenerate chamber: simple roots are linearly dependent");

  const double tol = 1e-12 * std::max(1.0, w.norm());
  Optimum best;
  best.value = -std::numeric_limits<double>::infinity();
  best.method = OptimumMethod::exact_cone;
  auto offer = [&](const Eigen::VectorXd& h, const std::vector<int>& walls) {
    const double value = w.dot(h);
    if (value > best.value + 1e-12) {
      best.value = value;
      best.argmax_h = h;
      best.active_walls = walls;
      best.ties.clear();
    } else if (std::abs(value - best.value) <= 1e-12 && (h - best.argmax_h).norm() > 1e-9) {
      best.ties.push_back(h);
    }
  };

  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    const int count = std::popcount(mask);
    if (count > r - 1) continue;
    std::vector<int> walls;
    for (int i = 0; i < r; ++i)
      if (mask & (1u << i)) walls.push_back(i);
    Eigen::MatrixXd a(r, count);
    for (int c = 0; c < count; ++c) a.col(c) = chamber.walls.col(walls[c]);
    // orthonormal basis of span(walls) and of its complement L_W
    Eigen::MatrixXd q = Eigen::MatrixXd::Identity(r, r);
    if (count > 0) q = Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
    const Eigen::MatrixXd face = q.rightCols(r - count);
    if (r - count == 1) {
      Eigen::VectorXd u = face.col(0);
      if ((chamber.walls.transpose() * u).sum() < 0) u = -u;
      if (chamber.contains(u, 1e-12)) offer(u, walls);
      continue;
    }
    const Eigen::VectorXd pw = face * (face.transpose() * w);
    if (pw.norm() <= tol) continue;
    const Eigen::VectorXd h = pw.normalized();
    if (!chamber.contains(h, 1e-12)) continue;
    offer(h, walls);
  }
  best.certified = true;
  return best;
}

Optimum maximize_linear_exact(const RestrictedRootSystem& system, const std::vector<Rational>& simple_coeffs) {
  if (static_cast<int>(simple_coeffs.size()) != system.rank()) throw ParameterError("coefficient count != rank");
  const ExactCone cone = make_exact_cone(system.chamber());
  TieSet ties;
  ties.offer(system.chamber(), best_on_cone(cone, simple_coeffs, std::nullopt), {});
  return ties.finish(system.scale_squared());
}

double eigen_sum_functional(const SpaceDescriptor& space, const Eigen::VectorXd& h, int p) {
  if (h.size() != space.rank) throw ParameterError("direction dimension != rank");
  const double norm = h.norm();
  if (!(norm > 0.0)) throw ParameterError("direction must be nonzero");
  const Objective f{space.system.flat_roots(), space.system.multiplicities(), p,
                    space.system.total_multiplicity()};
  return f(h / norm);
}

double eigen_sum_lipschitz(const SpaceDescriptor& space) {
  double l = 0.0;
  const auto& roots = space.system.flat_roots();
  for (Eigen::Index i = 0; i < roots.cols(); ++i) l += roots.col(i).norm() * space.system.multiplicities()[i];
  return l;
}

Optimum sum_of_p_largest_max(const SpaceDescriptor& space, int p, const ChamberOptions& options) {
  if (p < 1 || p > space.dim - 1)
    throw ParameterError("p must lie in [1, dim-1] = [1, " + std::to_string(space.dim - 1) + "]");
  const auto& system = space.system;
  const int total = system.total_multiplicity();
  const int target = std::min(p, total);
  const int r = system.rank();
  const auto& coeff = system.simple_coefficients();

  std::vector<Rational> sum_all(r, Rational(0));
  for (std::size_t i = 0; i < system.root_count(); ++i)
    for (int a = 0; a < r; ++a) sum_all[a] += Rational(system.multiplicities()[i]) * coeff[i][a];

  const ExactCone cone = make_exact_cone(system.chamber());
  const SelectionSpace selections = make_selection_space(system);
  TieSet ties;
  std::uint64_t visited = 0;
  const bool complete = enumerate_selections(selections, target, options.max_selections, [&](const std::vector<int>& counts) {
    ++visited;
    std::vector<Rational> d(r);
    for (int a = 0; a < r; ++a) d[a] = -sum_all[a];
    for (std::size_t i = 0; i < counts.size(); ++i)
      if (counts[i] != 0)
        for (int a = 0; a < r; ++a) d[a] += Rational(2 * counts[i]) * coeff[i][a];
    ties.offer(system.chamber(), best_on_cone(cone, d, ties.best), counts);
  });

  if (!complete || !ties.best) {
    Optimum o = grid_oracle(space, p, options.fallback_resolution, options.seed);
    o.method = OptimumMethod::refined;
    o.certified = false;
    return o;
  }
  Optimum o = ties.finish(system.scale_squared());
  o.evaluations = visited;
  return o;
}

Optimum grid_oracle(const SpaceDescriptor& space, int p, int resolution, std::uint64_t seed) {
  if (resolution < 10) throw ParameterError("grid resolution must be >= 10");
  if (p < 1 || p > space.dim - 1) throw ParameterError("p out of range");
  const auto& chamber = space.system.chamber();
  const Objective f{space.system.flat_roots(), space.system.multiplicities(), p,
                    space.system.total_multiplicity()};
  const int r = space.rank;
  std::mt19937_64 rng(seed);

  Optimum o;
  o.method = OptimumMethod::grid;
  const auto rays = chamber.extreme_rays();
  if (r == 1) {
    o.argmax_h = rays[0];
    o.value = f(rays[0]);
    o.evaluations = f.evaluations;
    return o;
  }

  std::vector<std::pair<double, Eigen::VectorXd>> samples;
  double step = 0.0;
  if (r == 2) {
    const Eigen::VectorXd& u1 = rays[0];
    Eigen::VectorXd v = rays[1] - rays[1].dot(u1) * u1;
    v.normalize();
    const double span = std::acos(std::clamp(rays[0].dot(rays[1]), -1.0, 1.0));
    step = span / (resolution - 1);
    for (int k = 0; k < resolution; ++k) {
      const double t = step * k;
      Eigen::VectorXd h = std::cos(t) * u1 + std::sin(t) * v;
      samples.emplace_back(f(h), std::move(h));
    }
  } else {
    std::normal_distribution<double> gauss;
    for (int k = 0; k < resolution; ++k) {
      Eigen::VectorXd h(r);
      for (int i = 0; i < r; ++i) h[i] = gauss(rng);
      h = chamber.fold(h / h.norm());
      samples.emplace_back(f(h), std::move(h));
    }
    for (const auto& ray : rays) samples.emplace_back(f(ray), ray);
    for (int wall = 0; wall < r; ++wall) {
      Eigen::VectorXd mid = Eigen::VectorXd::Zero(r);
      for (int j = 0; j < r; ++j)
        if (j != wall) mid += rays[j];
      mid.normalize();
      samples.emplace_back(f(mid), std::move(mid));
    }
    // Samples folded into one chamber are spread over 1/|W| of the sphere; the
    // estimate below uses the whole sphere, which is conservative.
    step = std::pow(sphere_area(r) / resolution, 1.0 / (r - 1));
  }
  o.grid_spacing = step;

  std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<Eigen::VectorXd> starts;
  for (const auto& [value, h] : samples) {
    if (starts.size() >= 12) break;
    const bool close = std::any_of(starts.begin(), starts.end(), [&](const auto& s) { return (s - h).norm() < step; });
    if (!close) starts.push_back(h);
  }

  std::vector<std::pair<double, Eigen::VectorXd>> refined;
  for (const auto& s : starts) {
    auto [h, value] = pattern_search(f, chamber, s, std::max(step, 1e-6), rng);
    refined.emplace_back(value, std::move(h));
  }
  std::sort(refined.begin(), refined.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  o.value = refined.front().first;
  o.argmax_h = refined.front().second;
  for (std::size_t i = 1; i < refined.size(); ++i)
    if (o.value - refined[i].first <= 1e-10 && (refined[i].second - o.argmax_h).norm() > 1e-6)
      o.ties.push_back(refined[i].second);
  Eigen::MatrixXd unit_walls = chamber.walls;
  for (int i = 0; i < r; ++i) {
    unit_walls.col(i).normalize();
    if (std::abs(unit_walls.col(i).dot(o.argmax_h)) <= 1e-9) o.active_walls.push_back(i);
  }
  o.evaluations = f.evaluations;
  return o;
}

}  // namespace cvanish
