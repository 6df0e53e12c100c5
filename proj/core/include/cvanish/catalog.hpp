#pragma once

// Irreducible Riemannian symmetric spaces of noncompact type and their
// restricted root data (rank, dimension, root system, multiplicities).

#include "cvanish/rootkit.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cvanish {

struct SpaceFlags {
  /// Only SO_0(2,2)/SO(2)xSO(2): reducible, kept as the counterexample row.
  bool reducible_exception = false;
  bool in_theorem_1_3_list = false;
};

struct SpaceDescriptor {
  std::string label;     ///< Cartan label, e.g. "AIII(2,1)" or "EIV"
  std::string quotient;  ///< group quotient, e.g. "SU(1,2)/S(U(1)xU(2))"
  std::string family;    ///< "AI", "AIII", ..., "G"
  std::vector<int> params;
  int rank = 0;
  int dim = 0;
  MultiplicityMap multiplicities;
  RestrictedRootSystem system;  ///< Killing-normalized
  SpaceFlags flags;

  /// dim > 2 and not the reducible exception.
  bool in_theorem_scope() const { return dim > 2 && !flags.reducible_exception; }
  /// Number of curvature eigenvalues carried by roots: sum of multiplicities.
  int root_multiplicity() const { return system.total_multiplicity(); }
};

struct CatalogFilter {
  std::optional<std::string> family;
  std::optional<std::pair<int, int>> rank_range;  ///< inclusive
  std::optional<std::pair<int, int>> dim_range;   ///< inclusive
  bool theorem_1_3_only = false;
  int max_param = 8;  ///< bound on every integer parameter of the classical families
};

/// One row of a catalog override file.
struct CatalogRow {
  std::string label;
  std::string family;
  int rank = 0;
  int dim = 0;
  std::string roots_type;
  MultiplicityMap multiplicities;
  SpaceFlags flags;
};

/// Builds and validates a descriptor from explicit root data. Throws DataError
/// naming "dimension identity", "rank identity" or "Ricci identity".
SpaceDescriptor make_space(const CatalogRow& row);

/// Builds a classical or exceptional space from its Cartan family and parameters.
/// Throws ParameterError for invalid parameters and LookupError for unknown families.
SpaceDescriptor make_space(std::string_view family, const std::vector<int>& params);

/// Lowercase, whitespace-free, ASCII form used for name matching.
std::string normalize_space_name(std::string_view name);

class Catalog {
 public:
  /// Built-in catalog: seven classical families plus the twelve exceptional spaces.
  Catalog() = default;

  /// Accepts Cartan labels ("AIII(2,1)", "EIV") and quotient strings
  /// ("SU(1,2)/S(U(1)xU(2))"), case-insensitive and whitespace-tolerant.
  SpaceDescriptor lookup(std::string_view name) const;

  /// Deterministic order: classical families (AI, AII, AIII, BDI, DIII, CI, CII)
  /// with ascending parameters, then the exceptional spaces, then extra override rows.
  std::vector<SpaceDescriptor> enumerate(const CatalogFilter& filter = {}) const;

  /// Returns a catalog with the rows added or replacing rows of the same label.
  Catalog with_overrides(const std::vector<CatalogRow>& rows) const;

  const std::vector<SpaceDescriptor>& overrides() const { return overrides_; }

 private:
  const SpaceDescriptor* find_override(std::string_view normalized) const;

  std::vector<SpaceDescriptor> overrides_;
};

/// Parses the JSON override schema: an array of row objects. Throws DataError.
std::vector<CatalogRow> parse_catalog_rows(std::string_view json_text);

/// Reads `path` and applies it to `base`. An empty file leaves the catalog unchanged.
Catalog load_catalog_override(const std::filesystem::path& path, const Catalog& base = {});

/// The exceptional spaces in catalog order: EI..EIX, FI, FII, G.
const std::vector<std::string>& exceptional_labels();

}  // namespace cvanish
