#pragma once

// Simplicial fans, their Cox multigrading and exceptional set.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toric/ff.hpp"
#include "toric/types.hpp"

namespace toric {

using IndexSet = std::vector<int>;

/// Lattice fan: one ray per row of `rays`; cones index into the rows.
struct Fan {
  int dim = 0;
  IntMatrix rays;  // rho x dim
  std::vector<IndexSet> max_cones;

  int rho() const { return static_cast<int>(rays.rows()); }
};

/// deg X_i is row i of `weights`.
struct GradingData {
  IntMatrix weights;  // rho x r
  std::vector<std::int64_t> torsion;

  int rho() const { return static_cast<int>(weights.rows()); }
  int rank() const { return static_cast<int>(weights.cols()); }
  bool effective() const { return (weights.array() >= 0).all(); }
  bool torsion_free() const { return torsion.empty(); }
};

/// x_i = 0 for all i in S, one entry per primitive collection.
struct ExceptionalSet {
  std::vector<IndexSet> strata;

  bool contains(std::uint64_t zero_mask) const;
};

/// Everything the counting code needs about P_Sigma: grading + exceptional set.
struct ToricModel {
  std::string name;
  std::optional<Fan> fan;
  GradingData grading;
  ExceptionalSet exceptional;

  int rho() const { return grading.rho(); }
};

/// Throws NonPrimitiveRay, NonSimplicialFan or InvalidFan.
void validate(const Fan& fan);

/// Minimal ray sets lying in no cone, sorted by size then lexicographically.
std::vector<IndexSet> primitive_collections(const Fan& fan);

ExceptionalSet exceptional_set(const Fan& fan);

/// Cokernel of x -> (<n_i, x>)_i via Smith normal form, normalized to a
/// nonnegative representative when one exists among small unimodular
/// column changes. Throws NonEffectiveGrading otherwise, and
/// TorsionClassGroup when `require_free` and the class group has torsion.
GradingData grading_from_fan(const Fan& fan, bool require_free = false);

GradingData standard_grading(int nvars);

/// #Z(F_q) by inclusion-exclusion over the strata.
Integer count_exceptional(const ExceptionalSet& z, int rho, const FieldSpec& field);
Integer count_exceptional(const Fan& fan, const FieldSpec& field);

Fan projective_fan(int d);
Fan blowup_p2_fan();
Fan blowup_p4_line_fan();

ToricModel model_from_fan(std::string name, Fan fan);
/// Grading-first construction; the exceptional set is the origin.
ToricModel weighted_projective(const std::vector<std::int64_t>& weights);

/// "projective(d)", "weighted(a0,...,ad)", "blowup_p2", "blowup_p4_line".
ToricModel builtin_model(std::string_view text);
std::vector<std::string> builtin_names();

/// Plain-text fan: "dim d", "ray a1 ... ad", "cone i1 ... ik", '#' comments.
Fan parse_fan(std::string_view text);
Fan load_fan_file(const std::string& path);

}  // namespace toric
