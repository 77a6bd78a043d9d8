#pragma once

// Quintic threefolds in P^4 containing the line x1 = x2 = x3 = 0 with
// multiplicity 3, and their strict transforms in the blowup along it:
//
//   ambient  x0^2 P3 + x0 x4 Q3 + x4 Q4            in x0..x4
//   strict   x0^2 P3 + x0 x4 Q3 + x4 x5 Q4         in x0..x5, bidegree (5,2)
//
// with P3, Q3 cubic and Q4 quartic forms in (x1, x2, x3).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "toric/poly.hpp"

namespace toric {

/// P3, Q3, Q4 are polynomials in 3 variables standing for (x1, x2, x3).
struct QuinticInstance {
  FieldSpec field;
  FpPoly p3;
  FpPoly q3;
  FpPoly q4;
  std::optional<std::uint64_t> seed;
};

enum class NonzeroPolicy { AnyNonzero, P3Nonzero };

/// Throws InvalidParams unless P3, Q3 are ternary cubics, Q4 a ternary
/// quartic, over the instance field, and not all three vanish.
void validate(const QuinticInstance& inst);

FpPoly ambient_quintic(const QuinticInstance& inst);
FpPoly strict_transform(const QuinticInstance& inst);

/// (x0, x5 x1, x5 x2, x5 x3, x4).
template <typename T>
std::vector<T> blowdown(std::span<const T> x) {
  if (x.size() != 6) throw Error(ErrorCode::ArityMismatch, "blowdown takes 6 coordinates");
  return {x[0], x[5] * x[1], x[5] * x[2], x[5] * x[3], x[4]};
}

template <typename T>
std::vector<T> blowdown(const std::vector<T>& x) {
  return blowdown(std::span<const T>(x));
}

/// The blowdown coordinates as polynomials in x0..x5.
std::vector<FpPoly> blowdown_images(const FieldSpec& field);

struct PullbackCheck {
  bool symbolic = false;
  std::size_t trials = 0;
  std::optional<std::vector<FieldElement>> counterexample;

  bool pass() const { return symbolic && !counterexample; }
};

/// ambient o blowdown == x5^3 * strict, symbolically and at seeded random points.
PullbackCheck pullback_identity_check(const QuinticInstance& inst, std::size_t trials,
                                      std::uint64_t seed);

QuinticInstance random_instance(const FieldSpec& field, std::uint64_t seed,
                                NonzeroPolicy policy = NonzeroPolicy::AnyNonzero);

/// Independent per-index seed for batch generation.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Exponents of (x1, x2, x3) of the given degree, degrevlex descending.
std::vector<Exponent> ternary_monomials(std::uint32_t degree);

/// Field, seed, and coefficient arrays in ternary_monomials order; each
/// coefficient is the element index sum c_i p^i.
nlohmann::ordered_json to_json(const QuinticInstance& inst);
QuinticInstance instance_from_json(const nlohmann::json& j);

}  // namespace toric
