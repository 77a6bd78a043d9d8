#pragma once

// Finite fields F_p and F_{p^f}.
//
// Elements are stored by their enumeration index: the residue
// c_0 + c_1 t + ... + c_{f-1} t^{f-1} modulo the defining polynomial has
// index c_0 + c_1 p + ... + c_{f-1} p^{f-1}. Addition and multiplication go
// through tables built once per field by schoolbook arithmetic modulo the
// defining polynomial.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace toric {

using ElementIndex = std::uint16_t;

namespace detail {
struct FieldTables;
}

class FieldElement;

class FieldSpec {
 public:
  /// Hard ceiling on q; the tables are q*q entries.
  static constexpr std::uint64_t kMaxCardinality = 1024;
  static constexpr std::uint64_t kDefaultCap = 256;

  /// Field with an explicitly given monic modulus (constant term first).
  /// Throws CompositeP, InvalidModulus or CapExceeded.
  static FieldSpec with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus,
                                std::uint64_t cap = kDefaultCap);

  std::uint32_t p() const;
  std::uint32_t f() const;
  std::uint32_t q() const;
  const std::vector<std::uint32_t>& modulus() const;

  /// "GF(p)" or "GF(p^f)".
  std::string name() const;

  FieldElement zero() const;
  FieldElement one() const;
  /// The class of t; equals 0 in a prime field (modulus t).
  FieldElement generator() const;
  FieldElement from_integer(std::int64_t n) const;
  FieldElement from_coeffs(std::span<const std::uint32_t> coeffs) const;
  FieldElement element(ElementIndex index) const;

  // Index-level arithmetic for hot loops.
  ElementIndex add(ElementIndex a, ElementIndex b) const;
  ElementIndex mul(ElementIndex a, ElementIndex b) const;
  ElementIndex neg(ElementIndex a) const;
  ElementIndex inv(ElementIndex a) const;
  ElementIndex pow(ElementIndex a, std::uint64_t e) const;
  const ElementIndex* add_table() const;
  const ElementIndex* mul_table() const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b);

 private:
  explicit FieldSpec(std::shared_ptr<const detail::FieldTables> tables);
  std::shared_ptr<const detail::FieldTables> tables_;
  friend class FieldElement;
  friend FieldSpec make_field(std::uint32_t p, std::uint32_t f, std::uint64_t cap);
};

/// F_{p^f} with the lexicographically least monic irreducible modulus.
FieldSpec make_field(std::uint32_t p, std::uint32_t f,
                     std::uint64_t cap = FieldSpec::kDefaultCap);

/// Parses "GF(q)" for a prime power q, or "GF(p^f)".
FieldSpec parse_field(std::string_view text, std::uint64_t cap = FieldSpec::kDefaultCap);

class FieldElement {
 public:
  FieldElement(FieldSpec field, ElementIndex index);

  const FieldSpec& field() const { return field_; }
  ElementIndex index() const { return index_; }
  std::vector<std::uint32_t> coeffs() const;
  bool is_zero() const { return index_ == 0; }
  bool in_prime_field() const;

  FieldElement inv() const;
  FieldElement pow(std::uint64_t e) const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return a * b.inv();
  }
  friend FieldElement operator-(const FieldElement& a);
  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  void check_same(const FieldElement& o) const;
  FieldSpec field_;
  ElementIndex index_;
};

/// Polynomial in t, highest power first, e.g. "2*t^2+t+1".
std::string to_string(const FieldElement& a);

/// All q elements in index order: 0, 1, ..., then t, t+1, ...
std::vector<FieldElement> enumerate(const FieldSpec& field);

/// Sum over x in F_q of x^alpha, by direct summation.
FieldElement power_sum(const FieldSpec& field, std::uint64_t alpha);

/// Sum of base-p digits of n.
std::uint64_t p_weight(std::uint64_t n, std::uint64_t p);

bool is_prime(std::uint64_t n);

/// Rabin irreducibility test for a monic polynomial over F_p (constant first).
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic);

}  // namespace toric
