#pragma once

// The graded ring A^s = Q[x, v] / (x^{3s+3}, (x+v)^{2s+2} v^{s+1}), with
// u = x + v already eliminated, and the non-vanishing certificate for
// powers of the class 5x + 2v.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "toric/error.hpp"
#include "toric/types.hpp"

namespace toric {

/// Homogeneous polynomial in (x, v); coeff(j) belongs to x^{degree-j} v^j.
template <typename Scalar>
class BinaryForm {
 public:
  BinaryForm() : BinaryForm(0) {}
  explicit BinaryForm(int degree) : degree_(degree), coeffs_(degree + 1) {
    if (degree < 0) throw Error(ErrorCode::InvalidParams, "negative degree");
    coeffs_.fill(Scalar(0));
  }

  /// c x^i v^j.
  static BinaryForm monomial(int i, int j, const Scalar& c = Scalar(1)) {
    BinaryForm f(i + j);
    f.coeffs_[j] = c;
    return f;
  }

  int degree() const { return degree_; }
  const Scalar& coeff(int j) const { return coeffs_[j]; }
  Scalar& coeff(int j) { return coeffs_[j]; }
  const Vector<Scalar>& coeffs() const { return coeffs_; }

  bool is_zero_form() const {
    for (Eigen::Index j = 0; j < coeffs_.size(); ++j) {
      if (coeffs_[j] != Scalar(0)) return false;
    }
    return true;
  }

  BinaryForm& operator+=(const BinaryForm& o) {
    check_degree(o);
    for (Eigen::Index j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
    return *this;
  }
  BinaryForm& operator-=(const BinaryForm& o) {
    check_degree(o);
    for (Eigen::Index j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
    return *this;
  }
  BinaryForm& operator*=(const Scalar& k) {
    for (Eigen::Index j = 0; j < coeffs_.size(); ++j) coeffs_[j] *= k;
    return *this;
  }

  friend BinaryForm operator+(BinaryForm a, const BinaryForm& b) { return a += b; }
  friend BinaryForm operator-(BinaryForm a, const BinaryForm& b) { return a -= b; }
  friend BinaryForm operator*(BinaryForm a, const Scalar& k) { return a *= k; }
  friend BinaryForm operator*(const Scalar& k, BinaryForm a) { return a *= k; }
  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
    BinaryForm out(a.degree_ + b.degree_);
    for (int i = 0; i <= a.degree_; ++i) {
      if (a.coeffs_[i] == Scalar(0)) continue;
      for (int j = 0; j <= b.degree_; ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return out;
  }
  friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
    if (a.degree_ != b.degree_) return false;
    for (Eigen::Index j = 0; j < a.coeffs_.size(); ++j) {
      if (a.coeffs_[j] != b.coeffs_[j]) return false;
    }
    return true;
  }

 private:
  void check_degree(const BinaryForm& o) const {
    if (o.degree_ != degree_) {
      throw Error(ErrorCode::NotHomogeneous, "adding classes of degree " + std::to_string(degree_) +
                                                 " and " + std::to_string(o.degree_));
    }
  }

  int degree_;
  Vector<Scalar> coeffs_;
};

using ChowClass = BinaryForm<Rational>;

struct ChowRingSpec {
  int s = 0;

  explicit ChowRingSpec(int s_);

  int relation_degree() const { return 3 * s + 3; }
  int top_degree() const { return 6 * s + 4; }
  ChowClass x_relation() const;   // x^{3s+3}
  ChowClass uv_relation() const;  // (x+v)^{2s+2} v^{s+1}
  /// x^{3s+2} u^{2s+2} v^s, expanded.
  ChowClass fundamental_class() const;
};

ChowClass x_class();
ChowClass v_class();
ChowClass u_class();
/// d1 x + d2 v.
ChowClass hyperplane_class(std::int64_t d1, std::int64_t d2);

ChowClass multiply(const ChowClass& a, const ChowClass& b);
ChowClass power(const ChowClass& a, int n);

/// "5*x + 2*v"; the rational coefficients are printed exactly.
std::string to_string(const ChowClass& c);

/// Result of the graded membership test. When `in_ideal`, the cofactors
/// satisfy c == x^{3s+3} * p + (x+v)^{2s+2} v^{s+1} * q; they are absent when
/// the degree is below the relations (and then c is the zero form).
struct Membership {
  bool in_ideal = false;
  std::optional<ChowClass> p;
  std::optional<ChowClass> q;
  int rank = 0;           // rank of the generator-multiple basis in degree D
  int quotient_dim = 0;   // dim of the degree-D piece of A^s
  int rank_defect = 0;    // rank([basis | c]) - rank(basis)
};

Membership is_zero(const ChowClass& c, const ChowRingSpec& ring);

/// Dimension of the degree-D piece of A^s.
int graded_dimension(const ChowRingSpec& ring, int degree);

struct TsenCertificate {
  int s = 0, c = 0, E = 0;
  bool nonzero = false;
  std::optional<Rational> gamma;  // H^E v^{6s+4-E} in units of the fundamental class
  bool gamma_integral = false;
  int equations = 0;
  int unknowns = 0;
  bool within_top_degree = false;
  int socle_dim = 0;
};

/// E defaults to 5s+c+1. Throws InvalidParams for negative s, c or E.
/// gamma is reported with its sign, which is not always positive.
TsenCertificate tsen_certificate(int s, int c, std::optional<int> E_override = std::nullopt);

/// Least s <= s_max whose default certificate is nonzero.
std::optional<int> min_section_degree(int c, int s_max);

struct DimensionCount {
  int equations = 0;
  int unknowns = 0;
  int slack = 0;
  std::array<int, 3> family_bounds{};  // T-degree bound of x0^2 P3, x0 x4 Q3, x4 x5 Q4
  int uniform_equations = 0;           // 5s + c + 1
};

/// Degree vector defaults to (s, s, s, s, s, s).
DimensionCount dimension_count(int s, int c, std::optional<std::array<int, 6>> degree_vector = std::nullopt);

}  // namespace toric
