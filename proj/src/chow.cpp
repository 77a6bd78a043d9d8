#include "toric/chow.hpp"

#include <algorithm>

namespace toric {

namespace {

using RMatrix = Matrix<Rational>;

RMatrix zeros(Eigen::Index rows, Eigen::Index cols) {
  RMatrix m(rows, cols);
  m.fill(Rational(0));
  return m;
}

// Reduced row echelon form in place; returns the pivot columns.
std::vector<Eigen::Index> rref(RMatrix& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pick = row;
    while (pick < m.rows() && m(pick, col) == 0) ++pick;
    if (pick == m.rows()) continue;
    m.row(row).swap(m.row(pick));
    const Rational inv = Rational(1) / m(row, col);
    for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Rational k = m(i, col);
      for (Eigen::Index j = col; j < m.cols(); ++j) m(i, j) -= k * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Columns: x^{3s+3} x^{k-j} v^j for j = 0..k, then g x^{k-j} v^j.
RMatrix generator_basis(const ChowRingSpec& ring, int degree) {
  const int k = degree - ring.relation_degree();
  if (k < 0) return zeros(degree + 1, 0);
  const ChowClass g = ring.uv_relation();
  RMatrix m = zeros(degree + 1, 2 * (k + 1));
  for (int j = 0; j <= k; ++j) {
    m(j, j) = 1;
    for (int i = 0; i <= g.degree(); ++i) m(i + j, k + 1 + j) = g.coeff(i);
  }
  return m;
}

// Linear functional on degree 6s+4 vanishing on the ideal, normalized by its
// value on the fundamental class.
struct SocleFunctional {
  int dim = 0;
  Vector<Rational> ell;
};

SocleFunctional socle_functional(const ChowRingSpec& ring) {
  const int top = ring.top_degree();
  RMatrix mt = generator_basis(ring, top).transpose();
  const auto pivots = rref(mt);
  SocleFunctional out;
  out.dim = static_cast<int>(mt.cols() - pivots.size());
  if (out.dim != 1) return out;
  Eigen::Index free_col = 0;
  for (Eigen::Index c = 0, p = 0; c < mt.cols(); ++c) {
    if (p < static_cast<Eigen::Index>(pivots.size()) && pivots[p] == c) {
      ++p;
    } else {
      free_col = c;
    }
  }
  out.ell = Vector<Rational>(top + 1);
  out.ell.fill(Rational(0));
  out.ell[free_col] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r) out.ell[pivots[r]] = -mt(r, free_col);
  const ChowClass f = ring.fundamental_class();
  Rational norm = 0;
  for (int j = 0; j <= top; ++j) norm += out.ell[j] * f.coeff(j);
  if (norm == 0) throw Error(ErrorCode::IdentityViolated, "fundamental class vanishes");
  for (int j = 0; j <= top; ++j) out.ell[j] /= norm;
  return out;
}

}  // namespace

ChowRingSpec::ChowRingSpec(int s_) : s(s_) {
  if (s < 0) throw Error(ErrorCode::InvalidParams, "s must be >= 0");
}

ChowClass ChowRingSpec::x_relation() const { return ChowClass::monomial(relation_degree(), 0); }

ChowClass ChowRingSpec::uv_relation() const {
  return power(u_class(), 2 * s + 2) * ChowClass::monomial(0, s + 1);
}

ChowClass ChowRingSpec::fundamental_class() const {
  return ChowClass::monomial(3 * s + 2, s) * power(u_class(), 2 * s + 2);
}

ChowClass x_class() { return ChowClass::monomial(1, 0); }
ChowClass v_class() { return ChowClass::monomial(0, 1); }
ChowClass u_class() { return x_class() + v_class(); }

ChowClass hyperplane_class(std::int64_t d1, std::int64_t d2) {
  if (d1 < 0 || d2 < 0 || (d1 == 0 && d2 == 0)) {
    throw Error(ErrorCode::InvalidParams, "hyperplane degree must be nonnegative and nonzero");
  }
  return x_class() * Rational(d1) + v_class() * Rational(d2);
}

ChowClass multiply(const ChowClass& a, const ChowClass& b) { return a * b; }

ChowClass power(const ChowClass& a, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidParams, "negative exponent");
  ChowClass result = ChowClass::monomial(0, 0);
  ChowClass base = a;
  for (; n > 0; n >>= 1) {
    if (n & 1) result = result * base;
    if (n > 1) base = base * base;
  }
  return result;
}

std::string to_string(const ChowClass& c) {
  std::string out;
  const int d = c.degree();
  for (int j = 0; j <= d; ++j) {
    const Rational& a = c.coeff(j);
    if (a == 0) continue;
    std::string mono;
    auto factor = [&](const char* name, int e) {
      if (e == 0) return;
      if (!mono.empty()) mono += "*";
      mono += name;
      if (e > 1) mono += "^" + std::to_string(e);
    };
    factor("x", d - j);
    factor("v", j);
    const bool negative = a < 0;
    const Rational mag = negative ? Rational(-a) : a;
    std::string coeff = denominator(mag) == 1 ? numerator(mag).str()
                                              : numerator(mag).str() + "/" + denominator(mag).str();
    std::string term = mono.empty() ? coeff : (coeff == "1" ? mono : coeff + "*" + mono);
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return out.empty() ? "0" : out;
}

Membership is_zero(const ChowClass& c, const ChowRingSpec& ring) {
  const int D = c.degree();
  const int k = D - ring.relation_degree();
  RMatrix basis = generator_basis(ring, D);
  Membership out;
  if (k < 0) {
    out.in_ideal = c.is_zero_form();
    out.quotient_dim = D + 1;
    out.rank_defect = out.in_ideal ? 0 : 1;
    return out;
  }
  RMatrix aug(D + 1, basis.cols() + 1);
  aug.leftCols(basis.cols()) = basis;
  for (int j = 0; j <= D; ++j) aug(j, basis.cols()) = c.coeff(j);
  const auto pivots = rref(aug);
  const auto unknowns = basis.cols();
  const bool inconsistent = !pivots.empty() && pivots.back() == unknowns;
  out.rank = static_cast<int>(pivots.size()) - (inconsistent ? 1 : 0);
  out.quotient_dim = D + 1 - out.rank;
  out.rank_defect = inconsistent ? 1 : 0;
  out.in_ideal = !inconsistent;
  if (out.in_ideal) {
    Vector<Rational> y(unknowns);
    y.fill(Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) y[pivots[r]] = aug(r, unknowns);
    ChowClass p(k), q(k);
    for (int j = 0; j <= k; ++j) {
      p.coeff(j) = y[j];
      q.coeff(j) = y[k + 1 + j];
    }
    out.p = p;
    out.q = q;
  }
  return out;
}

int graded_dimension(const ChowRingSpec& ring, int degree) {
  if (degree < 0) return 0;
  RMatrix basis = generator_basis(ring, degree);
  return degree + 1 - static_cast<int>(rref(basis).size());
}

TsenCertificate tsen_certificate(int s, int c, std::optional<int> E_override) {
  if (s < 0 || c < 0) throw Error(ErrorCode::InvalidParams, "s and c must be >= 0");
  const ChowRingSpec ring(s);
  TsenCertificate out;
  out.s = s;
  out.c = c;
  out.E = E_override ? *E_override : 5 * s + c + 1;
  if (out.E < 0) throw Error(ErrorCode::InvalidParams, "E must be >= 0");
  out.equations = out.E;
  out.unknowns = 6 * s + 6;
  out.within_top_degree = out.E <= ring.top_degree();

  const ChowClass h = power(hyperplane_class(5, 2), out.E);
  out.nonzero = !is_zero(h, ring).in_ideal;

  const SocleFunctional ell = socle_functional(ring);
  out.socle_dim = ell.dim;
  if (out.within_top_degree && ell.dim == 1) {
    // For the default E this is v^{s-c+3}.
    const ChowClass k = h * ChowClass::monomial(0, ring.top_degree() - out.E);
    Rational g = 0;
    for (int j = 0; j <= ring.top_degree(); ++j) g += ell.ell[j] * k.coeff(j);
    out.gamma = g;
    out.gamma_integral = denominator(g) == 1;
  }
  return out;
}

std::optional<int> min_section_degree(int c, int s_max) {
  if (c < 0) throw Error(ErrorCode::InvalidParams, "c must be >= 0");
  for (int s = 0; s <= s_max; ++s) {
    if (tsen_certificate(s, c).nonzero) return s;
  }
  return std::nullopt;
}

DimensionCount dimension_count(int s, int c, std::optional<std::array<int, 6>> degree_vector) {
  if (s < 0 || c < 0) throw Error(ErrorCode::InvalidParams, "s and c must be >= 0");
  const std::array<int, 6> d = degree_vector ? *degree_vector : std::array<int, 6>{s, s, s, s, s, s};
  for (int v : d) {
    if (v < 0) throw Error(ErrorCode::InvalidParams, "degree vector entries must be >= 0");
  }
  // Worst monomial in x1, x2, x3 puts the whole ternary degree on the largest entry.
  const int m = std::max({d[1], d[2], d[3]});
  DimensionCount out;
  out.family_bounds = {c + 2 * d[0] + 3 * m, c + d[0] + d[4] + 3 * m, c + d[4] + d[5] + 4 * m};
  out.equations = *std::max_element(out.family_bounds.begin(), out.family_bounds.end()) + 1;
  for (int v : d) out.unknowns += v + 1;
  out.slack = out.unknowns - out.equations;
  out.uniform_equations = 5 * s + c + 1;
  return out;
}

}  // namespace toric
