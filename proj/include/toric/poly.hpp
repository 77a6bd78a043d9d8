#pragma once

// Sparse multivariate polynomials over an exact coefficient domain.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "toric/error.hpp"
#include "toric/fan.hpp"
#include "toric/ff.hpp"
#include "toric/types.hpp"

namespace toric {

// --- coefficient domains -----------------------------------------------------

struct FieldDomain {
  using Scalar = FieldElement;
  FieldSpec field;

  Scalar zero() const { return field.zero(); }
  Scalar one() const { return field.one(); }
  Scalar from_integer(std::int64_t n) const { return field.from_integer(n); }
  Scalar generator() const;
  bool is_zero(const Scalar& a) const { return a.is_zero(); }
  std::string name() const { return field.name(); }
  friend bool operator==(const FieldDomain&, const FieldDomain&) = default;
};

struct RationalDomain {
  using Scalar = Rational;
  Scalar zero() const { return 0; }
  Scalar one() const { return 1; }
  Scalar from_integer(std::int64_t n) const { return n; }
  Scalar generator() const;
  bool is_zero(const Scalar& a) const { return a == 0; }
  std::string name() const { return "QQ"; }
  friend bool operator==(const RationalDomain&, const RationalDomain&) = default;
};

struct IntegerDomain {
  using Scalar = Integer;
  Scalar zero() const { return 0; }
  Scalar one() const { return 1; }
  Scalar from_integer(std::int64_t n) const { return n; }
  Scalar generator() const;
  bool is_zero(const Scalar& a) const { return a == 0; }
  std::string name() const { return "ZZ"; }
  friend bool operator==(const IntegerDomain&, const IntegerDomain&) = default;
};

using Exponent = std::vector<std::uint32_t>;
using MultiDegree = IntVector;

// --- MultiPoly ---------------------------------------------------------------

template <typename Domain>
class MultiPoly {
 public:
  using Scalar = typename Domain::Scalar;
  using TermMap = std::map<Exponent, Scalar>;

  MultiPoly(Domain domain, int nvars) : domain_(std::move(domain)), nvars_(nvars) {}

  static MultiPoly constant(Domain domain, int nvars, const Scalar& c) {
    MultiPoly p(std::move(domain), nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }
  static MultiPoly variable(Domain domain, int nvars, int index) {
    MultiPoly p(domain, nvars);
    Exponent e(nvars, 0);
    e.at(index) = 1;
    p.add_term(std::move(e), domain.one());
    return p;
  }
  static MultiPoly monomial(Domain domain, Exponent e, const Scalar& c) {
    const int n = static_cast<int>(e.size());
    MultiPoly p(std::move(domain), n);
    p.add_term(std::move(e), c);
    return p;
  }

  const Domain& domain() const { return domain_; }
  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds c * x^e, dropping the term if it cancels.
  void add_term(Exponent e, const Scalar& c) {
    if (static_cast<int>(e.size()) != nvars_) {
      throw Error(ErrorCode::ArityMismatch, "exponent length " + std::to_string(e.size()) +
                                                " for a polynomial in " + std::to_string(nvars_) +
                                                " variables");
    }
    if (domain_.is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second = it->second + c;
      if (domain_.is_zero(it->second)) terms_.erase(it);
    }
  }

  Scalar coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? domain_.zero() : it->second;
  }

  /// Largest total degree; 0 for constants and for the zero polynomial.
  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) {
      std::uint32_t s = 0;
      for (auto x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  MultiPoly& operator*=(const Scalar& s) {
    if (domain_.is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c = c * s;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(const MultiPoly& a) {
    MultiPoly out(a.domain_, a.nvars_);
    for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, -c);
    return out;
  }
  friend MultiPoly operator*(MultiPoly a, const Scalar& s) { return a *= s; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly out(a.domain_, a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.domain_ == b.domain_ && a.terms_ == b.terms_;
  }

  MultiPoly pow(std::uint32_t n) const {
    MultiPoly result = constant(domain_, nvars_, domain_.one());
    MultiPoly base = *this;
    for (; n > 0; n >>= 1) {
      if (n & 1) result *= base;
      if (n > 1) base *= base;
    }
    return result;
  }

 private:
  void check_compatible(const MultiPoly& o) const {
    if (!(domain_ == o.domain_)) {
      throw Error(ErrorCode::FieldMismatch, domain_.name() + " vs " + o.domain_.name());
    }
    if (nvars_ != o.nvars_) {
      throw Error(ErrorCode::ArityMismatch, std::to_string(nvars_) + " vs " +
                                                std::to_string(o.nvars_) + " variables");
    }
  }

  Domain domain_;
  int nvars_;
  TermMap terms_;
};

using FpPoly = MultiPoly<FieldDomain>;
using QPoly = MultiPoly<RationalDomain>;
using ZPoly = MultiPoly<IntegerDomain>;

// --- generic operations ------------------------------------------------------

template <typename Scalar>
Scalar power(const Scalar& base, std::uint32_t e, Scalar one) {
  Scalar b = base;
  for (; e > 0; e >>= 1) {
    if (e & 1) one = one * b;
    if (e > 1) b = b * b;
  }
  return one;
}

/// Exact evaluation with 0^0 = 1.
template <typename Domain>
typename Domain::Scalar evaluate(const MultiPoly<Domain>& p,
                                 std::span<const typename Domain::Scalar> point) {
  if (static_cast<int>(point.size()) != p.nvars()) {
    throw Error(ErrorCode::ArityMismatch, "point has " + std::to_string(point.size()) +
                                              " coordinates, polynomial has " +
                                              std::to_string(p.nvars()) + " variables");
  }
  const auto& dom = p.domain();
  auto sum = dom.zero();
  for (const auto& [e, c] : p.terms()) {
    auto term = c;
    for (int i = 0; i < p.nvars(); ++i) {
      if (e[i] != 0) term = term * power(point[i], e[i], dom.one());
    }
    sum = sum + term;
  }
  return sum;
}

template <typename Domain>
typename Domain::Scalar evaluate(const MultiPoly<Domain>& p,
                                 const std::vector<typename Domain::Scalar>& point) {
  return evaluate(p, std::span<const typename Domain::Scalar>(point));
}

/// P(images[0], ..., images[n-1]).
template <typename Domain>
MultiPoly<Domain> substitute(const MultiPoly<Domain>& p, const std::vector<MultiPoly<Domain>>& images) {
  if (static_cast<int>(images.size()) != p.nvars()) {
    throw Error(ErrorCode::ArityMismatch, std::to_string(images.size()) + " images for " +
                                              std::to_string(p.nvars()) + " variables");
  }
  if (images.empty()) return p;
  const int target = images.front().nvars();
  for (const auto& img : images) {
    if (img.nvars() != target) throw Error(ErrorCode::ArityMismatch, "images disagree on variable count");
  }
  const auto& dom = p.domain();
  std::vector<std::vector<MultiPoly<Domain>>> powers(images.size());
  auto image_power = [&](std::size_t i, std::uint32_t k) -> const MultiPoly<Domain>& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MultiPoly<Domain>::constant(dom, target, dom.one()));
    while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
    return cache[k];
  };
  MultiPoly<Domain> out(dom, target);
  for (const auto& [e, c] : p.terms()) {
    auto term = MultiPoly<Domain>::constant(dom, target, c);
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (e[i] != 0) term *= image_power(i, e[i]);
    }
    out += term;
  }
  return out;
}

std::string monomial_string(const Exponent& e);
std::string degree_string(const MultiDegree& d);

/// A^T e for a single exponent.
MultiDegree degree_of(const Exponent& e, const GradingData& g);

template <typename Domain>
MultiDegree multidegree(const MultiPoly<Domain>& p, const GradingData& g) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "the zero polynomial has every degree");
  if (p.nvars() != g.rho()) {
    throw Error(ErrorCode::ArityMismatch, "polynomial in " + std::to_string(p.nvars()) +
                                              " variables, grading on " + std::to_string(g.rho()));
  }
  const Exponent* first_exp = nullptr;
  MultiDegree first;
  for (const auto& [e, c] : p.terms()) {
    MultiDegree d = degree_of(e, g);
    if (!first_exp) {
      first_exp = &e;
      first = d;
    } else if (d != first) {
      throw Error(ErrorCode::NotHomogeneous, monomial_string(*first_exp) + " has degree " +
                                                 degree_string(first) + " but " +
                                                 monomial_string(e) + " has degree " +
                                                 degree_string(d));
    }
  }
  return first;
}

template <typename Domain>
bool is_homogeneous(const MultiPoly<Domain>& p, const GradingData& g) {
  if (p.is_zero()) return true;
  try {
    multidegree(p, g);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotHomogeneous) return false;
    throw;
  }
}

/// Column sums of the weight matrix: deg X_1 + ... + deg X_rho.
MultiDegree total_generator_degree(const GradingData& g);

/// Ax exponent max_j ceil((a_j - d_j) / d_j) over components with d_j >= 1,
/// floored at 0.
struct AxExponent {
  std::int64_t mu = 0;
  std::vector<int> excluded_components;  // indices j with d_j = 0
};
AxExponent ax_exponent(const GradingData& g, const MultiDegree& d);

/// (P(mu . x), chi(mu) P(x)) for mu in (F_q^*)^r.
std::pair<FieldElement, FieldElement> scaling_character(const FpPoly& p, const GradingData& g,
                                                        const std::vector<FieldElement>& mu,
                                                        const std::vector<FieldElement>& point);

/// mu . x: coordinate i scaled by prod_j mu_j^{A[i][j]}.
std::vector<FieldElement> act(const GradingData& g, const std::vector<FieldElement>& mu,
                              const std::vector<FieldElement>& point);

/// Monomials of multidegree d, in increasing exponent order.
std::vector<Exponent> monomials_of_degree(const GradingData& g, const MultiDegree& d);

/// Uniform coefficients on every monomial of degree d; redrawn until nonzero.
FpPoly random_homogeneous(const FieldSpec& field, const GradingData& g, const MultiDegree& d,
                          std::mt19937_64& rng);

// --- text form ---------------------------------------------------------------

/// Grammar:
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := nat ['/' nat] | 't' ['^' nat] | 'x' nat ['^' nat] | '(' expr ')' ['^' nat]
/// 't' is the field generator and is only accepted over extension fields.
template <typename Domain>
MultiPoly<Domain> parse(std::string_view text, int nvars, const Domain& domain);

extern template FpPoly parse<FieldDomain>(std::string_view, int, const FieldDomain&);
extern template QPoly parse<RationalDomain>(std::string_view, int, const RationalDomain&);
extern template ZPoly parse<IntegerDomain>(std::string_view, int, const IntegerDomain&);

std::string scalar_to_string(const FieldElement& c);
std::string scalar_to_string(const Rational& c);
std::string scalar_to_string(const Integer& c);

/// Canonical text form, terms in decreasing lexicographic exponent order.
template <typename Domain>
std::string to_string(const MultiPoly<Domain>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::string coeff = scalar_to_string(c);
    bool negative = !coeff.empty() && coeff.front() == '-';
    if (negative) coeff.erase(0, 1);
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string term;
    if (mono.empty()) {
      term = coeff;
    } else if (coeff == "1") {
      term = mono;
    } else {
      term = coeff + "*" + mono;
    }
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return out;
}

}  // namespace toric
