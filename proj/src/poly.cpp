#include "toric/poly.hpp"

#include <cctype>

#include "toric/intmat.hpp"

namespace toric {

FieldElement FieldDomain::generator() const {
  if (field.f() == 1) {
    throw Error(ErrorCode::CoefficientNotInDomain, "'t' is only defined over extension fields");
  }
  return field.generator();
}

Rational RationalDomain::generator() const {
  throw Error(ErrorCode::CoefficientNotInDomain, "'t' is not a rational number");
}

Integer IntegerDomain::generator() const {
  throw Error(ErrorCode::CoefficientNotInDomain, "'t' is not an integer");
}

std::string monomial_string(const Exponent& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(i);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

std::string degree_string(const MultiDegree& d) {
  std::string s = "(";
  for (Eigen::Index j = 0; j < d.size(); ++j) s += (j ? "," : "") + std::to_string(d[j]);
  return s + ")";
}

MultiDegree degree_of(const Exponent& e, const GradingData& g) {
  MultiDegree d = MultiDegree::Zero(g.rank());
  for (int i = 0; i < g.rho(); ++i) {
    if (e[i] != 0) d += static_cast<std::int64_t>(e[i]) * g.weights.row(i).transpose();
  }
  return d;
}

MultiDegree total_generator_degree(const GradingData& g) {
  return g.weights.colwise().sum().transpose();
}

AxExponent ax_exponent(const GradingData& g, const MultiDegree& d) {
  const MultiDegree a = total_generator_degree(g);
  if (a.size() != d.size()) {
    throw Error(ErrorCode::ArityMismatch, "degree has " + std::to_string(d.size()) +
                                              " components, grading has " + std::to_string(a.size()));
  }
  AxExponent out;
  bool any = false;
  for (Eigen::Index j = 0; j < d.size(); ++j) {
    if (d[j] <= 0) {
      out.excluded_components.push_back(static_cast<int>(j));
      continue;
    }
    const std::int64_t ceil = -floor_div<std::int64_t>(-(a[j] - d[j]), d[j]);
    out.mu = any ? std::max(out.mu, ceil) : ceil;
    any = true;
  }
  if (!any) throw Error(ErrorCode::DegreeZeroGrading, "every component of the degree is 0");
  out.mu = std::max<std::int64_t>(out.mu, 0);
  return out;
}

std::vector<FieldElement> act(const GradingData& g, const std::vector<FieldElement>& mu,
                              const std::vector<FieldElement>& point) {
  if (static_cast<int>(mu.size()) != g.rank() || static_cast<int>(point.size()) != g.rho()) {
    throw Error(ErrorCode::ArityMismatch, "group element or point has the wrong length");
  }
  std::vector<FieldElement> out = point;
  for (int i = 0; i < g.rho(); ++i) {
    for (int j = 0; j < g.rank(); ++j) {
      const auto w = g.weights(i, j);
      if (w < 0) {
        out[i] *= mu[j].inv().pow(static_cast<std::uint64_t>(-w));
      } else {
        out[i] *= mu[j].pow(static_cast<std::uint64_t>(w));
      }
    }
  }
  return out;
}

std::pair<FieldElement, FieldElement> scaling_character(const FpPoly& p, const GradingData& g,
                                                        const std::vector<FieldElement>& mu,
                                                        const std::vector<FieldElement>& point) {
  const MultiDegree d = multidegree(p, g);
  for (const auto& m : mu) {
    if (m.is_zero()) throw Error(ErrorCode::InvalidParams, "group elements must be nonzero");
  }
  auto chi = p.domain().one();
  for (int j = 0; j < g.rank(); ++j) {
    chi *= d[j] < 0 ? mu[j].inv().pow(static_cast<std::uint64_t>(-d[j]))
                    : mu[j].pow(static_cast<std::uint64_t>(d[j]));
  }
  return {evaluate(p, act(g, mu, point)), chi * evaluate(p, point)};
}

std::vector<Exponent> monomials_of_degree(const GradingData& g, const MultiDegree& d) {
  const int rho = g.rho();
  for (int i = 0; i < rho; ++i) {
    if ((g.weights.row(i).array() == 0).all()) {
      throw Error(ErrorCode::InvalidParams,
                  "variable x" + std::to_string(i) + " has degree 0; infinitely many monomials");
    }
  }
  if (!g.effective()) throw Error(ErrorCode::NonEffectiveGrading, "monomial enumeration needs weights >= 0");
  std::vector<Exponent> out;
  Exponent e(rho, 0);
  MultiDegree rest = d;
  std::function<void(int)> recurse = [&](int i) {
    if (i == rho) {
      if ((rest.array() == 0).all()) out.push_back(e);
      return;
    }
    e[i] = 0;
    MultiDegree saved = rest;
    for (;;) {
      recurse(i + 1);
      rest -= g.weights.row(i).transpose();
      if ((rest.array() < 0).any()) break;
      ++e[i];
    }
    rest = saved;
    e[i] = 0;
  };
  recurse(0);
  std::sort(out.begin(), out.end());
  return out;
}

FpPoly random_homogeneous(const FieldSpec& field, const GradingData& g, const MultiDegree& d,
                          std::mt19937_64& rng) {
  const auto monos = monomials_of_degree(g, d);
  if (monos.empty()) {
    throw Error(ErrorCode::InvalidParams, "no monomials of degree " + degree_string(d));
  }
  const FieldDomain dom{field};
  for (;;) {
    FpPoly p(dom, g.rho());
    for (const auto& m : monos) {
      p.add_term(m, field.element(static_cast<ElementIndex>(rng() % field.q())));
    }
    if (!p.is_zero()) return p;
  }
}

// --- printing ----------------------------------------------------------------

std::string scalar_to_string(const FieldElement& c) {
  if (c.in_prime_field()) return std::to_string(c.index());
  return "(" + to_string(c) + ")";
}

std::string scalar_to_string(const Rational& c) {
  if (denominator(c) == 1) return numerator(c).str();
  return numerator(c).str() + "/" + denominator(c).str();
}

std::string scalar_to_string(const Integer& c) { return c.str(); }

// --- parsing -----------------------------------------------------------------

namespace {

FieldElement scalar_from(const FieldDomain& d, const Integer& n) {
  return d.field.from_integer(static_cast<std::int64_t>(n % d.field.p()));
}
Rational scalar_from(const RationalDomain&, const Integer& n) { return Rational(n); }
Integer scalar_from(const IntegerDomain&, const Integer& n) { return n; }

FieldElement divide(const FieldDomain&, const FieldElement& a, const FieldElement& b, std::size_t pos) {
  if (b.is_zero()) throw SyntaxError(pos, "division by zero");
  return a / b;
}
Rational divide(const RationalDomain&, const Rational& a, const Rational& b, std::size_t pos) {
  if (b == 0) throw SyntaxError(pos, "division by zero");
  return a / b;
}
Integer divide(const IntegerDomain&, const Integer&, const Integer&, std::size_t) {
  throw Error(ErrorCode::CoefficientNotInDomain, "fractions are not integers");
}

template <typename Domain>
class Parser {
 public:
  using Poly = MultiPoly<Domain>;

  Parser(std::string_view text, int nvars, const Domain& dom)
      : text_(text), nvars_(nvars), dom_(dom) {}

  Poly run() {
    Poly p = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(pos_, msg); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool at_digit() {
    skip();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  Integer nat() {
    if (!at_digit()) fail("expected a number");
    Integer n = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      n = n * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return n;
  }

  std::uint32_t small_nat() {
    const std::size_t at = pos_;
    Integer n = nat();
    if (n > 100000) throw SyntaxError(at, "exponent too large");
    return static_cast<std::uint32_t>(n);
  }

  std::uint32_t optional_exponent() { return accept('^') ? small_nat() : 1; }

  Poly constant(const typename Domain::Scalar& c) { return Poly::constant(dom_, nvars_, c); }

  Poly expr() {
    const bool negate = accept('-');
    Poly p = term();
    if (negate) p = -p;
    for (;;) {
      if (accept('+')) {
        p += term();
      } else if (accept('-')) {
        p -= term();
      } else {
        return p;
      }
    }
  }

  Poly term() {
    Poly p = factor();
    while (accept('*')) p *= factor();
    return p;
  }

  Poly factor() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto value = scalar_from(dom_, nat());
      if (accept('/')) {
        const std::size_t at = pos_;
        value = divide(dom_, value, scalar_from(dom_, nat()), at);
      }
      return constant(value);
    }
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner.pow(optional_exponent());
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "t") {
        typename Domain::Scalar g = [&] {
          try {
            return dom_.generator();
          } catch (const Error&) {
            throw Error(ErrorCode::CoefficientNotInDomain,
                        "'t' at position " + std::to_string(start) + " is not in " + dom_.name());
          }
        }();
        return constant(g).pow(optional_exponent());
      }
      if (word.size() >= 2 && word[0] == 'x' &&
          word.find_first_not_of("0123456789", 1) == std::string_view::npos) {
        const auto index = std::stoul(std::string(word.substr(1)));
        if (index >= static_cast<unsigned long>(nvars_)) {
          throw Error(ErrorCode::UnknownVariable, "'" + std::string(word) + "' at position " +
                                                      std::to_string(start) + "; variables are x0..x" +
                                                      std::to_string(nvars_ - 1));
        }
        return Poly::variable(dom_, nvars_, static_cast<int>(index)).pow(optional_exponent());
      }
      throw Error(ErrorCode::UnknownVariable,
                  "'" + std::string(word) + "' at position " + std::to_string(start));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  int nvars_;
  const Domain& dom_;
  std::size_t pos_ = 0;
};

}  // namespace

template <typename Domain>
MultiPoly<Domain> parse(std::string_view text, int nvars, const Domain& domain) {
  return Parser<Domain>(text, nvars, domain).run();
}

template FpPoly parse<FieldDomain>(std::string_view, int, const FieldDomain&);
template QPoly parse<RationalDomain>(std::string_view, int, const RationalDomain&);
template ZPoly parse<IntegerDomain>(std::string_view, int, const IntegerDomain&);

}  // namespace toric
