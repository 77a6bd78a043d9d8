#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "toric/error.hpp"
#include "toric/ff.hpp"

using namespace toric;

namespace {

// Polynomials over F_p as coefficient vectors, constant term first.
using Coeffs = std::vector<std::uint32_t>;

Coeffs trim(Coeffs a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Coeffs poly_mod(Coeffs a, const Coeffs& m, std::uint32_t p) {
  a = trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + p * p - lead * m[i]) % p;
    a = trim(a);
  }
  return a;
}

Coeffs poly_mul(const Coeffs& a, const Coeffs& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Coeffs out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  }
  return out;
}

// Irreducible iff no monic polynomial of degree 1..f/2 divides it.
bool irreducible_by_trial_division(std::uint32_t p, const Coeffs& m) {
  const std::size_t f = m.size() - 1;
  for (std::size_t d = 1; d <= f / 2; ++d) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::size_t n = 0; n < count; ++n) {
      Coeffs g(d + 1, 0);
      std::size_t rest = n;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = rest % p;
        rest /= p;
      }
      g[d] = 1;
      if (poly_mod(m, g, p).empty()) return false;
    }
  }
  return true;
}

Coeffs coeffs_of(ElementIndex idx, const FieldSpec& f) {
  Coeffs c(f.f(), 0);
  for (std::uint32_t i = 0; i < f.f(); ++i) {
    c[i] = idx % f.p();
    idx /= f.p();
  }
  return c;
}

}  // namespace

TEST_CASE("default moduli are the lexicographically least irreducibles") {
  CHECK(make_field(5, 1).modulus() == Coeffs{0, 1});
  CHECK(make_field(2, 2).modulus() == Coeffs{1, 1, 1});
  CHECK(make_field(3, 2).modulus() == Coeffs{1, 0, 1});

  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {3, 3}, {5, 2}, {7, 2}}) {
    const FieldSpec field = make_field(p, f);
    CHECK(irreducible_by_trial_division(p, field.modulus()));
    // Every monic candidate before it, in the same order, is reducible.
    const Coeffs chosen = field.modulus();
    std::size_t total = 1;
    for (int i = 0; i < f; ++i) total *= p;
    for (std::size_t n = 0; n < total; ++n) {
      Coeffs m(f + 1, 0);
      std::size_t rest = n;
      for (int k = f; k-- > 0;) {
        m[k] = rest % p;
        rest /= p;
      }
      m[f] = 1;
      if (m == chosen) break;
      CHECK_FALSE(irreducible_by_trial_division(p, m));
    }
  }
}

TEST_CASE("Rabin test agrees with trial division") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (std::uint32_t f = 1; f <= 4; ++f) {
      std::size_t total = 1;
      for (std::uint32_t i = 0; i < f; ++i) total *= p;
      for (std::size_t n = 0; n < total; ++n) {
        Coeffs m(f + 1, 0);
        std::size_t rest = n;
        for (std::uint32_t k = 0; k < f; ++k) {
          m[k] = rest % p;
          rest /= p;
        }
        m[f] = 1;
        CHECK(is_irreducible(p, m) == irreducible_by_trial_division(p, m));
      }
    }
  }
}

TEST_CASE("tables match schoolbook arithmetic modulo the modulus") {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {2, 3}, {5, 2}}) {
    const FieldSpec field = make_field(p, f);
    for (ElementIndex a = 0; a < field.q(); ++a) {
      for (ElementIndex b = 0; b < field.q(); ++b) {
        const Coeffs ca = coeffs_of(a, field), cb = coeffs_of(b, field);
        Coeffs sum(f);
        for (int i = 0; i < f; ++i) sum[i] = (ca[i] + cb[i]) % p;
        Coeffs prod = poly_mod(poly_mul(trim(ca), trim(cb), p), field.modulus(), p);
        prod.resize(f, 0);
        CHECK(coeffs_of(field.add(a, b), field) == sum);
        CHECK(coeffs_of(field.mul(a, b), field) == prod);
      }
    }
  }
}

TEST_CASE("field axioms hold exhaustively for small q") {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {7, 1}}) {
    const FieldSpec field = make_field(p, f);
    const auto els = enumerate(field);
    for (const auto& a : els) {
      if (!a.is_zero()) CHECK(a * a.inv() == field.one());
      CHECK(a + (-a) == field.zero());
      for (const auto& b : els) {
        for (const auto& c : els) {
          CHECK((a * b) * c == a * (b * c));
          CHECK(a * (b + c) == a * b + a * c);
        }
      }
    }
    // The multiplicative group is cyclic.
    bool found = false;
    for (const auto& g : els) {
      if (g.is_zero()) continue;
      std::uint32_t order = 1;
      for (auto x = g; !(x == field.one()); x *= g) ++order;
      found = found || order == field.q() - 1;
    }
    CHECK(found);
  }
}

TEST_CASE("enumeration order and printing") {
  const FieldSpec f4 = make_field(2, 2);
  std::vector<std::string> names;
  for (const auto& e : enumerate(f4)) names.push_back(to_string(e));
  CHECK(names == std::vector<std::string>{"0", "1", "t", "t+1"});
  const FieldSpec f9 = make_field(3, 2);
  CHECK(to_string(f9.element(8)) == "2*t+2");
  CHECK(f9.generator() * f9.generator() == -f9.one());
  CHECK(f9.name() == "GF(3^2)");
  CHECK(make_field(5, 1).generator().is_zero());
}

TEST_CASE("0^0 = 1 and Fermat") {
  const FieldSpec f = make_field(5, 1);
  CHECK(f.zero().pow(0) == f.one());
  for (const auto& a : enumerate(f)) CHECK(a.pow(5) == a);
}

TEST_CASE("power-sum lemma by direct summation") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    const FieldSpec field = parse_field("GF(" + std::to_string(q) + ")");
    for (std::uint64_t alpha = 0; alpha <= 3 * (q - 1); ++alpha) {
      const bool minus_one = alpha > 0 && alpha % (q - 1) == 0;
      CHECK(power_sum(field, alpha) == (minus_one ? -field.one() : field.zero()));
    }
  }
}

TEST_CASE("errors") {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IdentityViolated;
  };
  CHECK(code([] { make_field(6, 1); }) == ErrorCode::CompositeP);
  CHECK(code([] { parse_field("GF(12)"); }) == ErrorCode::CompositeP);
  CHECK(code([] { make_field(2, 9); }) == ErrorCode::CapExceeded);
  CHECK(code([] { make_field(2, 11, 4096); }) == ErrorCode::CapExceeded);
  CHECK(code([] { FieldSpec::with_modulus(2, {1, 0, 1}); }) == ErrorCode::InvalidModulus);
  CHECK(code([] { make_field(3, 1).zero().inv(); }) == ErrorCode::DivisionByZero);
  CHECK(code([] { make_field(3, 1).one() + make_field(5, 1).one(); }) == ErrorCode::FieldMismatch);
  CHECK(code([] { parse_field("F(3)"); }) == ErrorCode::InvalidParams);
}

TEST_CASE("p-weight and explicit moduli") {
  CHECK(p_weight(10, 3) == 2);  // 101 in base 3
  CHECK(p_weight(255, 2) == 8);
  const FieldSpec alt = FieldSpec::with_modulus(3, {2, 1, 1});  // t^2 + t + 2
  CHECK(alt.q() == 9);
  CHECK_FALSE(alt == make_field(3, 2));
  CHECK(parse_field("GF(9)") == make_field(3, 2));
  CHECK(parse_field("GF(2^3)").q() == 8);
}
