#include "toric/ff.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <utility>

#include "toric/error.hpp"

namespace toric {

namespace detail {

struct FieldTables {
  std::uint32_t p = 0;
  std::uint32_t f = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;
  std::vector<ElementIndex> add;
  std::vector<ElementIndex> mul;
  std::vector<ElementIndex> neg;
  std::vector<ElementIndex> inv;
};

}  // namespace detail

namespace {

using Poly = std::vector<std::uint32_t>;  // dense over F_p, constant term first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime, so a^(p-2).
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  trim(r);
  return r;
}

// Remainder of a modulo m (m nonzero, not necessarily monic).
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (!a.empty() && a.size() - 1 >= dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = factor * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly pow_mod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) result = poly_mod(poly_mul(result, base, p), m, p);
    base = poly_mod(poly_mul(base, base, p), m, p);
    e >>= 1;
  }
  return result;
}

// x^(p^k) mod m by k successive p-th powers.
Poly frobenius_x(std::uint32_t k, const Poly& m, std::uint32_t p) {
  Poly h = poly_mod(Poly{0, 1}, m, p);
  for (std::uint32_t i = 0; i < k; ++i) h = pow_mod(h, p, m, p);
  return h;
}

std::vector<std::uint32_t> prime_divisors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::uint32_t> digits(std::uint32_t index, std::uint32_t p, std::uint32_t f) {
  std::vector<std::uint32_t> c(f, 0);
  for (std::uint32_t i = 0; i < f; ++i) {
    c[i] = index % p;
    index /= p;
  }
  return c;
}

std::uint32_t undigits(std::span<const std::uint32_t> c, std::uint32_t p) {
  std::uint32_t index = 0;
  for (std::size_t i = c.size(); i-- > 0;) index = index * p + c[i];
  return index;
}

std::uint64_t checked_power(std::uint64_t p, std::uint32_t f, std::uint64_t cap) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < f; ++i) {
    q *= p;
    if (q > cap || q > FieldSpec::kMaxCardinality) {
      throw Error(ErrorCode::CapExceeded, "field cardinality " + std::to_string(p) + "^" +
                                              std::to_string(f) + " exceeds the cap " +
                                              std::to_string(std::min<std::uint64_t>(
                                                  cap, FieldSpec::kMaxCardinality)));
    }
  }
  return q;
}

std::shared_ptr<const detail::FieldTables> build_tables(std::uint32_t p,
                                                        std::vector<std::uint32_t> modulus) {
  auto t = std::make_shared<detail::FieldTables>();
  t->p = p;
  t->f = static_cast<std::uint32_t>(modulus.size() - 1);
  t->q = 1;
  for (std::uint32_t i = 0; i < t->f; ++i) t->q *= p;
  t->modulus = std::move(modulus);

  const std::uint32_t q = t->q;
  const std::uint32_t f = t->f;
  std::vector<Poly> residues(q);
  for (std::uint32_t i = 0; i < q; ++i) {
    residues[i] = digits(i, p, f);
    trim(residues[i]);
  }
  t->add.resize(std::size_t{q} * q);
  t->mul.resize(std::size_t{q} * q);
  t->neg.resize(q);
  t->inv.assign(q, 0);
  for (std::uint32_t a = 0; a < q; ++a) {
    const auto da = digits(a, p, f);
    std::vector<std::uint32_t> dn(f);
    for (std::uint32_t k = 0; k < f; ++k) dn[k] = (p - da[k]) % p;
    t->neg[a] = static_cast<ElementIndex>(undigits(dn, p));
    for (std::uint32_t b = 0; b < q; ++b) {
      const auto db = digits(b, p, f);
      std::vector<std::uint32_t> ds(f);
      for (std::uint32_t k = 0; k < f; ++k) ds[k] = (da[k] + db[k]) % p;
      t->add[std::size_t{a} * q + b] = static_cast<ElementIndex>(undigits(ds, p));

      Poly prod = poly_mod(poly_mul(residues[a], residues[b], p), t->modulus, p);
      prod.resize(f, 0);
      t->mul[std::size_t{a} * q + b] = static_cast<ElementIndex>(undigits(prod, p));
    }
  }
  for (std::uint32_t a = 1; a < q; ++a) {
    for (std::uint32_t b = 1; b < q; ++b) {
      if (t->mul[std::size_t{a} * q + b] == 1) {
        t->inv[a] = static_cast<ElementIndex>(b);
        break;
      }
    }
  }
  return t;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic) {
  Poly m(monic.begin(), monic.end());
  trim(m);
  if (m.size() < 2 || m.back() != 1) return false;
  const auto n = static_cast<std::uint32_t>(m.size() - 1);
  if (n == 1) return true;
  const Poly x{0, 1};
  if (poly_sub(frobenius_x(n, m, p), x, p) != Poly{}) return false;
  for (std::uint32_t r : prime_divisors(n)) {
    Poly h = poly_sub(frobenius_x(n / r, m, p), x, p);
    if (poly_gcd(m, h, p).size() != 1) return false;
  }
  return true;
}

std::uint64_t p_weight(std::uint64_t n, std::uint64_t p) {
  std::uint64_t s = 0;
  for (; n > 0; n /= p) s += n % p;
  return s;
}

// --- FieldSpec ---------------------------------------------------------------

FieldSpec::FieldSpec(std::shared_ptr<const detail::FieldTables> tables)
    : tables_(std::move(tables)) {}

FieldSpec FieldSpec::with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus,
                                  std::uint64_t cap) {
  if (!is_prime(p)) throw Error(ErrorCode::CompositeP, std::to_string(p) + " is not prime");
  if (modulus.size() < 2 || modulus.back() != 1) {
    throw Error(ErrorCode::InvalidModulus, "modulus must be monic of degree >= 1");
  }
  for (auto c : modulus) {
    if (c >= p) throw Error(ErrorCode::InvalidModulus, "modulus coefficient not reduced mod p");
  }
  checked_power(p, static_cast<std::uint32_t>(modulus.size() - 1), cap);
  if (!is_irreducible(p, modulus)) {
    throw Error(ErrorCode::InvalidModulus, "modulus is reducible over F_" + std::to_string(p));
  }
  return FieldSpec(build_tables(p, std::move(modulus)));
}

FieldSpec make_field(std::uint32_t p, std::uint32_t f, std::uint64_t cap) {
  if (!is_prime(p)) throw Error(ErrorCode::CompositeP, std::to_string(p) + " is not prime");
  if (f < 1) throw Error(ErrorCode::InvalidParams, "extension degree must be >= 1");
  const std::uint64_t q = checked_power(p, f, cap);

  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, std::uint32_t>,
                  std::shared_ptr<const detail::FieldTables>>
      cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find({p, f}); it != cache.end()) return FieldSpec(it->second);

  // Monic candidates in lexicographic order of (c_0, ..., c_{f-1}): c_0 varies slowest.
  for (std::uint64_t n = 0; n < q; ++n) {
    std::vector<std::uint32_t> m(f + 1, 0);
    std::uint64_t rest = n;
    for (std::uint32_t k = f; k-- > 0;) {
      m[k] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    m[f] = 1;
    if (is_irreducible(p, m)) {
      auto tables = build_tables(p, std::move(m));
      cache.emplace(std::pair{p, f}, tables);
      return FieldSpec(std::move(tables));
    }
  }
  throw Error(ErrorCode::InvalidModulus, "no irreducible polynomial found");  // unreachable
}

FieldSpec parse_field(std::string_view text, std::uint64_t cap) {
  auto fail = [&] {
    return Error(ErrorCode::InvalidParams,
                 "field must be written GF(p) or GF(p^f), got '" + std::string(text) + "'");
  };
  std::string s;
  for (char c : text) {
    if (c != ' ') s.push_back(c);
  }
  if (s.size() < 5 || s.substr(0, 3) != "GF(" || s.back() != ')') throw fail();
  std::string_view body(s);
  body = body.substr(3, body.size() - 4);
  auto parse_uint = [&](std::string_view v) {
    std::uint32_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) throw fail();
    return out;
  };
  const auto caret = body.find('^');
  if (caret == std::string_view::npos) {
    // GF(q) for a prime power q.
    const std::uint32_t q = parse_uint(body);
    std::uint32_t p = 2;
    while (p < q && q % p != 0) ++p;
    std::uint32_t f = 0;
    for (std::uint32_t rest = q; rest > 1 && rest % p == 0; rest /= p) ++f;
    std::uint64_t check = 1;
    for (std::uint32_t i = 0; i < f; ++i) check *= p;
    if (q < 2 || check != q) throw Error(ErrorCode::CompositeP, std::to_string(q) + " is not a prime power");
    return make_field(p, f, cap);
  }
  return make_field(parse_uint(body.substr(0, caret)), parse_uint(body.substr(caret + 1)), cap);
}

std::uint32_t FieldSpec::p() const { return tables_->p; }
std::uint32_t FieldSpec::f() const { return tables_->f; }
std::uint32_t FieldSpec::q() const { return tables_->q; }
const std::vector<std::uint32_t>& FieldSpec::modulus() const { return tables_->modulus; }

std::string FieldSpec::name() const {
  if (f() == 1) return "GF(" + std::to_string(p()) + ")";
  return "GF(" + std::to_string(p()) + "^" + std::to_string(f()) + ")";
}

FieldElement FieldSpec::zero() const { return FieldElement(*this, 0); }
FieldElement FieldSpec::one() const { return FieldElement(*this, 1); }

FieldElement FieldSpec::generator() const {
  if (f() == 1) return zero();
  return FieldElement(*this, static_cast<ElementIndex>(p()));
}

FieldElement FieldSpec::from_integer(std::int64_t n) const {
  const std::int64_t pp = p();
  const std::int64_t r = ((n % pp) + pp) % pp;
  return FieldElement(*this, static_cast<ElementIndex>(r));
}

FieldElement FieldSpec::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > f()) throw Error(ErrorCode::InvalidParams, "too many coefficients");
  std::vector<std::uint32_t> c(coeffs.begin(), coeffs.end());
  for (auto& x : c) x %= p();
  return FieldElement(*this, static_cast<ElementIndex>(undigits(c, p())));
}

FieldElement FieldSpec::element(ElementIndex index) const {
  if (index >= q()) throw Error(ErrorCode::InvalidParams, "element index out of range");
  return FieldElement(*this, index);
}

ElementIndex FieldSpec::add(ElementIndex a, ElementIndex b) const {
  return tables_->add[std::size_t{a} * tables_->q + b];
}
ElementIndex FieldSpec::mul(ElementIndex a, ElementIndex b) const {
  return tables_->mul[std::size_t{a} * tables_->q + b];
}
ElementIndex FieldSpec::neg(ElementIndex a) const { return tables_->neg[a]; }

ElementIndex FieldSpec::inv(ElementIndex a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in " + name());
  return tables_->inv[a];
}

ElementIndex FieldSpec::pow(ElementIndex a, std::uint64_t e) const {
  ElementIndex result = 1;  // 0^0 = 1
  ElementIndex base = a;
  for (; e > 0; e >>= 1) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

const ElementIndex* FieldSpec::add_table() const { return tables_->add.data(); }
const ElementIndex* FieldSpec::mul_table() const { return tables_->mul.data(); }

bool operator==(const FieldSpec& a, const FieldSpec& b) {
  if (a.tables_ == b.tables_) return true;
  return a.p() == b.p() && a.modulus() == b.modulus();
}

// --- FieldElement ------------------------------------------------------------

FieldElement::FieldElement(FieldSpec field, ElementIndex index)
    : field_(std::move(field)), index_(index) {}

std::vector<std::uint32_t> FieldElement::coeffs() const {
  return digits(index_, field_.p(), field_.f());
}

bool FieldElement::in_prime_field() const { return index_ < field_.p(); }

void FieldElement::check_same(const FieldElement& o) const {
  if (!(field_ == o.field_)) {
    throw Error(ErrorCode::FieldMismatch,
                "operands from " + field_.name() + " and " + o.field_.name());
  }
}

FieldElement FieldElement::inv() const { return FieldElement(field_, field_.inv(index_)); }

FieldElement FieldElement::pow(std::uint64_t e) const {
  return FieldElement(field_, field_.pow(index_, e));
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  check_same(o);
  index_ = field_.add(index_, o.index_);
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  check_same(o);
  index_ = field_.add(index_, field_.neg(o.index_));
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  check_same(o);
  index_ = field_.mul(index_, o.index_);
  return *this;
}

FieldElement operator-(const FieldElement& a) {
  return FieldElement(a.field_, a.field_.neg(a.index_));
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.index_ == b.index_ && a.field_ == b.field_;
}

std::string to_string(const FieldElement& a) {
  const auto c = a.coeffs();
  std::string out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c[i]);
    } else {
      if (c[i] != 1) out += std::to_string(c[i]) + "*";
      out += "t";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

std::vector<FieldElement> enumerate(const FieldSpec& field) {
  std::vector<FieldElement> out;
  out.reserve(field.q());
  for (std::uint32_t i = 0; i < field.q(); ++i) {
    out.emplace_back(field, static_cast<ElementIndex>(i));
  }
  return out;
}

FieldElement power_sum(const FieldSpec& field, std::uint64_t alpha) {
  ElementIndex sum = 0;
  for (std::uint32_t x = 0; x < field.q(); ++x) {
    sum = field.add(sum, field.pow(static_cast<ElementIndex>(x), alpha));
  }
  return FieldElement(field, sum);
}

}  // namespace toric
