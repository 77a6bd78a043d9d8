#include "toric/count.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <map>
#include <thread>

#include "toric/intmat.hpp"

namespace toric {

namespace {

using Clock = std::chrono::steady_clock;

// Partial evaluation, one variable at a time. Level k holds the coefficients
// of P as a polynomial in x_k..x_{n-1} with x_0..x_{k-1} already fixed;
// fixing x_k merges terms that share the tail exponent (e_{k+1}, ..., e_{n-1}).
struct Compiled {
  struct Level {
    std::vector<std::uint32_t> parent;    // slot of the merged term at level k+1
    std::vector<std::uint32_t> exponent;  // e_k of each term
    std::size_t out_size = 0;
  };

  FieldSpec field;
  int nvars;
  std::uint32_t q;
  std::vector<ElementIndex> coeffs;  // level-0 input, one per term
  std::vector<Level> levels;
  std::uint32_t stride = 1;
  std::vector<ElementIndex> powers;  // powers[a * stride + e] = a^e

  explicit Compiled(const FpPoly& p)
      : field(p.domain().field), nvars(p.nvars()), q(p.domain().field.q()) {
    std::vector<Exponent> tails;
    std::uint32_t max_exp = 0;
    for (const auto& [e, c] : p.terms()) {
      coeffs.push_back(c.index());
      tails.push_back(e);
      for (auto x : e) max_exp = std::max(max_exp, x);
    }
    for (int k = 0; k < nvars; ++k) {
      Level level;
      std::map<Exponent, std::uint32_t> slots;
      std::vector<Exponent> next;
      for (const auto& t : tails) {
        Exponent rest(t.begin() + 1, t.end());
        auto [it, inserted] = slots.try_emplace(rest, static_cast<std::uint32_t>(next.size()));
        if (inserted) next.push_back(rest);
        level.parent.push_back(it->second);
        level.exponent.push_back(t.front());
      }
      level.out_size = next.size();
      levels.push_back(std::move(level));
      tails = std::move(next);
    }
    stride = max_exp + 1;
    powers.resize(std::size_t{q} * stride);
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t e = 0; e < stride; ++e) {
        powers[a * stride + e] = field.pow(static_cast<ElementIndex>(a), e);
      }
    }
  }

  ElementIndex constant_value() const { return coeffs.empty() ? 0 : coeffs.front(); }
};

std::uint64_t checked_power(std::uint64_t base, int e, std::uint64_t cap, const std::string& what) {
  std::uint64_t v = 1;
  for (int i = 0; i < e; ++i) {
    if (v > cap / base) {
      throw Error(ErrorCode::CapExceeded, what + ": " + std::to_string(base) + "^" + std::to_string(e) +
                                              " evaluations exceed the work cap of " +
                                              std::to_string(cap));
    }
    v *= base;
  }
  return v;
}

unsigned resolve_threads(unsigned requested) {
  if (requested) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Depth-first walk over the coordinates. ranges[k] is the half-open range of
// element indices variable k takes; the visitor sees every full assignment
// with its value P(x).
template <typename Visitor>
class Walker {
 public:
  Walker(const Compiled& c, Visitor& visit)
      : c_(c), visit_(visit), x_(c.nvars, 0), buf_(c.nvars + 1) {
    for (int k = 0; k < c.nvars; ++k) buf_[k + 1].resize(c.levels[k].out_size);
    add_ = c.field.add_table();
    mul_ = c.field.mul_table();
  }

  void run(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& ranges) {
    ranges_ = &ranges;
    if (c_.nvars == 0) {
      visit_(x_.data(), c_.constant_value());
      return;
    }
    descend(0, c_.coeffs.data());
  }

 private:
  void descend(int k, const ElementIndex* in) {
    const auto& level = c_.levels[k];
    ElementIndex* out = buf_[k + 1].data();
    const std::size_t n = level.parent.size();
    const std::uint32_t q = c_.q;
    const auto [lo, hi] = (*ranges_)[k];
    for (std::uint32_t a = lo; a < hi; ++a) {
      std::fill(out, out + level.out_size, ElementIndex{0});
      const ElementIndex* pw = c_.powers.data() + std::size_t{a} * c_.stride;
      for (std::size_t i = 0; i < n; ++i) {
        if (in[i] == 0) continue;
        const ElementIndex t = mul_[std::size_t{in[i]} * q + pw[level.exponent[i]]];
        ElementIndex& slot = out[level.parent[i]];
        slot = add_[std::size_t{slot} * q + t];
      }
      x_[k] = static_cast<ElementIndex>(a);
      if (k + 1 == c_.nvars) {
        visit_(x_.data(), level.out_size ? out[0] : ElementIndex{0});
      } else {
        descend(k + 1, out);
      }
    }
  }

  const Compiled& c_;
  Visitor& visit_;
  std::vector<ElementIndex> x_;
  std::vector<std::vector<ElementIndex>> buf_;
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>* ranges_ = nullptr;
  const ElementIndex* add_;
  const ElementIndex* mul_;
};

// Splits the odometer into prefix blocks and sums visitor totals. Each block
// gets a fresh copy of `proto`; the result is the same for any thread count.
template <typename Visitor>
std::uint64_t sweep(const Compiled& c, std::uint64_t zero_mask, unsigned threads, const Visitor& proto) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> base(c.nvars);
  for (int k = 0; k < c.nvars; ++k) {
    base[k] = (zero_mask >> k) & 1 ? std::pair<std::uint32_t, std::uint32_t>{0, 1}
                                   : std::pair<std::uint32_t, std::uint32_t>{0, c.q};
  }
  threads = resolve_threads(threads);
  int depth = 0;
  std::uint64_t blocks = 1;
  if (threads > 1) {
    while (depth < c.nvars && blocks < 16ull * threads) {
      blocks *= base[depth].second - base[depth].first;
      ++depth;
    }
  }

  auto run_block = [&](std::uint64_t b) {
    auto ranges = base;
    for (int k = depth - 1; k >= 0; --k) {
      const std::uint64_t width = base[k].second - base[k].first;
      const auto v = static_cast<std::uint32_t>(base[k].first + b % width);
      b /= width;
      ranges[k] = {v, v + 1};
    }
    Visitor v = proto;
    Walker<Visitor>(c, v).run(ranges);
    return v.total;
  };

  if (threads <= 1 || blocks <= 1) return run_block(0);

  std::atomic<std::uint64_t> next{0};
  std::vector<std::uint64_t> partial(threads, 0);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::uint64_t b; (b = next.fetch_add(1)) < blocks;) partial[t] += run_block(b);
    });
  }
  for (auto& th : pool) th.join();
  std::uint64_t total = 0;
  for (auto v : partial) total += v;
  return total;
}

struct ZeroCounter {
  std::uint64_t total = 0;
  void operator()(const ElementIndex*, ElementIndex value) { total += value == 0; }
};

struct OrbitCounter {
  const ExceptionalSet* z;
  const std::vector<std::vector<ElementIndex>>* scales;  // one row per group element
  const ElementIndex* mul;
  std::uint32_t q;
  int rho;
  std::uint64_t total = 0;

  void operator()(const ElementIndex* x, ElementIndex value) {
    if (value != 0) return;
    std::uint64_t mask = 0;
    for (int i = 0; i < rho; ++i) mask |= std::uint64_t{x[i] == 0} << i;
    if (z->contains(mask)) return;
    for (const auto& s : *scales) {
      for (int i = 0; i < rho; ++i) {
        const ElementIndex y = mul[std::size_t{s[i]} * q + x[i]];
        if (y < x[i]) return;  // a smaller point in the orbit
        if (y > x[i]) break;
      }
    }
    ++total;
  }
};

std::uint32_t free_count(int nvars, std::uint64_t zero_mask) {
  std::uint32_t n = 0;
  for (int k = 0; k < nvars; ++k) n += !((zero_mask >> k) & 1);
  return n;
}

void require_torsion_free(const ToricModel& model) {
  if (!model.grading.torsion_free()) {
    throw Error(ErrorCode::TorsionClassGroup,
                model.name + ": class group has torsion; the quotient is not a free torus quotient");
  }
}

void require_arity(const FpPoly& p, const ToricModel& model) {
  if (p.nvars() != model.rho()) {
    throw Error(ErrorCode::ArityMismatch, "polynomial in " + std::to_string(p.nvars()) +
                                              " variables, " + model.name + " has " +
                                              std::to_string(model.rho()) + " rays");
  }
}

Integer q_minus_one_power(std::uint32_t q, int r) {
  Integer v = 1;
  for (int i = 0; i < r; ++i) v *= q - 1;
  return v;
}

CongruenceReport base_report(CongruenceKind kind, const FpPoly& p) {
  CongruenceReport r;
  r.kind = kind;
  const auto& field = p.domain().field;
  r.q = field.q();
  r.p = field.p();
  r.f = field.f();
  r.field = field.name();
  r.polynomial = to_string(p);
  return r;
}

std::string grading_text(const GradingData& g) {
  std::string s = "[";
  for (int i = 0; i < g.rho(); ++i) {
    if (i) s += ",";
    s += degree_string(g.weights.row(i).transpose());
  }
  return s + "]";
}

void finish(CongruenceReport& r, const Integer& checked, Clock::time_point start) {
  r.residue = checked % r.modulus;
  if (r.residue < 0) r.residue += r.modulus;
  r.pass = r.residue == r.expected % r.modulus;
  r.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
}

std::int64_t ceil_ratio(std::int64_t a, std::int64_t b) { return -floor_div<std::int64_t>(-a, b); }

}  // namespace

CountOptions default_count_options() {
  CountOptions opts;
  if (const char* env = std::getenv("TORIC_WORK_CAP")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) opts.work_cap = v;
  }
  return opts;
}

Integer restricted_count(const FpPoly& p, std::uint64_t zero_mask, const CountOptions& opts) {
  if (p.nvars() > 63) throw Error(ErrorCode::CapExceeded, "too many variables");
  const Compiled c(p);
  checked_power(c.q, static_cast<int>(free_count(p.nvars(), zero_mask)), opts.work_cap, "affine count");
  return Integer(sweep(c, zero_mask, opts.threads, ZeroCounter{}));
}

Integer affine_count(const FpPoly& p, const CountOptions& opts) { return restricted_count(p, 0, opts); }

Integer exceptional_on_hypersurface(const FpPoly& p, const ExceptionalSet& z, const CountOptions& opts) {
  const std::size_t m = z.strata.size();
  if (m > 20) throw Error(ErrorCode::CapExceeded, "too many strata for inclusion-exclusion");
  std::vector<std::uint64_t> masks;
  for (const auto& s : z.strata) {
    std::uint64_t mask = 0;
    for (int i : s) mask |= std::uint64_t{1} << i;
    masks.push_back(mask);
  }
  std::map<std::uint64_t, Integer> cache;
  Integer total = 0;
  for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << m); ++subset) {
    std::uint64_t mask = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if ((subset >> j) & 1) mask |= masks[j];
    }
    auto it = cache.find(mask);
    if (it == cache.end()) it = cache.emplace(mask, restricted_count(p, mask, opts)).first;
    if (std::popcount(subset) % 2) {
      total += it->second;
    } else {
      total -= it->second;
    }
  }
  return total;
}

Integer toric_count_quotient(const FpPoly& p, const ToricModel& model, const CountOptions& opts) {
  require_arity(p, model);
  require_torsion_free(model);
  if (!p.is_zero()) multidegree(p, model.grading);
  const Integer num = affine_count(p, opts) - exceptional_on_hypersurface(p, model.exceptional, opts);
  const Integer den = q_minus_one_power(p.domain().field.q(), model.grading.rank());
  if (num % den != 0) {
    throw Error(ErrorCode::NonIntegralQuotient, num.str() + " is not divisible by " + den.str() +
                                                    "; the torus does not act freely on " + model.name);
  }
  return num / den;
}

Integer toric_count_orbits(const FpPoly& p, const ToricModel& model, const CountOptions& opts) {
  require_arity(p, model);
  require_torsion_free(model);
  if (!p.is_zero()) multidegree(p, model.grading);
  const auto& field = p.domain().field;
  const std::uint32_t q = field.q();
  const int r = model.grading.rank();
  const int rho = model.rho();

  const Integer solutions = affine_count(p, opts);
  if (solutions * q_minus_one_power(q, r) > opts.work_cap) {
    throw Error(ErrorCode::CapExceeded, "orbit enumeration: " + solutions.str() + " solutions times (q-1)^" +
                                            std::to_string(r) + " exceeds the work cap");
  }

  // scales[g][i] = prod_j mu_j^{A_ij} for every mu in (F_q^*)^r.
  std::vector<std::vector<ElementIndex>> scales;
  std::vector<ElementIndex> mu(r, 1);
  for (;;) {
    std::vector<ElementIndex> s(rho, 1);
    for (int i = 0; i < rho; ++i) {
      for (int j = 0; j < r; ++j) {
        const auto w = model.grading.weights(i, j);
        const ElementIndex base = w < 0 ? field.inv(mu[j]) : mu[j];
        s[i] = field.mul(s[i], field.pow(base, static_cast<std::uint64_t>(w < 0 ? -w : w)));
      }
    }
    scales.push_back(std::move(s));
    int j = 0;
    while (j < r && mu[j] == q - 1) mu[j++] = 1;
    if (j == r) break;
    ++mu[j];
  }

  const Compiled c(p);
  OrbitCounter proto{&model.exceptional, &scales, field.mul_table(), q, rho};
  return Integer(sweep(c, 0, opts.threads, proto));
}

std::string to_string(CongruenceKind kind) {
  switch (kind) {
    case CongruenceKind::ChevalleyWarning: return "CW";
    case CongruenceKind::ChevalleyWarningProjective: return "CW-projective";
    case CongruenceKind::Ax: return "Ax";
    case CongruenceKind::Esnault: return "Esnault";
  }
  return "?";
}

CongruenceReport check_cw(const FpPoly& p, const GradingData& g, const CountOptions& opts) {
  const auto start = Clock::now();
  if (!g.effective()) throw Error(ErrorCode::NonEffectiveGrading, "grading has negative weights");
  const MultiDegree d = multidegree(p, g);
  const MultiDegree a = total_generator_degree(g);
  if (!(d.array() < a.array()).any()) {
    throw Error(ErrorCode::HypothesisNotMet, "degree " + degree_string(d) + " is not below " +
                                                 degree_string(a) + " in any component");
  }
  auto r = base_report(CongruenceKind::ChevalleyWarning, p);
  r.grading = grading_text(g);
  r.degree.assign(d.data(), d.data() + d.size());
  r.n_affine = affine_count(p, opts);
  r.modulus = r.p;
  r.expected = 0;
  finish(r, r.n_affine, start);
  return r;
}

CongruenceReport check_cw_projective(const FpPoly& p, const CountOptions& opts) {
  const auto start = Clock::now();
  const GradingData g = standard_grading(p.nvars());
  const MultiDegree d = multidegree(p, g);
  const int n = p.nvars() - 1;
  if (d[0] > n) {
    throw Error(ErrorCode::HypothesisNotMet, "degree " + std::to_string(d[0]) + " exceeds n = " +
                                                 std::to_string(n));
  }
  auto r = base_report(CongruenceKind::ChevalleyWarningProjective, p);
  r.grading = grading_text(g);
  r.degree = {d[0]};
  r.n_affine = affine_count(p, opts);
  r.n_exceptional = 1;
  const Integer num = r.n_affine - 1;
  if (num % (r.q - 1) != 0) {
    throw Error(ErrorCode::NonIntegralQuotient, num.str() + " is not divisible by q-1");
  }
  r.n_toric = num / (r.q - 1);
  r.modulus = r.p;
  r.expected = 1;
  finish(r, *r.n_toric, start);
  return r;
}

CongruenceReport check_ax(const FpPoly& p, const GradingData& g, const CountOptions& opts) {
  const auto start = Clock::now();
  if (!g.effective()) throw Error(ErrorCode::NonEffectiveGrading, "grading has negative weights");
  const MultiDegree d = multidegree(p, g);
  const AxExponent ax = ax_exponent(g, d);
  auto r = base_report(CongruenceKind::Ax, p);
  r.grading = grading_text(g);
  r.degree.assign(d.data(), d.data() + d.size());
  r.mu = ax.mu;
  r.excluded_components = ax.excluded_components;
  const auto total = static_cast<std::int64_t>(p.total_degree());
  if (total > 0) r.classical_mu = std::max<std::int64_t>(0, ceil_ratio(p.nvars() - total, total));
  r.n_affine = affine_count(p, opts);
  r.modulus = 1;
  for (std::int64_t i = 0; i < ax.mu; ++i) r.modulus *= r.q;
  r.expected = 0;
  finish(r, r.n_affine, start);
  return r;
}

CongruenceReport check_esnault(const QuinticInstance& inst, const CountOptions& opts) {
  const auto start = Clock::now();
  const FpPoly p = strict_transform(inst);
  const ToricModel model = builtin_model("blowup_p4_line");
  auto r = base_report(CongruenceKind::Esnault, p);
  r.grading = grading_text(model.grading);
  const MultiDegree d = multidegree(p, model.grading);
  r.degree.assign(d.data(), d.data() + d.size());
  r.mu = ax_exponent(model.grading, d).mu;
  r.n_affine = affine_count(p, opts);
  r.n_exceptional = exceptional_on_hypersurface(p, model.exceptional, opts);
  const Integer num = r.n_affine - r.n_exceptional;
  const Integer den = q_minus_one_power(r.q, model.grading.rank());
  if (num % den != 0) {
    throw Error(ErrorCode::NonIntegralQuotient, num.str() + " is not divisible by " + den.str());
  }
  r.n_toric = num / den;
  r.affine_divisible_by_q = r.n_affine % r.q == 0;
  r.modulus = r.q;
  r.expected = 1;
  finish(r, *r.n_toric, start);
  return r;
}

}  // namespace toric
