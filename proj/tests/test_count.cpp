#include <doctest.h>

#include <random>

#include "oracles.hpp"

using namespace toric;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IdentityViolated;
}

FieldSpec field_q(std::uint32_t q) { return parse_field("GF(" + std::to_string(q) + ")"); }

FpPoly poly(const std::string& text, int n, const FieldSpec& f) { return parse(text, n, FieldDomain{f}); }

// Random homogeneous polynomials of a few degrees for a model.
std::vector<MultiDegree> degrees_for(const std::string& name) {
  auto deg = [](std::initializer_list<std::int64_t> v) {
    MultiDegree d(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (auto x : v) d[i++] = x;
    return d;
  };
  if (name == "blowup_p2") return {deg({1, 1}), deg({2, 1}), deg({1, 2})};
  if (name == "blowup_p4_line") return {deg({5, 2}), deg({2, 1}), deg({3, 1})};
  return {deg({1}), deg({2}), deg({3})};
}

}  // namespace

TEST_CASE("affine count examples") {
  const FieldSpec f3 = field_q(3), f2 = field_q(2);
  CHECK(affine_count(poly("x0^2 + x1^2", 2, f3)) == 1);
  CHECK(affine_count(poly("x0*x1 + x2*x3", 4, f2)) == 10);
  CHECK(affine_count(FpPoly(FieldDomain{f3}, 4)) == 81);
  CHECK(affine_count(poly("1", 3, f3)) == 0);
  CHECK(affine_count(FpPoly::constant(FieldDomain{f3}, 0, f3.zero())) == 1);
}

TEST_CASE("affine count agrees with pointwise evaluation") {
  std::mt19937_64 rng(2024);
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    const FieldSpec field = field_q(q);
    for (const char* name : {"projective(3)", "blowup_p2", "blowup_p4_line"}) {
      const ToricModel m = builtin_model(name);
      for (const auto& d : degrees_for(name)) {
        const FpPoly p = random_homogeneous(field, m.grading, d, rng);
        CHECK(affine_count(p) == oracle::count_zeros(p));
      }
    }
    // Non-homogeneous, with a repeated variable tail.
    const FpPoly p = poly("x0^3*x2 + x1*x2 + x0 + 1", 3, field);
    CHECK(affine_count(p) == oracle::count_zeros(p));
  }
}

TEST_CASE("partition independence") {
  std::mt19937_64 rng(7);
  const FieldSpec f5 = field_q(5);
  const ToricModel m = builtin_model("blowup_p4_line");
  const FpPoly p = random_homogeneous(f5, m.grading, degrees_for("blowup_p4_line")[0], rng);
  CountOptions single;
  single.threads = 1;
  const Integer reference = affine_count(p, single);
  for (unsigned k = 2; k <= 8; ++k) {
    CountOptions opts;
    opts.threads = k;
    CHECK(affine_count(p, opts) == reference);
    CHECK(toric_count_orbits(p, m, opts) == toric_count_orbits(p, m, single));
  }
}

TEST_CASE("work cap") {
  CountOptions tight;
  tight.work_cap = 100;
  CHECK(code_of([&] { affine_count(poly("x0", 5, field_q(3)), tight); }) == ErrorCode::CapExceeded);
  CHECK(affine_count(poly("x0", 4, field_q(3)), tight) == 27);
}

TEST_CASE("exceptional points on the hypersurface") {
  std::mt19937_64 rng(99);
  for (std::uint32_t q : {2u, 3u}) {
    const FieldSpec field = field_q(q);
    for (const char* name : {"projective(2)", "blowup_p2", "blowup_p4_line"}) {
      const ToricModel m = builtin_model(name);
      for (const auto& d : degrees_for(name)) {
        const FpPoly p = random_homogeneous(field, m.grading, d, rng);
        CHECK(exceptional_on_hypersurface(p, m.exceptional) == oracle::count_zeros_in(p, m.exceptional));
      }
      const FpPoly zero(FieldDomain{field}, m.rho());
      CHECK(exceptional_on_hypersurface(zero, m.exceptional) == count_exceptional(m.exceptional, m.rho(), field));
    }
  }
  // x0 + x1 on blowup_p2 vanishes on the stratum {x0 = x1 = 0} only.
  const ToricModel b = builtin_model("blowup_p2");
  const FpPoly p = poly("x0 + x1", 4, field_q(2));
  CHECK(exceptional_on_hypersurface(p, b.exceptional) == oracle::count_zeros_in(p, b.exceptional));
}

TEST_CASE("quotient and orbit counts") {
  const FieldSpec f3 = field_q(3);
  const ToricModel p2 = builtin_model("projective(2)");
  CHECK(toric_count_quotient(poly("x0", 3, f3), p2) == 4);
  CHECK(toric_count_orbits(poly("x0", 3, f3), p2) == 4);
  CHECK(toric_count_quotient(poly("x0", 3, field_q(5)), p2) == 6);

  for (std::uint32_t q : {2u, 3u, 4u}) {
    const FieldSpec field = field_q(q);
    const ToricModel m = builtin_model("blowup_p4_line");
    const FpPoly zero(FieldDomain{field}, 6);
    const Integer full = (q * q + q + 1) * (q * q + q + 1);
    CHECK(toric_count_quotient(zero, m) == full);
    CHECK(toric_count_orbits(zero, m) == full);
    const ToricModel b = builtin_model("blowup_p2");
    CHECK(toric_count_orbits(FpPoly(FieldDomain{field}, 4), b) == q * q + 2 * q + 1);
  }
}

TEST_CASE("decomposition N_affine = N_exc + (q-1)^r * orbits") {
  std::mt19937_64 rng(314);
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const FieldSpec field = field_q(q);
    for (const char* name : {"projective(2)", "projective(3)", "blowup_p2", "blowup_p4_line"}) {
      const ToricModel m = builtin_model(name);
      for (const auto& d : degrees_for(name)) {
        const FpPoly p = random_homogeneous(field, m.grading, d, rng);
        Integer scale = 1;
        for (int j = 0; j < m.grading.rank(); ++j) scale *= q - 1;
        const Integer orbits = toric_count_orbits(p, m);
        CHECK(affine_count(p) == exceptional_on_hypersurface(p, m.exceptional) + scale * orbits);
        CHECK(orbits == toric_count_quotient(p, m));
      }
    }
  }
}

TEST_CASE("solutions are closed under the torus, exhaustively for q <= 3") {
  std::mt19937_64 rng(8);
  const ToricModel m = builtin_model("blowup_p4_line");
  for (std::uint32_t q : {2u, 3u}) {
    const FieldSpec field = field_q(q);
    const FpPoly p = random_homogeneous(field, m.grading, degrees_for("blowup_p4_line")[0], rng);
    std::vector<FieldElement> units;
    for (const auto& e : enumerate(field)) {
      if (!e.is_zero()) units.push_back(e);
    }
    for (const auto& x : oracle::all_points(field, 6)) {
      const bool zero = evaluate(p, x).is_zero();
      for (const auto& a : units) {
        for (const auto& b : units) CHECK(evaluate(p, act(m.grading, {a, b}, x)).is_zero() == zero);
      }
    }
  }
}

TEST_CASE("torsion and non-free actions are rejected") {
  Fan fan;
  fan.dim = 2;
  fan.rays.resize(3, 2);
  fan.rays << -1, -1, 2, -1, -1, 2;
  fan.max_cones = {{0, 1}, {1, 2}, {0, 2}};
  const ToricModel torsion = model_from_fan("torsion", fan);
  CHECK(code_of([&] { toric_count_quotient(poly("x0", 3, field_q(4)), torsion); }) ==
        ErrorCode::TorsionClassGroup);

  // P(1,2) over F_3: (0, x1) is fixed by mu = -1, so the quotient formula
  // undercounts the orbits.
  const ToricModel w = builtin_model("weighted(1,2)");
  const FpPoly zero(FieldDomain{field_q(3)}, 2);
  CHECK(toric_count_quotient(zero, w) == 4);
  CHECK(toric_count_orbits(zero, w) == 5);
}

TEST_CASE("Chevalley-Warning") {
  const FieldSpec f3 = field_q(3);
  for (int n = 2; n <= 4; ++n) {
    for (int d = 1; d <= n; ++d) {
      const FpPoly p = poly("x0^" + std::to_string(d), n + 1, f3);
      const CongruenceReport r = check_cw(p, standard_grading(n + 1));
      CHECK(r.n_affine == boost::multiprecision::pow(Integer(3), n));
      CHECK(r.pass);
    }
  }
  std::mt19937_64 rng(3);
  MultiDegree three(1);
  three << 3;
  for (int i = 0; i < 50; ++i) {
    const FpPoly p = random_homogeneous(f3, standard_grading(5), three, rng);
    const CongruenceReport r = check_cw(p, standard_grading(5));
    CHECK(r.n_affine == oracle::count_zeros(p));
    CHECK(r.residue == 0);
    CHECK(r.pass);
  }
  CHECK(code_of([&] { check_cw(poly("x0^3", 3, f3), standard_grading(3)); }) == ErrorCode::HypothesisNotMet);
  CHECK(code_of([&] { check_cw(poly("x0 + x1^2", 3, f3), standard_grading(3)); }) == ErrorCode::NotHomogeneous);
}

TEST_CASE("projective corollary") {
  for (std::uint32_t q : {2u, 3u, 5u}) {
    const CongruenceReport r = check_cw_projective(poly("x0", 3, field_q(q)));
    CHECK(*r.n_toric == q + 1);
    CHECK(r.pass);
  }
  const CongruenceReport fermat = check_cw_projective(poly("x0^3 + x1^3 + x2^3 + x3^3", 4, field_q(2)));
  CHECK(fermat.n_affine == oracle::count_zeros(poly("x0^3 + x1^3 + x2^3 + x3^3", 4, field_q(2))));
  CHECK(fermat.pass);
  std::mt19937_64 rng(12);
  MultiDegree two(1);
  two << 2;
  const FpPoly conic = random_homogeneous(field_q(3), standard_grading(4), two, rng);
  CHECK(check_cw_projective(conic).pass);
  CHECK(code_of([&] { check_cw_projective(poly("x0^3", 3, field_q(3))); }) == ErrorCode::HypothesisNotMet);
}

TEST_CASE("Ax") {
  const CongruenceReport quad = check_ax(poly("x0*x1 + x2*x3", 4, field_q(2)), standard_grading(4));
  CHECK(*quad.mu == 1);
  CHECK(quad.n_affine == 10);
  CHECK(quad.pass);

  const ToricModel m = builtin_model("blowup_p4_line");
  std::mt19937_64 rng(4);
  MultiDegree d(2);
  d << 5, 2;
  for (int i = 0; i < 10; ++i) {
    const CongruenceReport r = check_ax(random_homogeneous(field_q(4), m.grading, d, rng), m.grading);
    CHECK(*r.mu == 1);
    CHECK(r.modulus == 4);
    CHECK(r.pass);
  }
  // mu = 0 is vacuous.
  const CongruenceReport cubic = check_ax(poly("x0^3 + x1^3", 2, field_q(2)), standard_grading(2));
  CHECK(*cubic.mu == 0);
  CHECK(cubic.pass);
}

TEST_CASE("Esnault on the quintic with a triple line") {
  const FieldSpec f2 = field_q(2);
  const QuinticInstance inst{f2, poly("x0^3 + x1^3 + x2^3", 3, f2), poly("x0*x1*x2", 3, f2),
                             poly("x0^4 + x1^4 + x2^4", 3, f2), std::nullopt};
  const CongruenceReport r = check_esnault(inst);
  const FpPoly strict = strict_transform(inst);
  CHECK(r.n_affine == oracle::count_zeros(strict));
  CHECK(r.n_exceptional == 15);
  CHECK(*r.n_toric == r.n_affine - 15);
  CHECK(*r.mu == 1);
  CHECK(r.pass);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const CongruenceReport e = check_esnault(random_instance(field_q(3), seed));
    CHECK(e.n_exceptional == 2 * 27 - 1);
    CHECK(e.pass);
    CHECK(*e.affine_divisible_by_q);
  }
}
