#include <doctest.h>

#include "oracles.hpp"
#include "toric/intmat.hpp"

using namespace toric;

namespace {

IntMatrix weights(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (auto v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IdentityViolated;
}

// Every row combination sum_i A_ij n_i must vanish: the weights are relations among the rays.
bool annihilates(const Fan& fan, const IntMatrix& w) { return (w.transpose() * fan.rays).isZero(); }

}  // namespace

TEST_CASE("smith normal form") {
  IntMatrix m(3, 2);
  m << -1, -1, 2, -1, -1, 2;
  const auto snf = smith_normal_form<std::int64_t>(m);
  CHECK(snf.U * m * snf.V == snf.D);
  CHECK(snf.D(0, 0) == 1);
  CHECK(snf.D(1, 1) == 3);
  CHECK(std::abs(integer_determinant<std::int64_t>(snf.U)) == 1);
  CHECK(std::abs(integer_determinant<std::int64_t>(snf.V)) == 1);
}

TEST_CASE("projective space") {
  for (int d = 1; d <= 5; ++d) {
    const Fan fan = projective_fan(d);
    validate(fan);
    const auto prim = primitive_collections(fan);
    REQUIRE(prim.size() == 1);
    CHECK(prim[0].size() == static_cast<std::size_t>(d + 1));
    const GradingData g = grading_from_fan(fan);
    CHECK(g.weights == IntMatrix::Ones(d + 1, 1));
    CHECK(g.torsion_free());
  }
}

TEST_CASE("blowup of P^2 at a point") {
  const Fan fan = blowup_p2_fan();
  validate(fan);
  CHECK(primitive_collections(fan) == std::vector<IndexSet>{{0, 1}, {2, 3}});
  const GradingData g = grading_from_fan(fan);
  CHECK(annihilates(fan, g.weights));
  CHECK(same_column_lattice<std::int64_t>(g.weights, weights({{1, 0}, {1, 0}, {1, 1}, {0, 1}})));
  CHECK(g.effective());
}

TEST_CASE("blowup of P^4 along a line") {
  const Fan fan = blowup_p4_line_fan();
  validate(fan);
  CHECK(fan.max_cones.size() == 9);
  CHECK(primitive_collections(fan) == std::vector<IndexSet>{{0, 4, 5}, {1, 2, 3}});
  const GradingData g = grading_from_fan(fan, true);
  const IntMatrix expected = weights({{1, 1}, {1, 0}, {1, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(annihilates(fan, g.weights));
  CHECK(same_column_lattice<std::int64_t>(g.weights, expected));
  CHECK(g.weights == expected);
}

TEST_CASE("exceptional set counts match pointwise membership") {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const FieldSpec field = parse_field("GF(" + std::to_string(q) + ")");
    for (const char* name : {"projective(2)", "projective(3)", "blowup_p2", "blowup_p4_line"}) {
      const ToricModel m = builtin_model(name);
      CHECK(count_exceptional(m.exceptional, m.rho(), field) ==
            oracle::count_points_in(m.exceptional, m.rho(), field));
    }
    // #Z = 2 q^3 - 1 on the blowup of P^4.
    CHECK(count_exceptional(blowup_p4_line_fan(), field) == 2 * q * q * q - 1);
  }
}

TEST_CASE("torsion in the class group") {
  Fan fan;
  fan.dim = 2;
  fan.rays.resize(3, 2);
  fan.rays << -1, -1, 2, -1, -1, 2;
  fan.max_cones = {{0, 1}, {1, 2}, {0, 2}};
  validate(fan);
  const GradingData g = grading_from_fan(fan);
  CHECK(g.torsion == std::vector<std::int64_t>{3});
  CHECK(g.rank() == 1);
  CHECK(code_of([&] { grading_from_fan(fan, true); }) == ErrorCode::TorsionClassGroup);
}

TEST_CASE("invalid fans") {
  Fan bad;
  bad.dim = 2;
  bad.rays.resize(3, 2);
  bad.rays << 2, 0, 0, 1, -1, -1;
  bad.max_cones = {{0, 1}, {1, 2}, {0, 2}};
  CHECK(code_of([&] { validate(bad); }) == ErrorCode::NonPrimitiveRay);

  Fan nonsimplicial;
  nonsimplicial.dim = 2;
  nonsimplicial.rays.resize(3, 2);
  nonsimplicial.rays << 1, 0, 1, 1, 0, 1;
  nonsimplicial.max_cones = {{0, 1, 2}};
  CHECK(code_of([&] { validate(nonsimplicial); }) == ErrorCode::NonSimplicialFan);

  Fan out_of_range = projective_fan(2);
  out_of_range.max_cones.push_back({0, 7});
  CHECK(code_of([&] { validate(out_of_range); }) == ErrorCode::InvalidFan);
}

TEST_CASE("fan text format") {
  const Fan fan = parse_fan(
      "# blowup of P^2\n"
      "dim 2\n"
      "ray 1 0\nray 0 1\nray -1 -1\nray 1 1\n"
      "cone 0 2\ncone 1 2\ncone 0 3\ncone 1 3\n");
  CHECK(fan.rays == blowup_p2_fan().rays);
  CHECK(fan.max_cones == blowup_p2_fan().max_cones);
  CHECK(code_of([] { parse_fan("dim 2\nray 1 0 0\n"); }) != ErrorCode::IdentityViolated);
}

TEST_CASE("builtin names") {
  CHECK(builtin_model("projective(3)").rho() == 4);
  const ToricModel w = builtin_model("weighted(1,1,1,1,1,2)");
  CHECK(w.rho() == 6);
  CHECK(w.grading.weights(5, 0) == 2);
  CHECK(code_of([] { builtin_model("nonsense"); }) == ErrorCode::InvalidParams);
  CHECK(code_of([] { builtin_model("projective(x)"); }) == ErrorCode::InvalidParams);
}
