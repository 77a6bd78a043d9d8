#include "toric/quintic.hpp"

#include <random>

namespace toric {

namespace {

FpPoly embed_ternary(const FpPoly& form, int nvars) {
  const FieldDomain dom = form.domain();
  return substitute(form, {FpPoly::variable(dom, nvars, 1), FpPoly::variable(dom, nvars, 2),
                           FpPoly::variable(dom, nvars, 3)});
}

bool is_ternary_form(const FpPoly& p, const FieldSpec& field, std::uint32_t degree) {
  if (p.nvars() != 3 || !(p.domain().field == field)) return false;
  for (const auto& [e, c] : p.terms()) {
    if (e[0] + e[1] + e[2] != degree) return false;
  }
  return true;
}

FpPoly random_form(const FieldSpec& field, std::uint32_t degree, std::mt19937_64& rng) {
  FpPoly p(FieldDomain{field}, 3);
  for (const auto& m : ternary_monomials(degree)) {
    p.add_term(m, field.element(static_cast<ElementIndex>(rng() % field.q())));
  }
  return p;
}

nlohmann::json coefficient_array(const FpPoly& p, std::uint32_t degree) {
  auto arr = nlohmann::json::array();
  for (const auto& m : ternary_monomials(degree)) arr.push_back(p.coefficient(m).index());
  return arr;
}

FpPoly form_from_array(const FieldSpec& field, const nlohmann::json& arr, std::uint32_t degree) {
  const auto monos = ternary_monomials(degree);
  if (!arr.is_array() || arr.size() != monos.size()) {
    throw Error(ErrorCode::InvalidParams, "expected " + std::to_string(monos.size()) +
                                              " coefficients for a degree-" +
                                              std::to_string(degree) + " form");
  }
  FpPoly p(FieldDomain{field}, 3);
  for (std::size_t i = 0; i < monos.size(); ++i) {
    const auto v = arr[i].get<std::int64_t>();
    if (v < 0 || v >= static_cast<std::int64_t>(field.q())) {
      throw Error(ErrorCode::InvalidParams, "coefficient index out of range");
    }
    p.add_term(monos[i], field.element(static_cast<ElementIndex>(v)));
  }
  return p;
}

}  // namespace

std::vector<Exponent> ternary_monomials(std::uint32_t degree) {
  std::vector<Exponent> out;
  // degrevlex: smaller x3 power first, then smaller x2 power.
  for (std::uint32_t c = 0; c <= degree; ++c) {
    for (std::uint32_t b = 0; b + c <= degree; ++b) {
      out.push_back({degree - b - c, b, c});
    }
  }
  return out;
}

void validate(const QuinticInstance& inst) {
  if (!is_ternary_form(inst.p3, inst.field, 3)) throw Error(ErrorCode::InvalidParams, "P3 must be a ternary cubic");
  if (!is_ternary_form(inst.q3, inst.field, 3)) throw Error(ErrorCode::InvalidParams, "Q3 must be a ternary cubic");
  if (!is_ternary_form(inst.q4, inst.field, 4)) throw Error(ErrorCode::InvalidParams, "Q4 must be a ternary quartic");
  if (inst.p3.is_zero() && inst.q3.is_zero() && inst.q4.is_zero()) {
    throw Error(ErrorCode::InvalidParams, "P3, Q3 and Q4 are all zero");
  }
}

FpPoly ambient_quintic(const QuinticInstance& inst) {
  validate(inst);
  const FieldDomain dom{inst.field};
  const auto x0 = FpPoly::variable(dom, 5, 0);
  const auto x4 = FpPoly::variable(dom, 5, 4);
  return x0 * x0 * embed_ternary(inst.p3, 5) + x0 * x4 * embed_ternary(inst.q3, 5) +
         x4 * embed_ternary(inst.q4, 5);
}

FpPoly strict_transform(const QuinticInstance& inst) {
  validate(inst);
  const FieldDomain dom{inst.field};
  const auto x0 = FpPoly::variable(dom, 6, 0);
  const auto x4 = FpPoly::variable(dom, 6, 4);
  const auto x5 = FpPoly::variable(dom, 6, 5);
  return x0 * x0 * embed_ternary(inst.p3, 6) + x0 * x4 * embed_ternary(inst.q3, 6) +
         x4 * x5 * embed_ternary(inst.q4, 6);
}

std::vector<FpPoly> blowdown_images(const FieldSpec& field) {
  const FieldDomain dom{field};
  std::vector<FpPoly> x;
  for (int i = 0; i < 6; ++i) x.push_back(FpPoly::variable(dom, 6, i));
  return blowdown(x);
}

PullbackCheck pullback_identity_check(const QuinticInstance& inst, std::size_t trials,
                                      std::uint64_t seed) {
  PullbackCheck out;
  const FpPoly ambient = ambient_quintic(inst);
  const FpPoly strict = strict_transform(inst);
  const auto x5 = FpPoly::variable(FieldDomain{inst.field}, 6, 5);
  const FpPoly pulled = substitute(ambient, blowdown_images(inst.field));
  out.symbolic = (pulled - x5.pow(3) * strict).is_zero();

  std::mt19937_64 rng(seed);
  const auto& field = inst.field;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<FieldElement> point;
    for (int i = 0; i < 6; ++i) point.push_back(field.element(static_cast<ElementIndex>(rng() % field.q())));
    const auto lhs = evaluate(ambient, blowdown(point));
    const auto rhs = point[5].pow(3) * evaluate(strict, point);
    ++out.trials;
    if (!(lhs == rhs)) {
      out.counterexample = point;
      break;
    }
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 finalizer
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

QuinticInstance random_instance(const FieldSpec& field, std::uint64_t seed, NonzeroPolicy policy) {
  std::mt19937_64 rng(seed);
  for (;;) {
    QuinticInstance inst{field, random_form(field, 3, rng), random_form(field, 3, rng),
                         random_form(field, 4, rng), seed};
    const bool any = !(inst.p3.is_zero() && inst.q3.is_zero() && inst.q4.is_zero());
    const bool ok = policy == NonzeroPolicy::P3Nonzero ? !inst.p3.is_zero() : any;
    if (ok) return inst;
  }
}

nlohmann::ordered_json to_json(const QuinticInstance& inst) {
  nlohmann::ordered_json j;
  j["field"] = {{"p", inst.field.p()}, {"f", inst.field.f()}, {"modulus", inst.field.modulus()}};
  j["monomial_order"] = "degrevlex(x1,x2,x3)";
  j["P3"] = coefficient_array(inst.p3, 3);
  j["Q3"] = coefficient_array(inst.q3, 3);
  j["Q4"] = coefficient_array(inst.q4, 4);
  j["seed"] = inst.seed ? nlohmann::json(*inst.seed) : nlohmann::json(nullptr);
  return j;
}

QuinticInstance instance_from_json(const nlohmann::json& j) {
  try {
    const auto& jf = j.at("field");
    const auto p = jf.at("p").get<std::uint32_t>();
    const auto f = jf.at("f").get<std::uint32_t>();
    FieldSpec field = make_field(p, f);
    if (jf.contains("modulus") && jf.at("modulus").get<std::vector<std::uint32_t>>() != field.modulus()) {
      field = FieldSpec::with_modulus(p, jf.at("modulus").get<std::vector<std::uint32_t>>());
    }
    QuinticInstance inst{field, form_from_array(field, j.at("P3"), 3),
                         form_from_array(field, j.at("Q3"), 3), form_from_array(field, j.at("Q4"), 4),
                         std::nullopt};
    if (j.contains("seed") && !j.at("seed").is_null()) inst.seed = j.at("seed").get<std::uint64_t>();
    validate(inst);
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidParams, std::string("malformed instance JSON: ") + e.what());
  }
}

}  // namespace toric
