// One line per acceptance criterion; exit status 1 if any of them fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "toric/chow.hpp"
#include "toric/cli.hpp"
#include "toric/count.hpp"
#include "toric/fan.hpp"
#include "toric/intmat.hpp"
#include "toric/quintic.hpp"

using namespace toric;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    pass = false;
  }
};

FieldSpec gf(std::uint32_t q) { return parse_field("GF(" + std::to_string(q) + ")"); }

MultiDegree deg(std::initializer_list<std::int64_t> d) {
  MultiDegree m(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (auto v : d) m[i++] = v;
  return m;
}

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

// The three test families. Each yields (polynomial, grading) for an index and seed.
struct Family {
  std::string name;
  ToricModel model;
  std::function<FpPoly(const FieldSpec&, std::size_t, std::mt19937_64&)> draw;
};

std::vector<Family> families() {
  std::vector<Family> out;
  const ToricModel p4 = builtin_model("projective(4)");
  out.push_back({"P^4, d = 1..4", p4, [g = p4.grading](const FieldSpec& f, std::size_t i, std::mt19937_64& rng) {
                   return random_homogeneous(f, g, deg({static_cast<std::int64_t>(1 + i % 4)}), rng);
                 }});
  const ToricModel bl = builtin_model("blowup_p4_line");
  out.push_back({"blowup, (5,2)", bl, [g = bl.grading](const FieldSpec& f, std::size_t, std::mt19937_64& rng) {
                   return random_homogeneous(f, g, deg({5, 2}), rng);
                 }});
  // y^2 - P(x0..x4), P a quartic form; homogeneous of weighted degree 4.
  const ToricModel w = builtin_model("weighted(1,1,1,1,1,2)");
  out.push_back({"P(1,1,1,1,1,2), y^2 - P", w, [](const FieldSpec& f, std::size_t, std::mt19937_64& rng) {
                   const FieldDomain dom{f};
                   const FpPoly quartic = random_homogeneous(f, standard_grading(5), deg({4}), rng);
                   std::vector<FpPoly> images;
                   for (int k = 0; k < 5; ++k) images.push_back(FpPoly::variable(dom, 6, k));
                   const FpPoly y = FpPoly::variable(dom, 6, 5);
                   return y * y - substitute(quartic, images);
                 }});
  return out;
}

Outcome power_sums() {
  Outcome o;
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 25u}) {
    const FieldSpec f = gf(q);
    const FieldElement zero = f.element(0), minus_one = -f.element(1);
    for (std::uint64_t a = 0; a <= 3 * (q - 1); ++a) {
      const bool special = a > 0 && a % (q - 1) == 0;
      o.require(power_sum(f, a) == (special ? minus_one : zero),
                "q=" + std::to_string(q) + " alpha=" + std::to_string(a));
    }
  }
  if (o.pass) o.detail = "11 fields, 0 <= alpha <= 3(q-1)";
  return o;
}

Outcome chevalley_warning() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& fam : families()) {
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
      const FieldSpec f = gf(q);
      for (std::size_t i = 0; i < 50; ++i) {
        std::mt19937_64 rng(derive_seed(1000 + q, i));
        const CongruenceReport r = check_cw(fam.draw(f, i, rng), fam.model.grading);
        o.require(r.pass, fam.name + " q=" + std::to_string(q) + " #" + std::to_string(i));
        ++n;
      }
    }
  }
  o.detail = o.pass ? std::to_string(n) + " polynomials" : o.detail;
  return o;
}

Outcome ax_and_esnault(Outcome& esnault) {
  Outcome o;
  std::size_t n = 0;
  for (const auto& fam : families()) {
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
      const FieldSpec f = gf(q);
      for (std::size_t i = 0; i < 50; ++i) {
        std::mt19937_64 rng(derive_seed(2000 + q, i));
        const CongruenceReport r = check_ax(fam.draw(f, i, rng), fam.model.grading);
        o.require(r.pass, fam.name + " q=" + std::to_string(q) + " #" + std::to_string(i));
        if (fam.model.name == "blowup_p4_line") o.require(r.mu == 1, "blowup mu != 1");
        ++n;
      }
    }
  }
  const ToricModel bl = builtin_model("blowup_p4_line");
  std::size_t m = 0;
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u}) {
    const FieldSpec f = gf(q);
    const Integer qq = q;
    for (std::size_t i = 0; i < 100; ++i) {
      const QuinticInstance inst = random_instance(f, derive_seed(3000 + q, i));
      const std::string tag = "q=" + std::to_string(q) + " seed#" + std::to_string(i);
      const CongruenceReport ax = check_ax(strict_transform(inst), bl.grading);
      o.require(ax.pass && ax.mu == 1, "strict transform " + tag);
      try {
        const CongruenceReport e = check_esnault(inst);
        esnault.require(e.n_exceptional == 2 * qq * qq * qq - 1, "N_exceptional " + tag);
        esnault.require(e.n_toric && *e.n_toric * (qq - 1) * (qq - 1) == e.n_affine - e.n_exceptional,
                        "divisibility " + tag);
        esnault.require(e.pass, "#X = " + (e.n_toric ? e.n_toric->str() : "?") + " " + tag);
      } catch (const Error& err) {
        esnault.require(false, std::string(err.what()) + " " + tag);
      }
      ++m;
    }
  }
  if (o.pass) o.detail = std::to_string(n) + " family polynomials, " + std::to_string(m) + " strict transforms, mu = 1";
  if (esnault.pass) esnault.detail = std::to_string(m) + " instances, N_exc = 2q^3-1";
  return o;
}

Outcome orbits_vs_quotient() {
  Outcome o;
  const std::vector<std::pair<std::string, MultiDegree>> cases{
      {"projective(2)", deg({2})}, {"projective(3)", deg({2})},     {"projective(4)", deg({2})},
      {"blowup_p2", deg({2, 1})},  {"blowup_p4_line", deg({5, 2})}};
  for (const auto& [name, d] : cases) {
    const ToricModel m = builtin_model(name);
    for (std::uint32_t q : {2u, 3u, 4u}) {
      const FieldSpec f = gf(q);
      for (std::size_t i = 0; i < 20; ++i) {
        std::mt19937_64 rng(derive_seed(4000 + q, i));
        const FpPoly p = random_homogeneous(f, m.grading, d, rng);
        o.require(toric_count_orbits(p, m) == toric_count_quotient(p, m), name + " q=" + std::to_string(q));
      }
      const FpPoly zero(FieldDomain{f}, m.rho());
      o.require(toric_count_orbits(zero, m) == toric_count_quotient(zero, m), name + " P=0");
      if (name == "blowup_p4_line") {
        const Integer qq = q, expect = (qq * qq + qq + 1) * (qq * qq + qq + 1);
        o.require(toric_count_quotient(zero, m) == expect, "full blowup count q=" + std::to_string(q));
      }
    }
  }
  if (o.pass) o.detail = "5 fans x 3 fields x 21 polynomials";
  return o;
}

Outcome structure() {
  Outcome o;
  for (int d = 2; d <= 4; ++d) {
    const Fan fan = projective_fan(d);
    IndexSet all;
    for (int i = 0; i <= d; ++i) all.push_back(i);
    o.require(primitive_collections(fan) == std::vector<IndexSet>{all}, "P^" + std::to_string(d) + " primitive");
    o.require(grading_from_fan(fan).weights == IntMatrix::Ones(d + 1, 1), "P^" + std::to_string(d) + " weights");
  }
  const Fan b2 = blowup_p2_fan();
  o.require(primitive_collections(b2) == std::vector<IndexSet>{{0, 1}, {2, 3}}, "blowup_p2 primitive");
  o.require(same_column_lattice<std::int64_t>(grading_from_fan(b2).weights, weights({{1, 0}, {1, 0}, {1, 1}, {0, 1}})),
            "blowup_p2 weights");
  const Fan b4 = blowup_p4_line_fan();
  o.require(primitive_collections(b4) == std::vector<IndexSet>{{0, 4, 5}, {1, 2, 3}}, "blowup_p4_line primitive");
  o.require(same_column_lattice<std::int64_t>(grading_from_fan(b4, true).weights,
                                              weights({{1, 1}, {1, 0}, {1, 0}, {1, 0}, {1, 1}, {0, 1}})),
            "blowup_p4_line weights");
  if (o.pass) o.detail = "P^2..P^4, blowup_p2, blowup_p4_line";
  return o;
}

Outcome pullback() {
  Outcome o;
  for (std::uint32_t q : {2u, 3u, 5u}) {
    const FieldSpec f = gf(q);
    for (std::size_t i = 0; i < 100; ++i) {
      const std::uint64_t seed = derive_seed(5000 + q, i);
      const PullbackCheck c = pullback_identity_check(random_instance(f, seed), 20, seed);
      o.require(c.pass(), "q=" + std::to_string(q) + " #" + std::to_string(i));
    }
  }
  if (o.pass) o.detail = "300 instances, symbolic and 20 points each";
  return o;
}

std::string gamma_text(const TsenCertificate& t) { return t.gamma ? t.gamma->str() : "-"; }

Outcome tsen(std::vector<std::string>& notes) {
  Outcome o;
  std::vector<std::string> negative;
  for (int s = 0; s <= 4; ++s) {
    for (int c = 0; c <= 3; ++c) {
      const TsenCertificate t = tsen_certificate(s, c);
      const TsenCertificate wide = tsen_certificate(s, c, 6 * s + c + 1);
      const std::string tag = "(s,c)=(" + std::to_string(s) + "," + std::to_string(c) + ")";
      if (t.E <= 6 * s + 4) {
        o.require(t.nonzero, tag + " class vanishes");
        if (!(t.gamma && *t.gamma > 0)) negative.push_back(tag + " gamma=" + gamma_text(t));
      } else {
        o.require(!t.nonzero, tag + " class above the socle is nonzero");
      }
      notes.push_back(tag + " E=" + std::to_string(t.E) + " nonzero=" + (t.nonzero ? "yes" : "no") +
                      " gamma=" + gamma_text(t) + " | E=" + std::to_string(wide.E) +
                      " nonzero=" + (wide.nonzero ? "yes" : "no") + " gamma=" + gamma_text(wide));
    }
  }
  for (auto [s, c] : {std::pair{0, 5}, std::pair{1, 5}}) {
    const TsenCertificate t = tsen_certificate(s, c);
    o.require(!t.nonzero, "(" + std::to_string(s) + "," + std::to_string(c) + ") should vanish");
  }
  for (int s = 0; s <= 3; ++s) {
    o.require(tsen_certificate(s, 0).socle_dim == 1, "socle dim s=" + std::to_string(s));
  }
  if (!negative.empty()) {
    std::string msg = "classes nonzero, socle dim 1, zero cases vanish; gamma <= 0 at";
    for (const auto& n : negative) msg += " " + n;
    o.require(false, msg);
  } else if (o.pass) {
    o.detail = "all classes nonzero with gamma > 0";
  }
  return o;
}

std::string cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  run_cli(args, out, err);
  return out.str();
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> runs{
      {"verify", "cw", "--field", "GF(4)", "--fan", "blowup_p4_line", "--degree", "5,2", "--batch", "10", "--seed",
       "42", "--format", "json", "--no-timing"},
      {"verify", "ax", "--field", "GF(3)", "--fan", "blowup_p4_line", "--batch", "10", "--seed", "42", "--format",
       "json", "--no-timing"},
      {"verify", "esnault", "--field", "GF(5)", "--batch", "10", "--seed", "42", "--format", "json", "--no-timing"},
      {"count", "--field", "GF(3^2)", "--fan", "blowup_p2", "--poly", "x0*x2 + x1*x2 + x3*x0^2", "--orbits",
       "--format", "json", "--no-timing"},
      {"chow", "certify", "--s", "3", "--c", "2", "--format", "json"}};
  for (const auto& args : runs) {
    const std::string first = cli(args);
    o.require(!first.empty() && first == cli(args), args[0] + " " + args[1] + ": rerun differs");
    for (const char* t : {"1", "2", "5"}) {
      auto threaded = args;
      threaded.insert(threaded.end(), {"--threads", t});
      if (args[0] == "chow") continue;
      o.require(first == cli(threaded), args[0] + " " + args[1] + ": --threads " + t + " differs");
    }
  }
  if (o.pass) o.detail = "5 commands, reruns and 1/2/5 threads byte-identical";
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, double limit_s, const std::function<Outcome()>& fn) {
    const auto start = Clock::now();
    Outcome o = fn();
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (limit_s > 0 && secs > limit_s) o.require(false, "took longer than " + std::to_string(limit_s) + " s");
    std::printf("[%s] %d %-28s %7.2f s  %s\n", o.pass ? "PASS" : "FAIL", id, name, secs, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
    return o;
  };

  report(1, "power sums", 1, power_sums);
  report(2, "Chevalley-Warning", 30, chevalley_warning);
  Outcome esnault;
  const auto start = Clock::now();
  report(3, "Ax", 120, [&] { return ax_and_esnault(esnault); });
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("[%s] %d %-28s %7.2f s  %s\n", esnault.pass ? "PASS" : "FAIL", 4, "Esnault", secs, esnault.detail.c_str());
  failures += !esnault.pass;
  report(5, "orbits = quotient", 60, orbits_vs_quotient);
  report(6, "fan structure", 0, structure);
  report(7, "pullback identity", 10, pullback);
  std::vector<std::string> notes;
  report(8, "Tsen certificate", 30, [&] { return tsen(notes); });
  for (const auto& n : notes) std::printf("       %s\n", n.c_str());
  report(9, "determinism", 0, determinism);
  return failures == 0 ? 0 : 1;
}
