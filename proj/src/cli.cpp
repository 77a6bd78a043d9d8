#include "toric/cli.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "toric/chow.hpp"
#include "toric/count.hpp"
#include "toric/fan.hpp"
#include "toric/poly.hpp"
#include "toric/quintic.hpp"
#include "toric/report.hpp"

namespace toric {

namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string field = "GF(2)";
  std::string fan;
  std::string fan_file;
  std::string poly;
  std::string instance_file;
  std::optional<std::uint64_t> seed;
  std::size_t batch = 0;
  std::vector<std::int64_t> degree;
  std::string format = "table";
  std::string output;
  bool no_timing = false;
  bool projective = false;
  bool orbits = false;
  unsigned threads = 0;
  std::optional<std::uint64_t> work_cap;
  std::string policy = "any";
  int s = 0;
  int c = 0;
  std::optional<int> E;
  int s_max = 4;
};

// Text being parsed when a SyntaxError escapes, for the caret display.
struct ParseContext {
  std::string text;
};

CountOptions count_options(const RunConfig& cfg) {
  CountOptions opts = default_count_options();
  if (cfg.work_cap) opts.work_cap = *cfg.work_cap;
  opts.threads = cfg.threads;
  return opts;
}

ToricModel resolve_model(const RunConfig& cfg) {
  if (!cfg.fan.empty() && !cfg.fan_file.empty()) {
    throw Error(ErrorCode::InvalidParams, "give either --fan or --fan-file, not both");
  }
  if (!cfg.fan_file.empty()) return model_from_fan(cfg.fan_file, load_fan_file(cfg.fan_file));
  if (cfg.fan.empty()) throw Error(ErrorCode::InvalidParams, "--fan or --fan-file is required");
  return builtin_model(cfg.fan);
}

FpPoly parse_poly(const std::string& text, int nvars, const FieldSpec& field, ParseContext& ctx) {
  ctx.text = text;
  FpPoly p = parse(text, nvars, FieldDomain{field});
  ctx.text.clear();
  return p;
}

std::string modulus_string(const std::vector<std::uint32_t>& m) {
  std::string out;
  for (std::size_t i = m.size(); i-- > 0;) {
    if (m[i] == 0) continue;
    std::string mono = i == 0 ? "" : (i == 1 ? "t" : "t^" + std::to_string(i));
    std::string term = mono.empty() ? std::to_string(m[i])
                                    : (m[i] == 1 ? mono : std::to_string(m[i]) + "*" + mono);
    out += out.empty() ? term : "+" + term;
  }
  return out;
}

Json rational_json(const Rational& r) {
  if (denominator(r) == 1) return integer_json(numerator(r));
  return numerator(r).str() + "/" + denominator(r).str();
}

Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json index_sets_json(const std::vector<IndexSet>& sets) {
  Json out = Json::array();
  for (const auto& s : sets) out.push_back(s);
  return out;
}

class Emitter {
 public:
  Emitter(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(&out) {
    if (!cfg.output.empty()) {
      file_.open(cfg.output);
      if (!file_) throw Error(ErrorCode::InvalidParams, "cannot write '" + cfg.output + "'");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }
  void json(const Json& j) { *out_ << j.dump(2) << '\n'; }

 private:
  const RunConfig& cfg_;
  std::ostream* out_;
  std::ofstream file_;
};

// --- field-info ----------------------------------------------------------------

int cmd_field_info(const RunConfig& cfg, std::ostream& out) {
  const FieldSpec field = parse_field(cfg.field, FieldSpec::kMaxCardinality);
  Emitter em(cfg, out);
  Json j;
  j["field"] = field.name();
  j["p"] = field.p();
  j["f"] = field.f();
  j["q"] = field.q();
  j["modulus"] = modulus_string(field.modulus());
  j["modulus_coefficients"] = field.modulus();
  if (cfg.format == "json") {
    em.json(j);
  } else {
    auto& s = em.stream();
    s << field.name() << "  p=" << field.p() << " f=" << field.f() << " q=" << field.q() << '\n';
    s << "modulus  " << modulus_string(field.modulus()) << '\n';
    if (field.q() <= 16) {
      s << "elements";
      for (const auto& e : enumerate(field)) s << "  " << to_string(e);
      s << '\n';
    }
  }
  return 0;
}

// --- fan -------------------------------------------------------------------------

int cmd_fan_list(const RunConfig& cfg, std::ostream& out) {
  Emitter em(cfg, out);
  if (cfg.format == "json") {
    em.json(Json(builtin_names()));
  } else {
    for (const auto& n : builtin_names()) em.stream() << n << '\n';
  }
  return 0;
}

int cmd_fan_info(const RunConfig& cfg, std::ostream& out) {
  const ToricModel model = resolve_model(cfg);
  Emitter em(cfg, out);
  Json j;
  j["name"] = model.name;
  if (model.fan) {
    j["dim"] = model.fan->dim;
    j["rays"] = matrix_json(model.fan->rays);
    j["cones"] = index_sets_json(model.fan->max_cones);
  }
  j["weights"] = matrix_json(model.grading.weights);
  j["torsion"] = model.grading.torsion;
  j["exceptional_strata"] = index_sets_json(model.exceptional.strata);
  if (cfg.format == "json") {
    em.json(j);
    return 0;
  }
  auto& s = em.stream();
  s << model.name << '\n';
  if (model.fan) {
    s << "rays\n";
    for (int i = 0; i < model.fan->rho(); ++i) {
      s << "  n" << i << " = (";
      for (int k = 0; k < model.fan->dim; ++k) s << (k ? "," : "") << model.fan->rays(i, k);
      s << ")\n";
    }
    s << "cones     " << j["cones"].dump() << '\n';
  }
  s << "weights   " << j["weights"].dump() << '\n';
  s << "torsion   " << j["torsion"].dump() << '\n';
  s << "primitive " << j["exceptional_strata"].dump() << '\n';
  return 0;
}

int cmd_fan_check(const RunConfig& cfg, std::ostream& out) {
  const ToricModel model = resolve_model(cfg);
  Emitter em(cfg, out);
  if (cfg.format == "json") {
    em.json(Json{{"name", model.name}, {"valid", true}, {"torsion_free", model.grading.torsion_free()}});
  } else {
    em.stream() << model.name << ": ok" << (model.grading.torsion_free() ? "" : " (class group has torsion)")
                << '\n';
  }
  return 0;
}

// --- count -----------------------------------------------------------------------

int cmd_count(const RunConfig& cfg, std::ostream& out, ParseContext& ctx) {
  const FieldSpec field = parse_field(cfg.field);
  const ToricModel model = resolve_model(cfg);
  if (cfg.poly.empty()) throw Error(ErrorCode::InvalidParams, "--poly is required");
  const FpPoly p = parse_poly(cfg.poly, model.rho(), field, ctx);
  const CountOptions opts = count_options(cfg);

  const auto start = std::chrono::steady_clock::now();
  const Integer n_aff = affine_count(p, opts);
  const Integer n_exc = exceptional_on_hypersurface(p, model.exceptional, opts);
  Json j;
  j["field"] = field.name();
  j["fan"] = model.name;
  j["polynomial"] = to_string(p);
  std::optional<std::int64_t> mu;
  if (!p.is_zero()) {
    const MultiDegree d = multidegree(p, model.grading);
    j["degree"] = std::vector<std::int64_t>(d.data(), d.data() + d.size());
    if (model.grading.effective()) {
      try {
        mu = ax_exponent(model.grading, d).mu;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegreeZeroGrading) throw;
      }
    }
  } else {
    j["degree"] = nullptr;
  }
  j["N_affine"] = integer_json(n_aff);
  j["N_exceptional"] = integer_json(n_exc);
  std::optional<Integer> n_toric;
  if (model.grading.torsion_free()) {
    n_toric = toric_count_quotient(p, model, opts);
    j["N_toric"] = integer_json(*n_toric);
  } else {
    j["N_toric"] = nullptr;
  }
  if (cfg.orbits) j["N_orbits"] = integer_json(toric_count_orbits(p, model, opts));
  Integer q_mu = 1;
  if (mu) {
    for (std::int64_t i = 0; i < *mu; ++i) q_mu *= field.q();
  }
  j["mu"] = mu ? Json(*mu) : Json(nullptr);
  j["residues"] = {{"N_affine_mod_p", integer_json(n_aff % field.p())},
                   {"N_affine_mod_q", integer_json(n_aff % field.q())},
                   {"N_affine_mod_q_mu", mu ? integer_json(n_aff % q_mu) : Json(nullptr)},
                   {"N_toric_mod_q", n_toric ? integer_json(*n_toric % field.q()) : Json(nullptr)}};
  const auto elapsed = std::chrono::steady_clock::now() - start;
  if (!cfg.no_timing) {
    j["timing"] = {{"elapsed_ms", std::chrono::duration<double, std::milli>(elapsed).count()}};
  }

  Emitter em(cfg, out);
  if (cfg.format == "json") {
    em.json(j);
  } else if (cfg.format == "csv") {
    em.stream() << "field,fan,polynomial,N_affine,N_exceptional,N_toric\n"
                << field.name() << ',' << model.name << ",\"" << to_string(p) << "\"," << n_aff.str()
                << ',' << n_exc.str() << ',' << (n_toric ? n_toric->str() : "") << '\n';
  } else {
    auto& s = em.stream();
    s << "field          " << field.name() << '\n'
      << "fan            " << model.name << '\n'
      << "polynomial     " << to_string(p) << '\n'
      << "N_affine       " << n_aff.str() << '\n'
      << "N_exceptional  " << n_exc.str() << '\n'
      << "N_toric        " << (n_toric ? n_toric->str() : "-") << '\n';
    if (cfg.orbits) s << "N_orbits       " << j["N_orbits"].dump() << '\n';
    s << "residues       " << j["residues"].dump() << '\n';
  }
  return 0;
}

// --- verify ----------------------------------------------------------------------

struct Checked {
  CongruenceReport report;
  std::optional<Json> instance;
};

void emit_reports(const RunConfig& cfg, const std::string& what, const std::vector<Checked>& results,
                  std::ostream& out, std::ostream& err) {
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.report.pass;
  Emitter em(cfg, out);
  auto& s = em.stream();
  if (cfg.format == "json") {
    Json j;
    j["check"] = what;
    j["field"] = cfg.field;
    if (cfg.seed) j["seed"] = *cfg.seed;
    Json reports = Json::array();
    for (const auto& r : results) {
      Json rj = to_json(r.report, !cfg.no_timing);
      if (r.instance) rj["instance"] = *r.instance;
      reports.push_back(rj);
    }
    j["reports"] = reports;
    j["summary"] = {{"total", results.size()}, {"passed", passed}, {"failed", results.size() - passed}};
    em.json(j);
  } else if (cfg.format == "csv") {
    s << csv_header() << '\n';
    for (const auto& r : results) s << to_csv_row(r.report, !cfg.no_timing) << '\n';
  } else {
    s << std::left << std::setw(14) << "kind" << std::setw(10) << "field" << std::setw(14) << "N_affine"
      << std::setw(12) << "N_toric" << std::setw(10) << "modulus" << std::setw(8) << "residue"
      << std::setw(5) << "mu" << "pass\n";
    for (const auto& r : results) {
      const auto& c = r.report;
      s << std::left << std::setw(14) << to_string(c.kind) << std::setw(10) << c.field << std::setw(14)
        << c.n_affine.str() << std::setw(12) << (c.n_toric ? c.n_toric->str() : "-") << std::setw(10)
        << c.modulus.str() << std::setw(8) << c.residue.str() << std::setw(5)
        << (c.mu ? std::to_string(*c.mu) : "-") << (c.pass ? "yes" : "NO") << '\n';
    }
    s << passed << "/" << results.size() << " pass\n";
  }
  for (const auto& r : results) {
    if (r.report.pass) continue;
    Json fail = to_json(r.report, false);
    if (r.instance) fail["instance"] = *r.instance;
    err << "FAILED " << fail.dump() << '\n';
  }
}

int cmd_verify(const std::string& what, const RunConfig& cfg, std::ostream& out, std::ostream& err,
               ParseContext& ctx) {
  const FieldSpec field = parse_field(cfg.field);
  const CountOptions opts = count_options(cfg);
  std::vector<Checked> results;

  if (what == "esnault") {
    if (!cfg.instance_file.empty()) {
      std::ifstream in(cfg.instance_file);
      if (!in) throw Error(ErrorCode::InvalidParams, "cannot read '" + cfg.instance_file + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidParams, std::string("malformed JSON: ") + e.what());
      }
      const QuinticInstance inst = instance_from_json(j);
      results.push_back({check_esnault(inst, opts), to_json(inst)});
    } else {
      if (!cfg.seed || cfg.batch == 0) throw Error(ErrorCode::InvalidParams, "--batch and --seed are required");
      for (std::size_t i = 0; i < cfg.batch; ++i) {
        const QuinticInstance inst = random_instance(field, derive_seed(*cfg.seed, i));
        results.push_back({check_esnault(inst, opts), to_json(inst)});
      }
    }
  } else {
    const ToricModel model = cfg.projective && cfg.fan.empty() && cfg.fan_file.empty()
                                 ? ToricModel{}
                                 : resolve_model(cfg);
    auto run_one = [&](const FpPoly& p) {
      if (what == "ax") return check_ax(p, model.grading, opts);
      if (cfg.projective) return check_cw_projective(p, opts);
      return check_cw(p, model.grading, opts);
    };
    auto label = [&](CongruenceReport r) {
      if (!model.name.empty()) r.grading = model.name + " " + r.grading;
      return r;
    };
    if (!cfg.poly.empty()) {
      const int nvars = model.name.empty() ? 0 : model.rho();
      if (nvars == 0) throw Error(ErrorCode::InvalidParams, "--fan is required with --poly");
      results.push_back({label(run_one(parse_poly(cfg.poly, nvars, field, ctx))), std::nullopt});
    } else {
      if (!cfg.seed || cfg.batch == 0) throw Error(ErrorCode::InvalidParams, "--batch and --seed are required");
      if (model.name.empty()) throw Error(ErrorCode::InvalidParams, "--fan is required");
      const bool strict_family = cfg.degree.empty() && model.name == "blowup_p4_line";
      if (cfg.degree.empty() && !strict_family) {
        throw Error(ErrorCode::InvalidParams, "--degree is required for random polynomials on " + model.name);
      }
      MultiDegree d(static_cast<Eigen::Index>(cfg.degree.size()));
      for (std::size_t k = 0; k < cfg.degree.size(); ++k) d[static_cast<Eigen::Index>(k)] = cfg.degree[k];
      for (std::size_t i = 0; i < cfg.batch; ++i) {
        const std::uint64_t seed = derive_seed(*cfg.seed, i);
        if (strict_family) {
          const QuinticInstance inst = random_instance(field, seed);
          results.push_back({label(run_one(strict_transform(inst))), to_json(inst)});
        } else {
          std::mt19937_64 rng(seed);
          const FpPoly p = random_homogeneous(field, model.grading, d, rng);
          results.push_back({label(run_one(p)), Json{{"seed", seed}, {"polynomial", to_string(p)}}});
        }
      }
    }
  }

  emit_reports(cfg, what, results, out, err);
  for (const auto& r : results) {
    if (!r.report.pass) return 1;
  }
  return 0;
}

// --- quintic ---------------------------------------------------------------------

std::string embedded(const FpPoly& ternary) {
  const FieldDomain dom = ternary.domain();
  return to_string(substitute(ternary, {FpPoly::variable(dom, 6, 1), FpPoly::variable(dom, 6, 2),
                                        FpPoly::variable(dom, 6, 3)}));
}

void emit_instance(const RunConfig& cfg, const QuinticInstance& inst, bool details, std::ostream& out) {
  Emitter em(cfg, out);
  Json j = to_json(inst);
  if (details) {
    const PullbackCheck check = pullback_identity_check(inst, 16, inst.seed.value_or(0));
    j["P3_text"] = embedded(inst.p3);
    j["Q3_text"] = embedded(inst.q3);
    j["Q4_text"] = embedded(inst.q4);
    j["ambient"] = to_string(ambient_quintic(inst));
    j["strict_transform"] = to_string(strict_transform(inst));
    j["pullback_identity"] = check.pass();
  }
  if (cfg.format == "json" || !details) {
    em.json(j);
    return;
  }
  auto& s = em.stream();
  s << "field             " << inst.field.name() << '\n'
    << "P3                " << j["P3_text"].get<std::string>() << '\n'
    << "Q3                " << j["Q3_text"].get<std::string>() << '\n'
    << "Q4                " << j["Q4_text"].get<std::string>() << '\n'
    << "ambient           " << j["ambient"].get<std::string>() << '\n'
    << "strict transform  " << j["strict_transform"].get<std::string>() << '\n'
    << "pullback identity " << (j["pullback_identity"].get<bool>() ? "holds" : "FAILS") << '\n';
}

int cmd_quintic_random(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.seed) throw Error(ErrorCode::InvalidParams, "--seed is required");
  const FieldSpec field = parse_field(cfg.field);
  const auto policy = cfg.policy == "p3" ? NonzeroPolicy::P3Nonzero : NonzeroPolicy::AnyNonzero;
  emit_instance(cfg, random_instance(field, *cfg.seed, policy), false, out);
  return 0;
}

int cmd_quintic_show(const RunConfig& cfg, std::ostream& out) {
  if (cfg.instance_file.empty()) throw Error(ErrorCode::InvalidParams, "--instance is required");
  std::ifstream in(cfg.instance_file);
  if (!in) throw Error(ErrorCode::InvalidParams, "cannot read '" + cfg.instance_file + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidParams, std::string("malformed JSON: ") + e.what());
  }
  emit_instance(cfg, instance_from_json(j), true, out);
  return 0;
}

// --- chow ------------------------------------------------------------------------

Json certificate_json(const TsenCertificate& t) {
  Json j;
  j["s"] = t.s;
  j["c"] = t.c;
  j["E"] = t.E;
  j["nonzero"] = t.nonzero;
  j["gamma"] = t.gamma ? rational_json(*t.gamma) : Json(nullptr);
  j["gamma_integral"] = t.gamma_integral;
  j["equations"] = t.equations;
  j["unknowns"] = t.unknowns;
  j["within_top_degree"] = t.within_top_degree;
  j["socle_dim"] = t.socle_dim;
  return j;
}

int cmd_chow_certify(const RunConfig& cfg, std::ostream& out) {
  const TsenCertificate main = tsen_certificate(cfg.s, cfg.c, cfg.E);
  Json j = certificate_json(main);
  j["hyperplane_class"] = to_string(hyperplane_class(5, 2));
  Json readings = Json::array();
  for (int e : {5 * cfg.s + cfg.c + 1, 6 * cfg.s + cfg.c + 1}) {
    Json r = certificate_json(tsen_certificate(cfg.s, cfg.c, e));
    readings.push_back(r);
  }
  j["readings"] = readings;
  const DimensionCount dc = dimension_count(cfg.s, cfg.c);
  j["dimension_count"] = {{"equations", dc.equations},
                          {"unknowns", dc.unknowns},
                          {"slack", dc.slack},
                          {"family_bounds", dc.family_bounds},
                          {"uniform_equations", dc.uniform_equations}};
  Emitter em(cfg, out);
  if (cfg.format == "json") {
    em.json(j);
  } else {
    auto& s = em.stream();
    s << "A^" << cfg.s << ": H = " << j["hyperplane_class"].get<std::string>() << ", E = " << main.E << '\n';
    for (const auto& r : readings) {
      s << "  E=" << std::setw(3) << r["E"].get<int>() << "  nonzero=" << (r["nonzero"].get<bool>() ? "yes" : "no")
        << "  gamma=" << r["gamma"].dump() << '\n';
    }
    s << "equations " << main.equations << ", unknowns " << main.unknowns << ", socle dim " << main.socle_dim
      << '\n';
  }
  return 0;
}

int cmd_chow_sweep(const RunConfig& cfg, std::ostream& out) {
  Json rows = Json::array();
  std::optional<int> first;
  bool monotone = true;
  for (int s = 0; s <= cfg.s_max; ++s) {
    const TsenCertificate t = tsen_certificate(s, cfg.c);
    if (t.nonzero && !first) first = s;
    if (first && !t.nonzero) monotone = false;
    rows.push_back(certificate_json(t));
  }
  Json j;
  j["c"] = cfg.c;
  j["s_max"] = cfg.s_max;
  j["min_section_degree"] = first ? Json(*first) : Json(nullptr);
  j["monotone"] = monotone;
  j["certificates"] = rows;
  Emitter em(cfg, out);
  if (cfg.format == "json") {
    em.json(j);
  } else {
    auto& s = em.stream();
    for (const auto& r : rows) {
      s << "s=" << r["s"].get<int>() << "  E=" << r["E"].get<int>()
        << "  nonzero=" << (r["nonzero"].get<bool>() ? "yes" : "no") << "  gamma=" << r["gamma"].dump() << '\n';
    }
    s << "min s: " << (first ? std::to_string(*first) : "none") << '\n';
  }
  return 0;
}

void print_caret(const SyntaxError& e, const std::string& text, std::ostream& err) {
  err << "  " << text << '\n' << "  " << std::string(std::min(e.position(), text.size()), ' ') << "^\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Point counts and congruences on toric varieties over finite fields", "toric"};
  app.require_subcommand(1);

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "table, json or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    sub->add_option("--output", cfg.output, "write to a file instead of stdout");
  };
  auto add_counting = [&](CLI::App* sub) {
    sub->add_option("--field", cfg.field, "GF(p) or GF(p^f)");
    sub->add_option("--threads", cfg.threads, "worker threads (0: all cores)");
    sub->add_option("--work-cap", cfg.work_cap, "evaluation budget");
    sub->add_flag("--no-timing", cfg.no_timing, "omit wall-clock timing");
  };
  auto add_fan = [&](CLI::App* sub) {
    sub->add_option("--fan", cfg.fan, "builtin: projective(d), weighted(...), blowup_p2, blowup_p4_line");
    sub->add_option("--fan-file", cfg.fan_file, "fan description file");
  };

  auto* field_info = app.add_subcommand("field-info", "field parameters and modulus");
  field_info->add_option("--field", cfg.field, "GF(p) or GF(p^f)")->required();
  add_format(field_info);

  auto* fan = app.add_subcommand("fan", "builtin and user fans");
  fan->require_subcommand(1);
  auto* fan_list = fan->add_subcommand("list", "builtin fan names");
  auto* fan_info = fan->add_subcommand("info", "rays, cones, primitive collections, weights");
  auto* fan_check = fan->add_subcommand("check", "validate a fan");
  for (auto* sub : {fan_list, fan_info, fan_check}) add_format(sub);
  add_fan(fan_info);
  add_fan(fan_check);

  auto* count = app.add_subcommand("count", "affine, exceptional and toric point counts");
  add_counting(count);
  add_fan(count);
  add_format(count);
  count->add_option("--poly", cfg.poly, "polynomial in x0..x{rho-1}")->required();
  count->add_flag("--orbits", cfg.orbits, "also count torus orbits directly");

  auto* verify = app.add_subcommand("verify", "congruence checks");
  verify->require_subcommand(1);
  std::map<std::string, CLI::App*> checks;
  for (const char* name : {"cw", "ax", "esnault"}) {
    auto* sub = verify->add_subcommand(name);
    add_counting(sub);
    add_format(sub);
    sub->add_option("--batch", cfg.batch, "number of random instances");
    sub->add_option("--seed", cfg.seed, "base seed");
    checks[name] = sub;
  }
  checks["cw"]->description("N = 0 mod p when some d_j < a_j");
  checks["ax"]->description("N = 0 mod q^mu");
  checks["esnault"]->description("#X(F_q) = 1 mod q for quintic strict transforms");
  for (const char* name : {"cw", "ax"}) {
    add_fan(checks[name]);
    checks[name]->add_option("--poly", cfg.poly, "single polynomial instead of a batch");
    checks[name]->add_option("--degree", cfg.degree, "multidegree of random polynomials")->delimiter(',');
  }
  checks["cw"]->add_flag("--projective", cfg.projective, "check (N-1)/(q-1) = 1 mod p instead");
  checks["esnault"]->add_option("--instance", cfg.instance_file, "instance JSON file");

  auto* quintic = app.add_subcommand("quintic", "quintic threefolds with a triple line");
  quintic->require_subcommand(1);
  auto* quintic_random = quintic->add_subcommand("random", "seeded random instance");
  quintic_random->add_option("--field", cfg.field, "GF(p) or GF(p^f)");
  quintic_random->add_option("--seed", cfg.seed, "seed")->required();
  quintic_random->add_option("--policy", cfg.policy, "any or p3 (require P3 != 0)")
      ->check(CLI::IsMember({"any", "p3"}));
  auto* quintic_show = quintic->add_subcommand("show", "polynomials of an instance");
  quintic_show->add_option("--instance", cfg.instance_file, "instance JSON file")->required();
  add_format(quintic_random);
  add_format(quintic_show);

  auto* chow = app.add_subcommand("chow", "non-vanishing certificates in A^s");
  chow->require_subcommand(1);
  auto* certify = chow->add_subcommand("certify", "certificate for one (s, c)");
  certify->add_option("--s", cfg.s, "section degree")->required();
  certify->add_option("--c", cfg.c, "coefficient degree")->required();
  certify->add_option("--E", cfg.E, "exponent (default 5s+c+1)");
  auto* sweep = chow->add_subcommand("sweep", "least s with a nonzero class");
  sweep->add_option("--c", cfg.c, "coefficient degree")->required();
  sweep->add_option("--s-max", cfg.s_max, "largest s to try");
  add_format(certify);
  add_format(sweep);

  std::vector<const char*> argv{"toric"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  ParseContext ctx;
  try {
    if (field_info->parsed()) return cmd_field_info(cfg, out);
    if (fan_list->parsed()) return cmd_fan_list(cfg, out);
    if (fan_info->parsed()) return cmd_fan_info(cfg, out);
    if (fan_check->parsed()) return cmd_fan_check(cfg, out);
    if (count->parsed()) return cmd_count(cfg, out, ctx);
    for (const auto& [name, sub] : checks) {
      if (sub->parsed()) return cmd_verify(name, cfg, out, err, ctx);
    }
    if (quintic_random->parsed()) return cmd_quintic_random(cfg, out);
    if (quintic_show->parsed()) return cmd_quintic_show(cfg, out);
    if (certify->parsed()) return cmd_chow_certify(cfg, out);
    if (sweep->parsed()) return cmd_chow_sweep(cfg, out);
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << '\n';
    print_caret(e, ctx.text, err);
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace toric
