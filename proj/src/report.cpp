#include "toric/report.hpp"

#include <sstream>

namespace toric {

namespace {

std::string optional_str(const std::optional<Integer>& v) { return v ? v->str() : ""; }

template <typename T>
std::string optional_str(const std::optional<T>& v) {
  return v ? std::to_string(*v) : "";
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

nlohmann::ordered_json integer_json(const Integer& n) {
  static const Integer limit = Integer(1) << 53;
  if (n < limit && n > -limit) return static_cast<std::int64_t>(n);
  return n.str();
}

nlohmann::ordered_json to_json(const CongruenceReport& r, bool include_timing) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(r.kind);
  j["field"] = r.field;
  j["q"] = r.q;
  j["p"] = r.p;
  j["f"] = r.f;
  j["grading"] = r.grading;
  j["polynomial"] = r.polynomial;
  j["degree"] = r.degree;
  j["N_affine"] = integer_json(r.n_affine);
  j["N_exceptional"] = integer_json(r.n_exceptional);
  j["N_toric"] = r.n_toric ? integer_json(*r.n_toric) : nullptr;
  j["modulus"] = integer_json(r.modulus);
  j["residue"] = integer_json(r.residue);
  j["expected"] = integer_json(r.expected);
  j["pass"] = r.pass;
  j["mu"] = r.mu ? nlohmann::ordered_json(*r.mu) : nullptr;
  if (r.classical_mu) j["classical_mu"] = *r.classical_mu;
  if (!r.excluded_components.empty()) j["excluded_components"] = r.excluded_components;
  if (r.affine_divisible_by_q) j["affine_divisible_by_q"] = *r.affine_divisible_by_q;
  if (include_timing) {
    j["timing"] = {{"elapsed_ms", std::chrono::duration<double, std::milli>(r.elapsed).count()}};
  }
  return j;
}

std::string csv_header() {
  return "kind,field,q,p,f,polynomial,N_affine,N_exceptional,N_toric,modulus,residue,pass,mu,elapsed_ms";
}

std::string to_csv_row(const CongruenceReport& r, bool include_timing) {
  std::ostringstream out;
  out << to_string(r.kind) << ',' << r.field << ',' << r.q << ',' << r.p << ',' << r.f << ','
      << csv_quote(r.polynomial) << ',' << r.n_affine.str() << ',' << r.n_exceptional.str() << ','
      << optional_str(r.n_toric) << ',' << r.modulus.str() << ',' << r.residue.str() << ','
      << (r.pass ? "true" : "false") << ',' << optional_str(r.mu) << ',';
  if (include_timing) out << std::chrono::duration<double, std::milli>(r.elapsed).count();
  return out.str();
}

}  // namespace toric
