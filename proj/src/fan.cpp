#include "toric/fan.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>
#include <sstream>

#include "toric/error.hpp"
#include "toric/intmat.hpp"

namespace toric {

namespace {

constexpr int kMaxRays = 16;

std::uint32_t mask_of(const IndexSet& s) {
  std::uint32_t m = 0;
  for (int i : s) m |= 1u << i;
  return m;
}

IndexSet indices_of(std::uint32_t m) {
  IndexSet s;
  for (int i = 0; m != 0; ++i, m >>= 1) {
    if (m & 1u) s.push_back(i);
  }
  return s;
}

std::string matrix_to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
  }
  os << "]";
  return os.str();
}

// All r x r integer matrices with entries in [-bound, bound] and det = +-1.
std::vector<IntMatrix> small_unimodular(int r, int bound) {
  std::vector<IntMatrix> out;
  const int n = r * r;
  const int base = 2 * bound + 1;
  std::int64_t total = 1;
  for (int i = 0; i < n; ++i) total *= base;
  IntMatrix t(r, r);
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t c = code;
    for (int k = 0; k < n; ++k) {
      t(k / r, k % r) = c % base - bound;
      c /= base;
    }
    const auto det = integer_determinant<std::int64_t>(t);
    if (det == 1 || det == -1) out.push_back(t);
  }
  return out;
}

// Sign flips only, for ranks where the dense search is too large.
std::vector<IntMatrix> sign_changes(int r) {
  std::vector<IntMatrix> out;
  for (std::uint32_t s = 0; s < (1u << r); ++s) {
    IntMatrix t = IntMatrix::Identity(r, r);
    for (int i = 0; i < r; ++i) {
      if (s & (1u << i)) t(i, i) = -1;
    }
    out.push_back(t);
  }
  return out;
}

bool lex_greater(const IntMatrix& a, const IntMatrix& b) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != b(i, j)) return a(i, j) > b(i, j);
    }
  }
  return false;
}

}  // namespace

bool ExceptionalSet::contains(std::uint64_t zero_mask) const {
  for (const auto& s : strata) {
    const std::uint64_t m = mask_of(s);
    if ((m & zero_mask) == m) return true;
  }
  return false;
}

void validate(const Fan& fan) {
  if (fan.dim < 1) throw Error(ErrorCode::InvalidFan, "lattice dimension must be >= 1");
  if (fan.rays.cols() != fan.dim) throw Error(ErrorCode::InvalidFan, "ray length != dim");
  if (fan.rho() > kMaxRays) {
    throw Error(ErrorCode::InvalidFan, "at most " + std::to_string(kMaxRays) + " rays supported");
  }
  for (int i = 0; i < fan.rho(); ++i) {
    std::int64_t g = 0;
    for (int j = 0; j < fan.dim; ++j) g = std::gcd(g, fan.rays(i, j));
    if (g == 0) throw Error(ErrorCode::NonPrimitiveRay, "ray " + std::to_string(i) + " is zero");
    if (g != 1) {
      throw Error(ErrorCode::NonPrimitiveRay,
                  "ray " + std::to_string(i) + " has content " + std::to_string(g));
    }
  }
  std::vector<std::uint32_t> masks;
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    const auto& cone = fan.max_cones[c];
    if (cone.empty()) throw Error(ErrorCode::InvalidFan, "empty cone");
    for (int i : cone) {
      if (i < 0 || i >= fan.rho()) {
        throw Error(ErrorCode::InvalidFan, "cone " + std::to_string(c) + " has bad index " +
                                               std::to_string(i));
      }
    }
    const auto m = mask_of(cone);
    if (std::popcount(m) != static_cast<int>(cone.size())) {
      throw Error(ErrorCode::InvalidFan, "cone " + std::to_string(c) + " repeats a ray");
    }
    IntMatrix sub(static_cast<Eigen::Index>(cone.size()), fan.dim);
    for (std::size_t k = 0; k < cone.size(); ++k) sub.row(k) = fan.rays.row(cone[k]);
    if (integer_rank<std::int64_t>(sub) != static_cast<Eigen::Index>(cone.size())) {
      throw Error(ErrorCode::NonSimplicialFan,
                  "cone " + std::to_string(c) + " has linearly dependent rays");
    }
    masks.push_back(m);
  }
  for (std::size_t a = 0; a < masks.size(); ++a) {
    for (std::size_t b = 0; b < masks.size(); ++b) {
      if (a != b && (masks[a] & masks[b]) == masks[a]) {
        throw Error(ErrorCode::InvalidFan, "maximal cone " + std::to_string(a) +
                                               " is contained in cone " + std::to_string(b));
      }
    }
  }
}

std::vector<IndexSet> primitive_collections(const Fan& fan) {
  std::vector<std::uint32_t> cones;
  for (const auto& c : fan.max_cones) cones.push_back(mask_of(c));
  auto in_cone = [&](std::uint32_t m) {
    return std::any_of(cones.begin(), cones.end(),
                       [m](std::uint32_t c) { return (c & m) == m; });
  };
  std::vector<IndexSet> out;
  const std::uint32_t limit = 1u << fan.rho();
  for (std::uint32_t m = 1; m < limit; ++m) {
    if (in_cone(m)) continue;
    bool minimal = true;
    for (std::uint32_t rest = m; rest != 0 && minimal; rest &= rest - 1) {
      minimal = in_cone(m & ~(rest & -rest));
    }
    if (minimal) out.push_back(indices_of(m));
  }
  std::sort(out.begin(), out.end(), [](const IndexSet& a, const IndexSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

ExceptionalSet exceptional_set(const Fan& fan) { return {primitive_collections(fan)}; }

GradingData grading_from_fan(const Fan& fan, bool require_free) {
  const auto snf = smith_normal_form<std::int64_t>(fan.rays);
  GradingData g;
  for (Eigen::Index i = 0; i < snf.rank; ++i) {
    if (snf.D(i, i) > 1) g.torsion.push_back(snf.D(i, i));
  }
  if (require_free && !g.torsion.empty()) {
    throw Error(ErrorCode::TorsionClassGroup,
                "class group has invariant factors " + std::to_string(g.torsion.front()) +
                    (g.torsion.size() > 1 ? ", ..." : ""));
  }
  const int rho = fan.rho();
  const int r = rho - static_cast<int>(snf.rank);
  if (r == 0) {
    g.weights = IntMatrix(rho, 0);
    return g;
  }
  const IntMatrix basis = snf.U.bottomRows(r);  // r x rho, rows = grading coordinates
  const IntMatrix h = hermite_normal_form<std::int64_t>(basis);

  const auto candidates = r <= 2 ? small_unimodular(r, 2)
                                 : (r == 3 ? small_unimodular(r, 1) : sign_changes(r));
  std::optional<IntMatrix> best;
  std::int64_t best_sum = 0;
  for (const auto& t : candidates) {
    IntMatrix rows = t * h;
    if (!(rows.array() >= 0).all()) continue;
    const std::int64_t sum = rows.sum();
    if (!best || sum < best_sum || (sum == best_sum && lex_greater(rows, *best))) {
      best = rows;
      best_sum = sum;
    }
  }
  if (!best) {
    throw Error(ErrorCode::NonEffectiveGrading,
                "no nonnegative weight matrix found; signed weights " +
                    matrix_to_string(h.transpose()));
  }
  g.weights = best->transpose();
  return g;
}

GradingData standard_grading(int nvars) {
  GradingData g;
  g.weights = IntMatrix::Ones(nvars, 1);
  return g;
}

Integer count_exceptional(const ExceptionalSet& z, int rho, const FieldSpec& field) {
  const std::size_t k = z.strata.size();
  if (k > 24) throw Error(ErrorCode::CapExceeded, "too many exceptional strata");
  Integer total = 0;
  for (std::uint32_t family = 1; family < (1u << k); ++family) {
    std::uint32_t u = 0;
    for (std::size_t s = 0; s < k; ++s) {
      if (family & (1u << s)) u |= mask_of(z.strata[s]);
    }
    Integer term = boost::multiprecision::pow(Integer(field.q()), rho - std::popcount(u));
    if (std::popcount(family) % 2 == 1) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

Integer count_exceptional(const Fan& fan, const FieldSpec& field) {
  return count_exceptional(exceptional_set(fan), fan.rho(), field);
}

Fan projective_fan(int d) {
  if (d < 1) throw Error(ErrorCode::InvalidParams, "projective(d) needs d >= 1");
  Fan fan;
  fan.dim = d;
  fan.rays = IntMatrix::Zero(d + 1, d);
  fan.rays.row(0).setConstant(-1);
  for (int i = 1; i <= d; ++i) fan.rays(i, i - 1) = 1;
  for (int omit = 0; omit <= d; ++omit) {
    IndexSet cone;
    for (int i = 0; i <= d; ++i) {
      if (i != omit) cone.push_back(i);
    }
    fan.max_cones.push_back(cone);
  }
  return fan;
}

Fan blowup_p2_fan() {
  // Variables (x, y, z, v) = (n1, n2, n0, n3).
  Fan fan;
  fan.dim = 2;
  fan.rays.resize(4, 2);
  fan.rays << 1, 0,
              0, 1,
             -1, -1,
              1, 1;
  fan.max_cones = {{0, 2}, {1, 2}, {0, 3}, {1, 3}};
  return fan;
}

Fan blowup_p4_line_fan() {
  Fan fan;
  fan.dim = 4;
  fan.rays.resize(6, 4);
  fan.rays << -1, -1, -1, -1,
               1, 0, 0, 0,
               0, 1, 0, 0,
               0, 0, 1, 0,
               0, 0, 0, 1,
               1, 1, 1, 0;
  fan.max_cones = {
      {0, 2, 3, 4}, {0, 1, 3, 4}, {0, 1, 2, 4},  // untouched cones of P^4
      {2, 3, 4, 5}, {1, 3, 4, 5}, {1, 2, 4, 5},  // split of {1,2,3,4}
      {0, 2, 3, 5}, {0, 1, 3, 5}, {0, 1, 2, 5},  // split of {0,1,2,3}
  };
  return fan;
}

ToricModel model_from_fan(std::string name, Fan fan) {
  validate(fan);
  ToricModel m;
  m.name = std::move(name);
  m.grading = grading_from_fan(fan);
  m.exceptional = exceptional_set(fan);
  m.fan = std::move(fan);
  return m;
}

ToricModel weighted_projective(const std::vector<std::int64_t>& weights) {
  if (weights.size() < 2) throw Error(ErrorCode::InvalidParams, "weighted(...) needs d >= 1");
  ToricModel m;
  m.name = "weighted(";
  m.grading.weights.resize(static_cast<Eigen::Index>(weights.size()), 1);
  IndexSet all;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 1) throw Error(ErrorCode::InvalidParams, "weights must be >= 1");
    m.grading.weights(static_cast<Eigen::Index>(i), 0) = weights[i];
    m.name += (i ? "," : "") + std::to_string(weights[i]);
    all.push_back(static_cast<int>(i));
  }
  m.name += ")";
  m.exceptional.strata = {all};
  return m;
}

ToricModel builtin_model(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s.push_back(c);
  }
  std::string name = s;
  std::vector<std::int64_t> args;
  if (auto open = s.find('('); open != std::string::npos) {
    if (s.back() != ')') throw Error(ErrorCode::InvalidParams, "bad builtin '" + s + "'");
    name = s.substr(0, open);
    std::stringstream body(s.substr(open + 1, s.size() - open - 2));
    std::string item;
    while (std::getline(body, item, ',')) {
      try {
        std::size_t used = 0;
        args.push_back(std::stoll(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidParams, "bad argument '" + item + "' in '" + s + "'");
      }
    }
  }
  if (name == "projective") {
    if (args.size() != 1) throw Error(ErrorCode::InvalidParams, "projective(d) takes one argument");
    if (args[0] < 1 || args[0] > 15) throw Error(ErrorCode::InvalidParams, "projective(d) needs 1 <= d <= 15");
    return model_from_fan(s, projective_fan(static_cast<int>(args[0])));
  }
  if (name == "weighted") return weighted_projective(args);
  if (!args.empty()) throw Error(ErrorCode::InvalidParams, name + " takes no arguments");
  if (name == "blowup_p2") return model_from_fan(name, blowup_p2_fan());
  if (name == "blowup_p4_line") return model_from_fan(name, blowup_p4_line_fan());
  throw Error(ErrorCode::InvalidParams, "unknown builtin '" + name + "'");
}

std::vector<std::string> builtin_names() {
  return {"projective(d)", "weighted(a0,...,ad)", "blowup_p2", "blowup_p4_line"};
}

Fan parse_fan(std::string_view text) {
  Fan fan;
  std::vector<std::vector<std::int64_t>> rays;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::vector<std::int64_t> nums;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        nums.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidFan, "line " + std::to_string(lineno) + ": bad integer '" + tok + "'");
      }
    }
    if (key == "dim") {
      if (nums.size() != 1) throw Error(ErrorCode::InvalidFan, "line " + std::to_string(lineno) + ": dim takes one value");
      fan.dim = static_cast<int>(nums[0]);
    } else if (key == "ray") {
      rays.push_back(nums);
    } else if (key == "cone") {
      fan.max_cones.emplace_back(nums.begin(), nums.end());
    } else {
      throw Error(ErrorCode::InvalidFan, "line " + std::to_string(lineno) + ": unknown keyword '" + key + "'");
    }
  }
  fan.rays.resize(static_cast<Eigen::Index>(rays.size()), fan.dim);
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (static_cast<int>(rays[i].size()) != fan.dim) {
      throw Error(ErrorCode::InvalidFan, "ray " + std::to_string(i) + " has wrong length");
    }
    for (int j = 0; j < fan.dim; ++j) fan.rays(static_cast<Eigen::Index>(i), j) = rays[i][j];
  }
  return fan;
}

Fan load_fan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidParams, "cannot open fan file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_fan(buf.str());
}

}  // namespace toric
