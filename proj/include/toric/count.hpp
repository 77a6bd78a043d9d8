#pragma once

// Exhaustive point counts over F_q^rho and the congruence checks built on them.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toric/fan.hpp"
#include "toric/poly.hpp"
#include "toric/quintic.hpp"

namespace toric {

struct CountOptions {
  static constexpr std::uint64_t kDefaultWorkCap = 1'000'000'000;

  std::uint64_t work_cap = kDefaultWorkCap;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Work cap from TORIC_WORK_CAP if set, else the default.
CountOptions default_count_options();

/// #{x in F_q^rho : P(x) = 0}. Throws CapExceeded when q^rho > work_cap.
Integer affine_count(const FpPoly& p, const CountOptions& opts = {});

/// Zeros of P with x_i = 0 for every bit i of `zero_mask`, counted over the
/// remaining coordinates.
Integer restricted_count(const FpPoly& p, std::uint64_t zero_mask, const CountOptions& opts = {});

/// #{x in Z(F_q) : P(x) = 0}, inclusion-exclusion over the strata.
Integer exceptional_on_hypersurface(const FpPoly& p, const ExceptionalSet& z,
                                    const CountOptions& opts = {});

/// (N_affine - N_exceptional) / (q-1)^r, exact.
Integer toric_count_quotient(const FpPoly& p, const ToricModel& model, const CountOptions& opts = {});

/// Orbits of (F_q^*)^r on the zeros outside Z, by canonical representatives.
Integer toric_count_orbits(const FpPoly& p, const ToricModel& model, const CountOptions& opts = {});

enum class CongruenceKind { ChevalleyWarning, ChevalleyWarningProjective, Ax, Esnault };

std::string to_string(CongruenceKind kind);

struct CongruenceReport {
  CongruenceKind kind = CongruenceKind::ChevalleyWarning;
  std::uint32_t q = 0, p = 0, f = 0;
  std::string field;
  std::string grading;
  std::string polynomial;
  std::vector<std::int64_t> degree;
  Integer n_affine = 0;
  Integer n_exceptional = 0;
  std::optional<Integer> n_toric;
  Integer modulus = 1;
  Integer residue = 0;
  Integer expected = 0;
  bool pass = false;
  std::optional<std::int64_t> mu;
  std::optional<std::int64_t> classical_mu;
  std::vector<int> excluded_components;
  std::optional<bool> affine_divisible_by_q;
  std::chrono::nanoseconds elapsed{0};
};

/// N = 0 mod p, given some d_j < a_j.
CongruenceReport check_cw(const FpPoly& p, const GradingData& g, const CountOptions& opts = {});

/// (N - 1)/(q - 1) = 1 mod p for a form of degree <= n in n+1 variables.
CongruenceReport check_cw_projective(const FpPoly& p, const CountOptions& opts = {});

/// N = 0 mod q^mu.
CongruenceReport check_ax(const FpPoly& p, const GradingData& g, const CountOptions& opts = {});

/// #X(F_q) = 1 mod q for the strict transform on the blowup of P^4 along a line.
CongruenceReport check_esnault(const QuinticInstance& inst, const CountOptions& opts = {});

}  // namespace toric
