#pragma once

// Seeded random search for maps that satisfy the boundary margin condition
// but cover some value more than p times.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hvl/valence.hpp"
#include "json.hpp"

namespace hvl::cli {

struct SweepConfig {
  int trials = 50;
  int p = 1;
  int m = 2;
  /// Highest exponent of h; at least p + 1. 0 selects p + 2.
  int max_degree = 0;
  double coefficient_scale = 0.2;
  std::uint64_t seed = 42;
  double margin_requirement = 0.0;
  double radius = 0.999;
  int grid_w = 64;
  int grid_h = 64;

  int degree() const { return max_degree == 0 ? p + 2 : max_degree; }
  void validate() const;
};

struct SweepSample {
  int index = 0;
  std::vector<cplx> coeffs;  // a_p = 1, a_{p+1}, ..., a_max_degree
  std::optional<double> margin;
  std::string rejection;  // empty when kept
  bool kept = false;
  int max_valence = 0;
  bool consistent_with_p = false;
  bool candidate = false;
  std::string scan_error;
};

struct SweepReport {
  SweepConfig config;
  std::vector<SweepSample> samples;
  int kept = 0;
  int candidates = 0;
  int scan_errors = 0;
};

/// Coefficients a_n, n = p+1..max_degree, are scale * (u + i v) with u, v
/// uniform on [-1, 1) drawn in order from one mt19937_64 stream.
std::vector<std::vector<cplx>> sweep_coefficients(const SweepConfig& cfg);

SweepReport run_sweep(const SweepConfig& cfg);

nlohmann::json to_json(const SweepReport& r);

}  // namespace hvl::cli
