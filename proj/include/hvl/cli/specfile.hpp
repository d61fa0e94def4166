#pragma once

// JSON spec files. Three kinds:
//   {"kind": "poly", "p": 2, "m": 4, "coeffs": [[1, 0], ...]}         a_p, a_{p+1}, ...
//   {"kind": "rational_hprime", "p": 1, "m": 7,
//    "numer": [[1, 0]], "denom": [[1, 0], ..., [1, 0]]}               ascending from z^0
//   {"kind": "preset", "preset": "example2", "c": [0, 1]}              optional p, m, c
// Complex numbers are [re, im] pairs. Unknown fields are rejected.

#include <string>
#include <vector>

#include "hvl/fncore.hpp"
#include "json.hpp"

namespace hvl::cli {

/// Malformed spec document; the message names the offending field.
class SpecError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

struct PresetOverrides {
  std::optional<int> p;
  std::optional<int> m;
  std::optional<cplx> c;
};

/// example1: h = z^p (p = 2, m = 4).
/// example2: h = z^p + c z^(p+1) / (p+1) (p = 3, m = 2, c = i), with
///           |c| <= p - 2p / (2p + m + 1).
/// star:     h' = p z^(p-1) / (1 + z^(2p+m-1)) (p = 2, m = 2).
/// octagon:  the star family with p = 1 (m = 7); m selects the polygon.
HarmonicMapSpec make_preset(const std::string& name, const PresetOverrides& o = {});

const std::vector<std::string>& preset_names();

HarmonicMapSpec parse_spec(const nlohmann::json& doc);

/// `preset:<name>` or a path to a JSON spec file. I/O failures raise SpecError.
HarmonicMapSpec load_spec(const std::string& source);

/// Explicit "poly" or "rational_hprime" document for the map.
nlohmann::json spec_to_json(const HarmonicMapSpec& map);

nlohmann::json complex_to_json(cplx z);

}  // namespace hvl::cli
