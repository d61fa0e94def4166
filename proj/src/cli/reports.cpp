#include "hvl/cli/reports.hpp"

#include <cmath>

#include "hvl/cli/specfile.hpp"

namespace hvl::cli {

using nlohmann::json;

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const CriterionReport& r) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["report"] = "criterion";
  doc["p"] = r.p;
  doc["m"] = r.m;
  doc["expected_roots"] = 2 * r.p + r.m - 1;
  json roots = json::array();
  for (const RootRecord& rec : r.roots) {
    roots.push_back({{"k", rec.k},
                     {"t", num(rec.t)},
                     {"image", complex_to_json(rec.f_value_at_root)},
                     {"suspected_tangency", rec.suspected_tangency}});
  }
  doc["roots"] = roots;
  json counts = json::object();
  for (const auto& [k, n] : r.per_k_counts) counts[std::to_string(k)] = n;
  doc["per_k_counts"] = counts;
  doc["total_roots"] = r.total_roots;
  doc["h_nonvanishing"] = r.h_nonvanishing;
  doc["h_min_modulus"] = r.h_min_modulus ? num(*r.h_min_modulus) : json(nullptr);
  doc["h_winding"] = r.h_winding ? json(*r.h_winding) : json(nullptr);
  doc["remark_margin"] = r.remark_margin ? num(*r.remark_margin) : json(nullptr);
  doc["hypotheses_hold"] = r.hypotheses_hold;
  doc["theorem_applies"] = r.theorem_applies;
  doc["any_tangency"] = r.any_tangency;
  doc["notes"] = r.notes;
  return doc;
}

json to_json(const CuspSet& c) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["report"] = "cusps";
  json arr = json::array();
  for (const Cusp& cusp : c.cusps) {
    arr.push_back({{"k", cusp.k}, {"t", num(cusp.t)}, {"image", complex_to_json(cusp.image)}});
  }
  doc["cusps"] = arr;
  doc["warnings"] = c.warnings;
  return doc;
}

json to_json(const ValenceReport& r) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["report"] = "valence";
  doc["radius"] = r.radius;
  doc["p"] = r.p;
  doc["grid"] = {{"width", r.grid_w},
                 {"height", r.grid_h},
                 {"min", complex_to_json({r.box_min_re, r.box_min_im})},
                 {"max", complex_to_json({r.box_max_re, r.box_max_im})}};
  doc["valid_probes"] = r.results.size();
  doc["indeterminate_probes"] = r.indeterminate;
  doc["max_valence"] = r.max_valence;
  json at = json::array();
  for (const cplx& w : r.attained_at) at.push_back(complex_to_json(w));
  doc["attained_at"] = at;
  doc["consistent_with_p"] = r.consistent_with_p;
  json hist = json::object();
  std::map<int, std::size_t> counts;
  for (const WindingResult& w : r.results) ++counts[w.winding];
  for (const auto& [k, n] : counts) hist[std::to_string(k)] = n;
  doc["winding_histogram"] = hist;
  json results = json::array();
  for (const WindingResult& w : r.results) {
    results.push_back({{"w", complex_to_json(w.w)},
                       {"winding", w.winding},
                       {"min_curve_distance", num(w.min_curve_distance)}});
  }
  doc["results"] = results;
  return doc;
}

json to_json(const CrossCheckResult& r) {
  json doc;
  doc["w"] = complex_to_json(r.preimages.w);
  doc["status"] = to_string(r.status);
  doc["winding"] = r.winding;
  doc["preimages_inside"] = r.preimages_inside;
  doc["starts"] = r.preimages.starts;
  doc["converged"] = r.preimages.converged;
  json roots = json::array();
  for (const Preimage& p : r.preimages.roots) {
    roots.push_back({{"z", complex_to_json(p.z)},
                     {"residual", num(p.residual)},
                     {"jacobian", num(p.jacobian)}});
  }
  doc["preimages"] = roots;
  return doc;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace hvl::cli
