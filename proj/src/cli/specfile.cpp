#include "hvl/cli/specfile.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace hvl::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& doc, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.count(key)) throw SpecError("unknown field '" + key + "'");
  }
}

const json& require(const json& doc, const std::string& field) {
  auto it = doc.find(field);
  if (it == doc.end()) throw SpecError("missing field '" + field + "'");
  return *it;
}

int as_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw SpecError("field '" + field + "' must be an integer");
  return v.get<int>();
}

cplx as_complex(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw SpecError("field '" + field + "' must be a [re, im] pair");
  }
  const cplx z(v[0].get<double>(), v[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw SpecError("field '" + field + "' is not finite");
  }
  return z;
}

std::vector<cplx> as_complex_list(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty()) {
    throw SpecError("field '" + field + "' must be a non-empty list of [re, im] pairs");
  }
  std::vector<cplx> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_complex(v[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

HarmonicMapSpec star_family(int p, int m) {
  if (p < 1) throw ParameterError("p must be >= 1");
  if (m < 2) throw ParameterError("m must be >= 2");
  const int n = 2 * p + m - 1;
  std::vector<cplx> numer(static_cast<std::size_t>(p), cplx{});
  numer.back() = static_cast<double>(p);
  std::vector<cplx> denom(static_cast<std::size_t>(n) + 1, cplx{});
  denom.front() = 1.0;
  denom.back() = 1.0;
  return derive_g(FunctionSpec::rational_deriv(p, Polynomial(numer), Polynomial(denom)), m);
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"example1", "example2", "star", "octagon"};
  return names;
}

HarmonicMapSpec make_preset(const std::string& name, const PresetOverrides& o) {
  if (name == "example1") {
    if (o.c) throw SpecError("preset 'example1' takes no 'c'");
    const int p = o.p.value_or(2);
    if (p < 1) throw ParameterError("p must be >= 1");
    return derive_g(FunctionSpec::poly_series(p, {cplx{1.0, 0.0}}), o.m.value_or(4));
  }
  if (name == "example2") {
    const int p = o.p.value_or(3);
    const int m = o.m.value_or(2);
    const cplx c = o.c.value_or(cplx{0.0, 1.0});
    if (p < 1) throw ParameterError("p must be >= 1");
    const double bound = p - 2.0 * p / (2.0 * p + m + 1.0);
    if (std::abs(c) > bound + 1e-12) {
      std::ostringstream os;
      os << "preset 'example2': |c| = " << std::abs(c) << " exceeds the bound " << bound;
      throw ParameterError(os.str());
    }
    return derive_g(FunctionSpec::poly_series(p, {cplx{1.0, 0.0}, c / (p + 1.0)}), m);
  }
  if (name == "star") {
    if (o.c) throw SpecError("preset 'star' takes no 'c'");
    return star_family(o.p.value_or(2), o.m.value_or(2));
  }
  if (name == "octagon") {
    if (o.c) throw SpecError("preset 'octagon' takes no 'c'");
    if (o.p && *o.p != 1) throw SpecError("preset 'octagon' fixes p = 1");
    return star_family(1, o.m.value_or(7));
  }
  throw SpecError("unknown preset '" + name + "'");
}

HarmonicMapSpec parse_spec(const json& doc) {
  if (!doc.is_object()) throw SpecError("spec must be a JSON object");
  const json& kind_v = require(doc, "kind");
  if (!kind_v.is_string()) throw SpecError("field 'kind' must be a string");
  const std::string kind = kind_v.get<std::string>();

  if (kind == "poly") {
    reject_unknown(doc, {"kind", "p", "m", "coeffs"});
    const int p = as_int(require(doc, "p"), "p");
    const int m = as_int(require(doc, "m"), "m");
    auto coeffs = as_complex_list(require(doc, "coeffs"), "coeffs");
    if (coeffs.front() != cplx{1.0, 0.0}) {
      throw SpecError("field 'coeffs[0]': normalization violated (a_p must be [1, 0])");
    }
    return derive_g(FunctionSpec::poly_series(p, std::move(coeffs)), m);
  }
  if (kind == "rational_hprime") {
    reject_unknown(doc, {"kind", "p", "m", "numer", "denom"});
    const int p = as_int(require(doc, "p"), "p");
    const int m = as_int(require(doc, "m"), "m");
    Polynomial numer(as_complex_list(require(doc, "numer"), "numer"));
    Polynomial denom(as_complex_list(require(doc, "denom"), "denom"));
    return derive_g(FunctionSpec::rational_deriv(p, std::move(numer), std::move(denom)), m);
  }
  if (kind == "preset") {
    reject_unknown(doc, {"kind", "preset", "p", "m", "c"});
    const json& name = require(doc, "preset");
    if (!name.is_string()) throw SpecError("field 'preset' must be a string");
    PresetOverrides o;
    if (doc.contains("p")) o.p = as_int(doc["p"], "p");
    if (doc.contains("m")) o.m = as_int(doc["m"], "m");
    if (doc.contains("c")) o.c = as_complex(doc["c"], "c");
    return make_preset(name.get<std::string>(), o);
  }
  throw SpecError("field 'kind': unknown kind '" + kind + "'");
}

HarmonicMapSpec load_spec(const std::string& source) {
  static const std::string prefix = "preset:";
  if (source.rfind(prefix, 0) == 0) return make_preset(source.substr(prefix.size()));
  std::ifstream in(source);
  if (!in) throw SpecError("cannot open spec file '" + source + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError("malformed JSON in '" + source + "': " + e.what());
  }
  return parse_spec(doc);
}

json complex_to_json(cplx z) {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return json::array({num(z.real()), num(z.imag())});
}

json spec_to_json(const HarmonicMapSpec& map) {
  const FunctionSpec& h = map.h();
  json doc;
  auto list = [](const std::vector<cplx>& cs) {
    json arr = json::array();
    for (const cplx& c : cs) arr.push_back(complex_to_json(c));
    return arr;
  };
  if (const PolySeries* s = h.series()) {
    doc["kind"] = "poly";
    doc["p"] = s->p;
    doc["m"] = map.m();
    doc["coeffs"] = list(s->coeffs);
  } else {
    const RationalDeriv* r = h.rational();
    doc["kind"] = "rational_hprime";
    doc["p"] = r->p;
    doc["m"] = map.m();
    doc["numer"] = list(r->numer.coeffs());
    doc["denom"] = list(r->denom.coeffs());
  }
  return doc;
}

}  // namespace hvl::cli
