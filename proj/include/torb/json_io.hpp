#pragma once

// Stable JSON wire format. Documents are built with a fixed key order and
// serialized with two-space indentation plus a trailing newline, so equal
// inputs and flags produce byte-identical outputs. Integers ride as JSON
// numbers up to 2^53-1 in magnitude and as decimal strings beyond that;
// rationals are always strings ("p" or "p/q" with positive q).

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "torb/charpair.hpp"
#include "torb/cobordism.hpp"
#include "torb/errors.hpp"
#include "torb/polytope.hpp"
#include "torb/resolution.hpp"

namespace torb {

using OrderedJson = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

// --- scalar encoding ---

inline OrderedJson int_to_json(const Int& v) {
  static const Int kSafeMax = (Int(1) << 53) - 1;
  if (abs_int(v) <= kSafeMax) return OrderedJson(v.convert_to<long long>());
  return OrderedJson(v.str());
}

inline std::string rat_to_string(const Rat& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline OrderedJson rat_to_json(const Rat& q) { return OrderedJson(rat_to_string(q)); }

inline Int int_from_json(const OrderedJson& j, const std::string& where) {
  if (j.is_number_integer() && !j.is_number_unsigned())
    return Int(j.get<long long>());
  if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      throw SchemaError("not a decimal integer at " + where + ": '" + j.get<std::string>() + "'");
    }
  }
  throw SchemaError("expected an integer (number or decimal string) at " + where);
}

inline Rat rat_from_json(const OrderedJson& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(int_from_json(j, where));
  if (!j.is_string()) throw SchemaError("expected a rational string at " + where);
  std::string s = j.get<std::string>();
  std::size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw SchemaError("zero denominator at " + where);
    return Rat(num) / Rat(den);
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception&) {
    throw SchemaError("not a rational at " + where + ": '" + s + "'");
  }
}

// --- structure encoding (fixed key order) ---

inline OrderedJson intvec_to_json(const IntVec& v) {
  OrderedJson a = OrderedJson::array();
  for (const Int& x : v) a.push_back(int_to_json(x));
  return a;
}

inline OrderedJson ratvec_to_json(const RatVec& v) {
  OrderedJson a = OrderedJson::array();
  for (const Rat& x : v) a.push_back(rat_to_json(x));
  return a;
}

inline OrderedJson validation_to_json(const ValidationReport& rep) {
  OrderedJson j;
  j["ok"] = rep.ok();
  j["issues"] = OrderedJson::array();
  for (const ValidationIssue& issue : rep.issues)
    j["issues"].push_back({{"rule", issue.rule}, {"detail", issue.detail}});
  return j;
}

namespace detail {

inline void put_polytope_fields(OrderedJson& doc, const SimplePolytope& p) {
  doc["dim"] = p.dim;
  doc["facets"] = p.facet_names;
  doc["vertices"] = p.vertices;
}

}  // namespace detail

inline OrderedJson polytope_to_json(const SimplePolytope& p) {
  OrderedJson doc;
  doc["kind"] = "polytope";
  detail::put_polytope_fields(doc, p);
  return doc;
}

inline OrderedJson rcharpair_to_json(const RCharPair& pair) {
  OrderedJson doc;
  doc["kind"] = "rcharpair";
  detail::put_polytope_fields(doc, pair.polytope);
  doc["vectors"] = OrderedJson::array();
  for (const IntVec& v : pair.vectors) doc["vectors"].push_back(intvec_to_json(v));
  return doc;
}

inline OrderedJson hypercharpair_to_json(const HyperCharPair& pair) {
  OrderedJson doc;
  doc["kind"] = "hypercharpair";
  detail::put_polytope_fields(doc, pair.polytope);
  doc["vectors"] = OrderedJson::array();
  for (const IntVec& v : pair.vectors) doc["vectors"].push_back(intvec_to_json(v));
  return doc;
}

inline OrderedJson embedded_to_json(const EmbeddedPolytope& ep) {
  OrderedJson doc;
  doc["kind"] = "embedded_polytope";
  detail::put_polytope_fields(doc, ep.polytope);
  doc["coordinates"] = OrderedJson::array();
  for (const RatVec& p : ep.coordinates) doc["coordinates"].push_back(ratvec_to_json(p));
  return doc;
}

inline OrderedJson choice_to_json(const BlowupChoice& c) {
  OrderedJson j;
  j["face"] = c.face.facets;
  j["coefficients"] = ratvec_to_json(c.coefficients);
  j["lattice_point"] = intvec_to_json(c.lattice_point);
  j["d"] = int_to_json(c.d);
  j["new_vector"] = intvec_to_json(c.new_vector);
  j["interior"] = c.interior;
  return j;
}

inline OrderedJson orders_to_json(const std::vector<Int>& orders) {
  OrderedJson a = OrderedJson::array();
  for (const Int& o : orders) a.push_back(int_to_json(o));
  return a;
}

inline OrderedJson step_to_json(const ResolutionStep& step) {
  OrderedJson j;
  j["face"] = step.choice.face.facets;
  j["face_order_before"] = int_to_json(step.face_order_before);
  j["before_orders"] = orders_to_json(step.before.orders);
  j["choice"] = choice_to_json(step.choice);
  j["predicted"] = OrderedJson::array();
  for (const PredictedOrder& p : step.predicted)
    j["predicted"].push_back({{"vertex", p.vertex},
                              {"facet_set", p.facet_set},
                              {"order", int_to_json(p.order)}});
  j["after"] = rcharpair_to_json(step.after);
  j["after_orders"] = orders_to_json(step.after_summary.orders);
  return j;
}

inline OrderedJson trace_to_json(const ResolutionTrace& trace) {
  OrderedJson j;
  j["initial"] = rcharpair_to_json(trace.initial);
  j["face_rule"] = to_string(trace.face_rule);
  j["point_rule"] = to_string(trace.point_rule);
  j["max_steps_effective"] = trace.max_steps_effective;
  j["step_count"] = trace.steps.size();
  j["steps"] = OrderedJson::array();
  for (const ResolutionStep& step : trace.steps) j["steps"].push_back(step_to_json(step));
  j["final_pair"] = rcharpair_to_json(trace.final_pair);
  j["characteristic"] = singular_locus(trace.final_pair).empty();
  return j;
}

inline OrderedJson certificate_to_json(const CobordismCertificate& cert) {
  OrderedJson j;
  j["boundary"] = hypercharpair_to_json(cert.boundary);
  j["transverse_vector"] = intvec_to_json(cert.transverse_vector);
  j["prism"] = rcharpair_to_json(cert.prism);
  j["bottom_facet"] = cert.bottom_facet;
  j["top_facet"] = cert.top_facet;
  j["trace"] = trace_to_json(cert.trace);
  j["locality"] = OrderedJson::array();
  for (const LocalityStep& loc : cert.locality)
    j["locality"].push_back({{"face", loc.face.facets},
                             {"contains_cap", loc.contains_cap},
                             {"cap_descendant", loc.cap_descendant}});
  j["all_steps_contain_cap"] = cert.all_steps_contain_cap;
  return j;
}

// The output envelope. `config` echoes the flags that shaped the run (never
// file paths), so identical input and flags reproduce identical bytes.
inline OrderedJson make_output_document(const std::string& kind, OrderedJson config,
                                        OrderedJson payload) {
  OrderedJson doc;
  doc["kind"] = kind;
  doc["tool_version"] = kToolVersion;
  doc["config"] = std::move(config);
  doc["payload"] = std::move(payload);
  return doc;
}

inline std::string dump_document(const OrderedJson& doc) { return doc.dump(2) + "\n"; }

// --- input documents ---

struct InputData {
  std::string kind;  // polytope | rcharpair | hypercharpair | embedded_polytope
  SimplePolytope polytope;
  RCharPair rpair;
  HyperCharPair hpair;
  EmbeddedPolytope embedded;
  std::map<std::string, std::string> metadata;
};

namespace detail {

inline const OrderedJson& require_field(const OrderedJson& j, const std::string& key,
                                        const std::string& where) {
  if (!j.is_object()) throw SchemaError("expected an object at " + where);
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError("missing field '" + key + "' at " + where);
  return *it;
}

inline std::vector<int> int_list_from_json(const OrderedJson& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError("expected an array at " + where);
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const OrderedJson& e = j[i];
    if (!e.is_number_integer())
      throw SchemaError("expected an integer at " + where + "[" + std::to_string(i) + "]");
    out.push_back(e.get<int>());
  }
  return out;
}

inline SimplePolytope polytope_from_fields(const OrderedJson& j, const std::string& where) {
  SimplePolytope p;
  const OrderedJson& dim = require_field(j, "dim", where);
  if (!dim.is_number_integer()) throw SchemaError("expected an integer at " + where + ".dim");
  p.dim = dim.get<int>();
  const OrderedJson& facets = require_field(j, "facets", where);
  if (!facets.is_array()) throw SchemaError("expected an array at " + where + ".facets");
  for (std::size_t i = 0; i < facets.size(); ++i) {
    if (!facets[i].is_string())
      throw SchemaError("expected a string at " + where + ".facets[" + std::to_string(i) + "]");
    p.facet_names.push_back(facets[i].get<std::string>());
  }
  const OrderedJson& vertices = require_field(j, "vertices", where);
  if (!vertices.is_array()) throw SchemaError("expected an array at " + where + ".vertices");
  for (std::size_t i = 0; i < vertices.size(); ++i)
    p.vertices.push_back(
        int_list_from_json(vertices[i], where + ".vertices[" + std::to_string(i) + "]"));
  return p;
}

inline std::vector<IntVec> vectors_from_json(const OrderedJson& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError("expected an array at " + where);
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const OrderedJson& row = j[i];
    std::string row_where = where + "[" + std::to_string(i) + "]";
    if (!row.is_array()) throw SchemaError("expected an array at " + row_where);
    IntVec v;
    for (std::size_t k = 0; k < row.size(); ++k)
      v.push_back(int_from_json(row[k], row_where + "[" + std::to_string(k) + "]"));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

inline InputData input_from_json(const OrderedJson& root) {
  OrderedJson doc = root;
  // outputs of kind blowup_result re-ingest: descend into payload.pair
  if (doc.is_object() && doc.contains("payload")) {
    const OrderedJson& payload = doc["payload"];
    if (!payload.is_object() || !payload.contains("pair"))
      throw SchemaError("document has a payload but no payload.pair to re-ingest");
    doc = payload["pair"];
  }

  InputData in;
  const OrderedJson& kind = detail::require_field(doc, "kind", "$");
  if (!kind.is_string()) throw SchemaError("expected a string at $.kind");
  in.kind = kind.get<std::string>();

  if (in.kind != "polytope" && in.kind != "rcharpair" && in.kind != "hypercharpair" &&
      in.kind != "embedded_polytope")
    throw SchemaError("unknown kind '" + in.kind +
                      "' (expected polytope, rcharpair, hypercharpair, or embedded_polytope)");

  SimplePolytope p = detail::polytope_from_fields(doc, "$");
  if (in.kind == "polytope") {
    in.polytope = std::move(p);
  } else if (in.kind == "rcharpair") {
    in.rpair.polytope = std::move(p);
    in.rpair.vectors = detail::vectors_from_json(detail::require_field(doc, "vectors", "$"),
                                                 "$.vectors");
  } else if (in.kind == "hypercharpair") {
    in.hpair.polytope = std::move(p);
    in.hpair.vectors = detail::vectors_from_json(detail::require_field(doc, "vectors", "$"),
                                                 "$.vectors");
  } else {
    in.embedded.polytope = std::move(p);
    const OrderedJson& coords = detail::require_field(doc, "coordinates", "$");
    if (!coords.is_array()) throw SchemaError("expected an array at $.coordinates");
    for (std::size_t i = 0; i < coords.size(); ++i) {
      const OrderedJson& row = coords[i];
      std::string row_where = "$.coordinates[" + std::to_string(i) + "]";
      if (!row.is_array()) throw SchemaError("expected an array at " + row_where);
      RatVec v;
      for (std::size_t k = 0; k < row.size(); ++k)
        v.push_back(rat_from_json(row[k], row_where + "[" + std::to_string(k) + "]"));
      in.embedded.coordinates.push_back(std::move(v));
    }
  }

  if (doc.contains("metadata")) {
    const OrderedJson& meta = doc["metadata"];
    if (!meta.is_object()) throw SchemaError("expected an object at $.metadata");
    for (const auto& [key, value] : meta.items()) {
      if (!value.is_string())
        throw SchemaError("expected a string at $.metadata." + key);
      in.metadata[key] = value.get<std::string>();
    }
  }
  return in;
}

inline InputData parse_input(const std::string& text) {
  OrderedJson root;
  try {
    root = OrderedJson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(e.what());  // includes the byte position
  }
  return input_from_json(root);
}

}  // namespace torb
