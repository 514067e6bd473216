// Command-line front end: validate | orders | blowup | resolve | cobound |
// cone-normals. Reads one JSON input document, emits one deterministic
// output document (JSON by default, a text rendering with --format text).
// Exit codes: 0 success, 1 domain failure, 2 input/schema failure, 3 step
// guard exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "torb/json_io.hpp"

namespace {

using namespace torb;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw SchemaError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw SchemaError("cannot open output file: " + path);
  f << content;
}

struct CommonOpts {
  std::string input;
  std::string output;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--input,-i", opts.input, "input document path")->required();
  cmd->add_option("--output,-o", opts.output, "write the document here instead of stdout");
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
}

void emit(const CommonOpts& opts, const OrderedJson& doc, const std::string& text) {
  const std::string payload = opts.format == "json" ? dump_document(doc) : text;
  if (opts.output.empty())
    std::cout << payload;
  else
    write_file(opts.output, payload);
}

InputData load(const CommonOpts& opts) { return parse_input(read_file(opts.input)); }

const RCharPair& as_rcharpair(const InputData& in, const std::string& command) {
  if (in.kind != "rcharpair")
    throw SchemaError("command '" + command + "' requires kind 'rcharpair', got '" + in.kind +
                      "'");
  return in.rpair;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Facets on the command line: names or 0-based indices, comma separated.
Face parse_face(const SimplePolytope& p, const std::string& arg) {
  std::vector<int> facets;
  for (const std::string& token : split(arg, ',')) {
    int found = -1;
    for (int i = 0; i < p.facet_count(); ++i)
      if (p.facet_names[i] == token) {
        found = i;
        break;
      }
    if (found < 0) {
      try {
        std::size_t used = 0;
        found = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw DomainError("unknown facet '" + token + "'");
      }
      if (found < 0 || found >= p.facet_count())
        throw DomainError("facet index out of range: " + token);
    }
    facets.push_back(found);
  }
  return Face(facets);
}

Rat parse_rat_token(const std::string& token) {
  std::size_t slash = token.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(token));
    Int num(token.substr(0, slash));
    Int den(token.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + token + "'");
    return Rat(num) / Rat(den);
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception&) {
    throw DomainError("not a rational: '" + token + "'");
  }
}

IntVec parse_int_vector(const std::string& arg) {
  IntVec out;
  for (const std::string& token : split(arg, ',')) {
    try {
      out.emplace_back(token);
    } catch (const std::exception&) {
      throw DomainError("not an integer: '" + token + "'");
    }
  }
  return out;
}

std::string vec_text(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

std::string face_text(const SimplePolytope& p, const Face& f) {
  std::string s = detail::join_ints(f.facets) + " (";
  for (std::size_t i = 0; i < f.facets.size(); ++i) {
    if (i) s += ",";
    s += p.facet_names[f.facets[i]];
  }
  return s + ")";
}

std::string coeff_text(const RatVec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += rat_to_string(v[i]);
  }
  return s;
}

OrderedJson face_entry(const SimplePolytope& p, const Face& f, const Int& order) {
  OrderedJson e;
  e["face"] = f.facets;
  OrderedJson names = OrderedJson::array();
  for (int i : f.facets) names.push_back(p.facet_names[i]);
  e["names"] = names;
  e["order"] = int_to_json(order);
  return e;
}

std::string validation_text(const ValidationReport& rep) {
  if (rep.ok()) return "result: ok\n";
  std::string s = "result: invalid\n";
  for (const ValidationIssue& issue : rep.issues) s += "  " + issue.rule + ": " + issue.detail + "\n";
  return s;
}

// --- commands ---

struct ValidateOpts {
  CommonOpts common;
  std::string kind;  // optional assertion
};

int cmd_validate(const ValidateOpts& opts) {
  InputData in = load(opts.common);
  if (!opts.kind.empty() && opts.kind != in.kind)
    throw SchemaError("document kind '" + in.kind + "' does not match --kind '" + opts.kind +
                      "'");
  ValidationReport rep;
  if (in.kind == "polytope")
    rep = validate(in.polytope);
  else if (in.kind == "rcharpair")
    rep = validate_r_characteristic(in.rpair);
  else if (in.kind == "hypercharpair")
    rep = validate_hyper_characteristic(in.hpair);
  else
    rep = validate_embedded(in.embedded);

  OrderedJson config;
  config["command"] = "validate";
  config["format"] = opts.common.format;
  if (!opts.kind.empty()) config["kind"] = opts.kind;
  OrderedJson payload;
  payload["checked_kind"] = in.kind;
  payload["validation"] = validation_to_json(rep);

  std::string text = "kind: " + in.kind + "\n" + validation_text(rep);
  emit(opts.common, make_output_document("report", config, payload), text);
  return rep.ok() ? 0 : 1;
}

struct OrdersOpts {
  CommonOpts common;
  std::string face;
  int codim = -1;
  bool all = false;
};

int cmd_orders(const OrdersOpts& opts) {
  InputData in = load(opts.common);
  const RCharPair& pair = as_rcharpair(in, "orders");
  require_r_characteristic(pair);

  const int selectors =
      (opts.face.empty() ? 0 : 1) + (opts.codim >= 0 ? 1 : 0) + (opts.all ? 1 : 0);
  if (selectors != 1)
    throw SchemaError("orders needs exactly one of --face, --codim, or --all");

  OrderedJson config;
  config["command"] = "orders";
  config["format"] = opts.common.format;

  if (opts.all) {
    config["selector"] = "all";
    SingularLocus locus = singular_locus(pair);
    OrderedJson payload;
    payload["entries"] = OrderedJson::array();
    std::string text = "singular locus: " + std::to_string(locus.entries.size()) + " entries\n";
    for (const SingularFaceEntry& e : locus.entries) {
      OrderedJson entry = face_entry(pair.polytope, e.face, e.order);
      entry["maximal"] = e.maximal;
      payload["entries"].push_back(entry);
      text += "face " + face_text(pair.polytope, e.face) + ": order " + e.order.str() +
              (e.maximal ? " [maximal]" : "") + "\n";
    }
    emit(opts.common, make_output_document("locus", config, payload), text);
    return 0;
  }

  std::vector<Face> faces;
  if (!opts.face.empty()) {
    config["selector"] = "face";
    config["face"] = opts.face;
    faces.push_back(parse_face(pair.polytope, opts.face));
  } else {
    if (opts.codim < 1 || opts.codim > pair.polytope.dim)
      throw DomainError("codimension out of range: " + std::to_string(opts.codim));
    config["selector"] = "codim";
    config["codim"] = opts.codim;
    faces = faces_of_codim(pair.polytope, opts.codim);
  }

  OrderedJson payload;
  payload["entries"] = OrderedJson::array();
  std::string text;
  for (const Face& f : faces) {
    Int order = face_order(pair, f);
    payload["entries"].push_back(face_entry(pair.polytope, f, order));
    text += "face " + face_text(pair.polytope, f) + ": order " + order.str() + "\n";
  }
  emit(opts.common, make_output_document("orders", config, payload), text);
  return 0;
}

struct BlowupOpts {
  CommonOpts common;
  std::string face;
  std::string point = "auto";
};

BlowupChoice explicit_choice(const RCharPair& pair, const Face& face, const std::string& arg) {
  std::vector<std::string> tokens = split(arg, ',');
  if (tokens.size() != face.codim())
    throw DomainError("expected " + std::to_string(face.codim()) + " coefficients, got " +
                      std::to_string(tokens.size()));
  BlowupChoice choice;
  choice.face = face;
  for (const std::string& t : tokens) {
    Rat c = parse_rat_token(t);
    if (c == 0) throw DomainError("zero coefficient in explicit point");
    if (c < 0 || c >= 1)
      throw DomainError("coefficient out of range (0,1): " + rat_to_string(c));
    choice.coefficients.push_back(c);
  }
  IntMat m = face_matrix(pair, face);
  RatVec image = mat_vec(m, choice.coefficients);
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (denominator(image[i]) != 1)
      throw DomainError("explicit point gives a non-integral lattice point (coordinate " +
                        std::to_string(i) + " = " + rat_to_string(image[i]) + ")");
    choice.lattice_point.push_back(numerator(image[i]));
  }
  if (is_zero_vector(choice.lattice_point))
    throw DomainError("explicit point maps to the zero lattice point");
  PrimitiveDecomposition pd = primitive_decompose(choice.lattice_point);
  choice.d = pd.scale;
  choice.new_vector = std::move(pd.direction);
  choice.interior = true;
  return choice;
}

int cmd_blowup(const BlowupOpts& opts) {
  InputData in = load(opts.common);
  const RCharPair& pair = as_rcharpair(in, "blowup");
  require_r_characteristic(pair);
  Face face = parse_face(pair.polytope, opts.face);

  BlowupChoice choice = opts.point == "auto" ? choose_lattice_point(pair, face)
                                             : explicit_choice(pair, face, opts.point);
  PairBlowupResult res = blowup_pair(pair, choice);

  OrderedJson config;
  config["command"] = "blowup";
  config["format"] = opts.common.format;
  config["face"] = opts.face;
  config["point"] = opts.point;

  OrderedJson payload;
  payload["choice"] = choice_to_json(choice);
  payload["pair"] = rcharpair_to_json(res.pair);
  payload["provenance"] = {{"source_vertex", res.provenance.source_vertex},
                           {"dropped_facet", res.provenance.dropped_facet}};

  const SimplePolytope& q = res.pair.polytope;
  std::string text = "face " + face_text(pair.polytope, face) + "\n";
  text += "coefficients: " + coeff_text(choice.coefficients) + "\n";
  text += "lattice point: " + vec_text(choice.lattice_point) + " = " + choice.d.str() + " * " +
          vec_text(choice.new_vector) + "\n";
  text += "new facet: " + q.facet_names.back() + " -> " + vec_text(choice.new_vector) + "\n";
  text += "result: " + std::to_string(q.facet_count()) + " facets, " +
          std::to_string(q.vertex_count()) + " vertices, characteristic: " +
          (is_characteristic(res.pair) ? "yes" : "no") + "\n";
  emit(opts.common, make_output_document("blowup_result", config, payload), text);
  return 0;
}

struct ResolveOpts {
  CommonOpts common;
  long long max_steps = 0;
  std::string face_rule = "max-order-then-lex";
  std::string point_rule = "min-sum-then-lex";
  std::string emit_trace;
};

ResolutionConfig resolution_config(long long max_steps, const std::string& face_rule) {
  ResolutionConfig config;
  config.max_steps = max_steps;
  config.face_rule =
      face_rule == "lex-only" ? FaceRule::kLexOnly : FaceRule::kMaxOrderThenLex;
  return config;
}

std::string trace_text(const ResolutionTrace& trace) {
  std::string text = "steps: " + std::to_string(trace.steps.size()) +
                     " (face rule: " + to_string(trace.face_rule) +
                     ", point rule: " + to_string(trace.point_rule) +
                     ", guard: " + std::to_string(trace.max_steps_effective) + ")\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const ResolutionStep& s = trace.steps[i];
    const SimplePolytope& before =
        (i == 0 ? trace.initial : trace.steps[i - 1].after).polytope;
    text += "step " + std::to_string(i) + ": face " + face_text(before, s.choice.face) +
            ", order " + s.face_order_before.str() + ", point " +
            vec_text(s.choice.lattice_point) + ", new facet " +
            s.after.polytope.facet_names.back() + " -> " + vec_text(s.choice.new_vector) + "\n";
  }
  const RCharPair& fin = trace.final_pair;
  text += "final: " + std::to_string(fin.polytope.facet_count()) + " facets, " +
          std::to_string(fin.polytope.vertex_count()) + " vertices, characteristic: " +
          (singular_locus(fin).empty() ? "yes" : "no") + "\n";
  return text;
}

int cmd_resolve(const ResolveOpts& opts) {
  InputData in = load(opts.common);
  const RCharPair& pair = as_rcharpair(in, "resolve");
  ResolutionConfig config = resolution_config(opts.max_steps, opts.face_rule);

  OrderedJson config_echo;
  config_echo["command"] = "resolve";
  config_echo["format"] = opts.common.format;
  config_echo["max_steps"] = opts.max_steps;
  config_echo["face_rule"] = opts.face_rule;
  config_echo["point_rule"] = opts.point_rule;

  ResolutionTrace trace;
  try {
    trace = resolve(pair, config);
  } catch (const GuardExceededError& e) {
    if (!opts.emit_trace.empty())
      write_file(opts.emit_trace, dump_document(make_output_document(
                                      "trace", config_echo, trace_to_json(e.partial_trace()))));
    throw;
  }

  OrderedJson doc = make_output_document("trace", config_echo, trace_to_json(trace));
  if (!opts.emit_trace.empty()) write_file(opts.emit_trace, dump_document(doc));
  emit(opts.common, doc, trace_text(trace));
  return 0;
}

struct CoboundOpts {
  CommonOpts common;
  std::string transverse = "auto";
  long long max_steps = 0;
  std::string face_rule = "max-order-then-lex";
  std::string emit_certificate;
};

int cmd_cobound(const CoboundOpts& opts) {
  InputData in = load(opts.common);
  if (in.kind != "hypercharpair")
    throw SchemaError("command 'cobound' requires kind 'hypercharpair', got '" + in.kind + "'");
  const HyperCharPair& pair = in.hpair;

  std::optional<IntVec> transverse;
  if (opts.transverse != "auto") transverse = parse_int_vector(opts.transverse);

  CobordismCertificate cert =
      cobound(pair, resolution_config(opts.max_steps, opts.face_rule), transverse);

  OrderedJson config;
  config["command"] = "cobound";
  config["format"] = opts.common.format;
  config["transverse"] = opts.transverse;
  config["max_steps"] = opts.max_steps;
  config["face_rule"] = opts.face_rule;

  OrderedJson doc = make_output_document("certificate", config, certificate_to_json(cert));
  if (!opts.emit_certificate.empty()) write_file(opts.emit_certificate, dump_document(doc));

  std::string text = "transverse vector: " + vec_text(cert.transverse_vector) + "\n";
  text += "prism: " + std::to_string(cert.prism.polytope.facet_count()) + " facets (bottom " +
          std::to_string(cert.bottom_facet) + ", top " + std::to_string(cert.top_facet) + ")\n";
  text += "steps: " + std::to_string(cert.trace.steps.size()) +
          " (all contain a cap facet: " + (cert.all_steps_contain_cap ? "yes" : "no") + ")\n";
  const RCharPair& fin = cert.trace.final_pair;
  text += "final: " + std::to_string(fin.polytope.facet_count()) + " facets, " +
          std::to_string(fin.polytope.vertex_count()) + " vertices, characteristic: yes\n";
  emit(opts.common, doc, text);
  return 0;
}

int cmd_cone_normals(const CommonOpts& common) {
  InputData in = parse_input(read_file(common.input));
  if (in.kind != "embedded_polytope")
    throw SchemaError("command 'cone-normals' requires kind 'embedded_polytope', got '" +
                      in.kind + "'");
  ConeNormalResult res = cone_hyper_characteristic(in.embedded);

  OrderedJson config;
  config["command"] = "cone-normals";
  config["format"] = common.format;
  OrderedJson payload;
  payload["pair"] = hypercharpair_to_json(res.pair);
  payload["validation"] = validation_to_json(res.validation);

  std::string text;
  for (int e = 0; e < res.pair.polytope.facet_count(); ++e)
    text += res.pair.polytope.facet_names[e] + ": " + vec_text(res.pair.vectors[e]) + "\n";
  text += validation_text(res.validation);
  emit(common, make_output_document("report", config, payload), text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact singularity orders, blowup resolutions, and cobordism certificates "
               "for characteristic pairs"};
  app.require_subcommand(1);

  ValidateOpts validate_opts;
  CLI::App* validate_cmd = app.add_subcommand("validate", "check a document's invariants");
  add_common(validate_cmd, validate_opts.common);
  validate_cmd->add_option("--kind", validate_opts.kind,
                           "require the document to have this kind");

  OrdersOpts orders_opts;
  CLI::App* orders_cmd = app.add_subcommand("orders", "singularity orders of faces");
  add_common(orders_cmd, orders_opts.common);
  orders_cmd->add_option("--face", orders_opts.face, "one face: facet names or indices");
  orders_cmd->add_option("--codim", orders_opts.codim, "all faces of this codimension");
  orders_cmd->add_flag("--all", orders_opts.all, "the singular locus with maximal flags");

  BlowupOpts blowup_opts;
  CLI::App* blowup_cmd = app.add_subcommand("blowup", "truncate one face");
  add_common(blowup_cmd, blowup_opts.common);
  blowup_cmd->add_option("--face", blowup_opts.face, "face: facet names or indices")
      ->required();
  blowup_cmd->add_option("--point", blowup_opts.point,
                         "auto or explicit coefficients c1,c2,...");

  ResolveOpts resolve_opts;
  CLI::App* resolve_cmd = app.add_subcommand("resolve", "iterate blowups until characteristic");
  add_common(resolve_cmd, resolve_opts.common);
  resolve_cmd->add_option("--max-steps", resolve_opts.max_steps,
                          "step guard (0 = ten times the initial order sum)");
  resolve_cmd->add_option("--face-rule", resolve_opts.face_rule, "face selection rule")
      ->check(CLI::IsMember({"max-order-then-lex", "lex-only"}));
  resolve_cmd->add_option("--point-rule", resolve_opts.point_rule, "point selection rule")
      ->check(CLI::IsMember({"min-sum-then-lex"}));
  resolve_cmd->add_option("--emit-trace", resolve_opts.emit_trace,
                          "also write the full trace document to this path");

  CoboundOpts cobound_opts;
  CLI::App* cobound_cmd =
      app.add_subcommand("cobound", "build and resolve the capped prism over a boundary pair");
  add_common(cobound_cmd, cobound_opts.common);
  cobound_cmd->add_option("--transverse", cobound_opts.transverse,
                          "auto or an explicit vector a1,a2,...");
  cobound_cmd->add_option("--max-steps", cobound_opts.max_steps,
                          "step guard (0 = ten times the initial order sum)");
  cobound_cmd->add_option("--face-rule", cobound_opts.face_rule, "face selection rule")
      ->check(CLI::IsMember({"max-order-then-lex", "lex-only"}));
  cobound_cmd->add_option("--emit-certificate", cobound_opts.emit_certificate,
                          "also write the certificate document to this path");

  CommonOpts cone_opts;
  CLI::App* cone_cmd =
      app.add_subcommand("cone-normals", "outward normals of a coned embedded polytope");
  add_common(cone_cmd, cone_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(validate_opts);
    if (orders_cmd->parsed()) return cmd_orders(orders_opts);
    if (blowup_cmd->parsed()) return cmd_blowup(blowup_opts);
    if (resolve_cmd->parsed()) return cmd_resolve(resolve_opts);
    if (cobound_cmd->parsed()) return cmd_cobound(cobound_opts);
    if (cone_cmd->parsed()) return cmd_cone_normals(cone_opts);
    std::cerr << "error: no command selected\n";
    return 2;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const GuardExceededError& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
