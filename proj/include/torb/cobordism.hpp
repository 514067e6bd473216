#pragma once

// Null-cobordism certificates: search for a vector transverse to every
// vertex span of a hyper characteristic pair, cap the prism Q x I with it,
// resolve, and verify that every blowup stayed local to the caps. Also
// ingests polytopes embedded in (n+1)-space and derives the hyper
// characteristic data from the outward normals of the coned facets.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "torb/charpair.hpp"
#include "torb/resolution.hpp"

namespace torb {

// n_b for every vertex b: the primitive integer normal of the hyperplane
// spanned by the vertex's n vectors in (n+1)-space.
inline std::vector<IntVec> vertex_normals(const HyperCharPair& pair) {
  std::vector<IntVec> normals;
  normals.reserve(pair.polytope.vertices.size());
  for (const auto& b : pair.polytope.vertices)
    normals.push_back(integer_kernel_normal(face_matrix(pair, Face(b))));
  return normals;
}

// First vertex whose span contains a (equivalently <a, n_b> = 0), if any.
inline std::optional<int> transverse_violation(const HyperCharPair& pair, const IntVec& a) {
  require_hyper_characteristic(pair);
  if (a.size() != static_cast<std::size_t>(pair.polytope.dim) + 1)
    throw DomainError("transverse vector has length " + std::to_string(a.size()) +
                      ", expected " + std::to_string(pair.polytope.dim + 1));
  std::vector<IntVec> normals = vertex_normals(pair);
  for (std::size_t v = 0; v < normals.size(); ++v)
    if (dot(a, normals[v]) == 0) return static_cast<int>(v);
  return std::nullopt;
}

inline bool verify_transverse(const HyperCharPair& pair, const IntVec& a) {
  return !transverse_violation(pair, a).has_value();
}

namespace detail {

// Candidate coordinate values in search order: 0, 1, -1, 2, -2, ...
inline Int unrank_value(int k) { return (k % 2 == 1) ? Int((k + 1) / 2) : Int(-(k / 2)); }

}  // namespace detail

// Deterministic search for a transverse vector: shells of increasing
// l-infinity norm; within a shell, lexicographic with the per-coordinate
// value order 0 < 1 < -1 < 2 < -2 < ...; non-primitive candidates are
// skipped. Existence is guaranteed for valid pairs (finitely many vertex
// hyperplanes cannot cover a shell), so the norm guard only catches bugs.
inline IntVec find_transverse_vector(const HyperCharPair& pair, int max_norm = 64) {
  require_hyper_characteristic(pair);
  std::vector<IntVec> normals = vertex_normals(pair);
  const int len = pair.polytope.dim + 1;

  for (int r = 1; r <= max_norm; ++r) {
    const int values = 2 * r + 1;
    std::vector<int> idx(len, 0);
    for (;;) {
      IntVec a(len);
      Int norm = 0;
      for (int i = 0; i < len; ++i) {
        a[i] = detail::unrank_value(idx[i]);
        norm = std::max(norm, abs_int(a[i]));
      }
      if (norm == r && is_primitive(a)) {
        bool ok = true;
        for (const IntVec& n : normals)
          if (dot(a, n) == 0) {
            ok = false;
            break;
          }
        if (ok) return a;
      }
      int pos = len - 1;
      while (pos >= 0 && idx[pos] == values - 1) idx[pos--] = 0;
      if (pos < 0) break;
      ++idx[pos];
    }
  }
  throw DomainError("transverse search guard exceeded (l-infinity norm " +
                    std::to_string(max_norm) + ")");
}

// The prism pair over Q: sides keep their vectors, both caps carry a.
inline RCharPair build_prism_pair(const HyperCharPair& pair, const IntVec& a) {
  require_hyper_characteristic(pair);
  if (!is_primitive(a)) throw DomainError("transverse vector is not primitive");
  if (auto v = transverse_violation(pair, a))
    throw DomainError("transverse vector fails at vertex " +
                      detail::join_ints(pair.polytope.vertices[*v]) +
                      ": it lies in the span of the vertex vectors");
  RCharPair prism;
  prism.polytope = product_with_interval(pair.polytope);
  prism.vectors = pair.vectors;
  prism.vectors.push_back(a);  // bottom
  prism.vectors.push_back(a);  // top
  require_r_characteristic(prism);
  return prism;
}

// Exhaustive smoothness check over the side faces (faces of the form E x I,
// i.e. faces avoiding both cap facets): returns the first one with order
// above 1, if any.
inline std::optional<std::pair<Face, Int>> find_rough_side_face(const RCharPair& prism,
                                                                int bottom, int top) {
  for (int k = 1; k <= prism.polytope.dim; ++k)
    for (const Face& f : faces_of_codim(prism.polytope, k)) {
      bool side = std::none_of(f.facets.begin(), f.facets.end(),
                               [&](int i) { return i == bottom || i == top; });
      if (!side) continue;
      Int order = face_order(prism, f);
      if (order != 1) return std::make_pair(f, order);
    }
  return std::nullopt;
}

// Per-step locality: contains_cap is the literal condition (the step's face
// has a cap facet in its facet set); cap_descendant also accepts facets
// created by earlier cap-local steps. The hard requirement is the
// transitive one: each blowup must stay inside the growing cap region.
struct LocalityStep {
  Face face;
  bool contains_cap = false;
  bool cap_descendant = false;

  friend bool operator==(const LocalityStep&, const LocalityStep&) = default;
};

struct CobordismCertificate {
  HyperCharPair boundary;
  IntVec transverse_vector;
  RCharPair prism;
  int bottom_facet = 0;
  int top_facet = 0;
  ResolutionConfig config;
  ResolutionTrace trace;
  std::vector<LocalityStep> locality;
  bool all_steps_contain_cap = true;  // literal flag, summarized
};

// The full pipeline: validate, pick (or accept) a transverse vector, build
// the prism, check side-face smoothness, resolve, and verify locality and
// side-vector preservation. Failures of the built-in checks indicate a bug,
// not a valid input state.
inline CobordismCertificate cobound(const HyperCharPair& pair, const ResolutionConfig& config = {},
                                    const std::optional<IntVec>& transverse = std::nullopt) {
  require_hyper_characteristic(pair);

  CobordismCertificate cert;
  cert.boundary = pair;
  cert.transverse_vector = transverse ? *transverse : find_transverse_vector(pair);
  cert.prism = build_prism_pair(pair, cert.transverse_vector);
  cert.bottom_facet = pair.polytope.facet_count();
  cert.top_facet = cert.bottom_facet + 1;
  cert.config = config;

  if (auto rough = find_rough_side_face(cert.prism, cert.bottom_facet, cert.top_facet))
    throw DomainError("side face " + detail::join_ints(rough->first.facets) + " has order " +
                      rough->second.str() + "; expected every side face to be smooth");

  cert.trace = resolve(cert.prism, config);

  std::set<int> cap_region = {cert.bottom_facet, cert.top_facet};
  for (std::size_t s = 0; s < cert.trace.steps.size(); ++s) {
    const ResolutionStep& step = cert.trace.steps[s];
    LocalityStep loc;
    loc.face = step.choice.face;
    loc.contains_cap = std::any_of(
        loc.face.facets.begin(), loc.face.facets.end(),
        [&](int i) { return i == cert.bottom_facet || i == cert.top_facet; });
    loc.cap_descendant = std::any_of(loc.face.facets.begin(), loc.face.facets.end(),
                                     [&](int i) { return cap_region.count(i) > 0; });
    if (!loc.cap_descendant)
      throw DomainError("blowup step " + std::to_string(s) + " face " +
                        detail::join_ints(loc.face.facets) + " is not local to the caps");
    cap_region.insert(step.after.polytope.facet_count() - 1);
    cert.all_steps_contain_cap = cert.all_steps_contain_cap && loc.contains_cap;
    cert.locality.push_back(std::move(loc));
  }

  for (int i = 0; i < pair.polytope.facet_count(); ++i)
    if (cert.trace.final_pair.vectors[i] != pair.vectors[i])
      throw DomainError("internal: side facet " + std::to_string(i) +
                        " lost its vector during resolution");
  if (!is_characteristic(cert.trace.final_pair))
    throw DomainError("internal: resolution finished on a non-characteristic pair");
  return cert;
}

// --- embedded polytopes and cone normals ---

struct EmbeddedPolytope {
  SimplePolytope polytope;
  std::vector<RatVec> coordinates;  // one point in (dim+1)-space per vertex

  friend bool operator==(const EmbeddedPolytope&, const EmbeddedPolytope&) = default;
};

inline ValidationReport validate_embedded(const EmbeddedPolytope& ep) {
  if (ep.coordinates.size() != static_cast<std::size_t>(ep.polytope.vertex_count()))
    throw DomainError("coordinate count (" + std::to_string(ep.coordinates.size()) +
                      ") does not match vertex count (" +
                      std::to_string(ep.polytope.vertex_count()) + ")");
  for (std::size_t v = 0; v < ep.coordinates.size(); ++v)
    if (ep.coordinates[v].size() != static_cast<std::size_t>(ep.polytope.dim) + 1)
      throw DomainError("coordinates for vertex " + std::to_string(v) + " have length " +
                        std::to_string(ep.coordinates[v].size()) + ", expected " +
                        std::to_string(ep.polytope.dim + 1));
  ValidationReport rep = validate(ep.polytope);
  if (!rep.ok()) return rep;
  for (std::size_t v = 0; v < ep.coordinates.size(); ++v) {
    bool zero = std::all_of(ep.coordinates[v].begin(), ep.coordinates[v].end(),
                            [](const Rat& x) { return x == 0; });
    if (zero)
      rep.issues.push_back(
          {"vertex at origin", "vertex " + std::to_string(v) + " sits at the origin"});
  }
  return rep;
}

namespace detail {

// Clears denominators of one rational point; scaling a column by a positive
// constant does not change its span.
inline IntVec integer_direction(const RatVec& p) {
  Int lcm = 1;
  for (const Rat& x : p) {
    Int den = denominator(x);
    lcm = lcm / gcd_int(lcm, den) * den;
  }
  IntVec out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = numerator(p[i]) * (lcm / denominator(p[i]));
  return out;
}

inline Rat dot_mixed(const IntVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

}  // namespace detail

struct ConeNormalResult {
  HyperCharPair pair;
  ValidationReport validation;  // of the derived hyper characteristic data
};

// Cone the embedded polytope at the origin and take, for every facet, the
// primitive integer normal of the facet's linear span, signed outward
// (negative dot with the vertex centroid). The derived pair is returned
// together with its validation report -- embeddings whose vertex cones are
// not unimodular yield well-defined normals but fail the report.
inline ConeNormalResult cone_hyper_characteristic(const EmbeddedPolytope& ep) {
  ValidationReport ep_rep = validate_embedded(ep);
  if (!ep_rep.ok())
    throw DomainError("invalid embedded polytope: " + ep_rep.issues.front().rule + " (" +
                      ep_rep.issues.front().detail + ")");
  const int n = ep.polytope.dim;

  RatVec centroid(static_cast<std::size_t>(n) + 1, Rat(0));
  for (const RatVec& p : ep.coordinates)
    for (std::size_t i = 0; i < p.size(); ++i) centroid[i] += p[i];
  for (Rat& x : centroid) x /= Rat(Int(ep.polytope.vertex_count()));

  HyperCharPair pair;
  pair.polytope = ep.polytope;
  for (int e = 0; e < ep.polytope.facet_count(); ++e) {
    std::vector<IntVec> cols;
    for (int v : vertices_of_face(ep.polytope, Face({e})))
      cols.push_back(detail::integer_direction(ep.coordinates[v]));
    std::size_t full_rank = exact_rank(IntMat::from_columns(cols));
    if (full_rank != static_cast<std::size_t>(n))
      throw DomainError("facet " + std::to_string(e) + " ('" + ep.polytope.facet_names[e] +
                        "') spans a cone of dimension " + std::to_string(full_rank) +
                        "; expected " + std::to_string(n));
    // greedy independent subset, stable in vertex order
    std::vector<IntVec> basis;
    for (const IntVec& c : cols) {
      if (basis.size() == static_cast<std::size_t>(n)) break;
      basis.push_back(c);
      if (exact_rank(IntMat::from_columns(basis)) != basis.size()) basis.pop_back();
    }
    IntVec normal = integer_kernel_normal(IntMat::from_columns(basis));
    Rat side = detail::dot_mixed(normal, centroid);
    if (side == 0)
      throw DomainError("cone normal sign is ambiguous for facet " + std::to_string(e) +
                        ": the vertex centroid lies on the facet span");
    if (side > 0)
      for (Int& x : normal) x = -x;
    pair.vectors.push_back(std::move(normal));
  }
  ValidationReport rep = validate_hyper_characteristic(pair);
  return {std::move(pair), std::move(rep)};
}

}  // namespace torb
