#pragma once

// Combinatorial simple polytopes, given as vertex-facet incidence: a vertex
// is the set of exactly n facets meeting there, and a face is identified by
// the set of facets containing it. Everything is index-based; facet names
// exist only for I/O. The one structural operation that matters downstream
// is the combinatorial blowup (truncation) along a face.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "torb/errors.hpp"

namespace torb {

// A face, identified by the facets containing it. Kept sorted and duplicate
// free; the empty set denotes the whole polytope (codimension zero).
struct Face {
  std::vector<int> facets;

  Face() = default;
  explicit Face(std::vector<int> f) : facets(std::move(f)) {
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
  }

  std::size_t codim() const { return facets.size(); }

  friend bool operator==(const Face&, const Face&) = default;
  friend auto operator<=>(const Face& a, const Face& b) { return a.facets <=> b.facets; }
};

struct SimplePolytope {
  int dim = 0;
  std::vector<std::string> facet_names;
  std::vector<std::vector<int>> vertices;  // each sorted, strictly increasing

  int facet_count() const { return static_cast<int>(facet_names.size()); }
  int vertex_count() const { return static_cast<int>(vertices.size()); }

  friend bool operator==(const SimplePolytope&, const SimplePolytope&) = default;
};

struct ValidationIssue {
  std::string rule;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

namespace detail {

inline std::string join_ints(const std::vector<int>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(xs[i]);
  }
  return s + "}";
}

}  // namespace detail

// Structural validation. Reports every violated invariant with a witness:
// simplicity (each vertex lies on exactly dim facets), distinctness, facet
// coverage, the ridge condition (every (dim-1)-subset of a vertex set lies
// in exactly two vertices), and connectivity of the vertex-edge graph.
inline ValidationReport validate(const SimplePolytope& p) {
  ValidationReport rep;
  auto issue = [&rep](std::string rule, std::string detail) {
    rep.issues.push_back({std::move(rule), std::move(detail)});
  };

  if (p.dim < 1) {
    issue("dimension", "dim must be at least 1, got " + std::to_string(p.dim));
    return rep;
  }
  if (p.vertices.empty()) {
    issue("no vertices", "polytope has no vertices");
    return rep;
  }

  {
    std::set<std::string> seen;
    for (int f = 0; f < p.facet_count(); ++f) {
      if (p.facet_names[f].empty()) issue("facet name", "facet " + std::to_string(f) + " has an empty name");
      if (!seen.insert(p.facet_names[f]).second)
        issue("facet name", "duplicate facet name '" + p.facet_names[f] + "'");
    }
  }

  bool shape_ok = true;
  for (int v = 0; v < p.vertex_count(); ++v) {
    const std::vector<int>& b = p.vertices[v];
    if (static_cast<int>(b.size()) != p.dim) {
      issue("vertex not simple", "vertex " + std::to_string(v) + " lies on " + std::to_string(b.size()) +
                                     " facets, expected " + std::to_string(p.dim));
      shape_ok = false;
    }
    if (!std::is_sorted(b.begin(), b.end()) || std::adjacent_find(b.begin(), b.end()) != b.end()) {
      issue("vertex order", "vertex " + std::to_string(v) + " facet list is not strictly increasing");
      shape_ok = false;
    }
    for (int f : b)
      if (f < 0 || f >= p.facet_count()) {
        issue("facet index", "vertex " + std::to_string(v) + " references facet " + std::to_string(f) +
                                 " out of range");
        shape_ok = false;
      }
  }
  if (!shape_ok) return rep;  // the remaining checks assume well-formed vertex sets

  {
    std::map<std::vector<int>, int> first_seen;
    for (int v = 0; v < p.vertex_count(); ++v) {
      auto [it, fresh] = first_seen.emplace(p.vertices[v], v);
      if (!fresh)
        issue("duplicate vertex", "vertices " + std::to_string(it->second) + " and " + std::to_string(v) +
                                      " share the facet set " + detail::join_ints(p.vertices[v]));
    }
  }

  {
    std::vector<bool> used(p.facet_count(), false);
    for (const auto& b : p.vertices)
      for (int f : b) used[f] = true;
    for (int f = 0; f < p.facet_count(); ++f)
      if (!used[f]) issue("unused facet", "facet " + std::to_string(f) + " ('" + p.facet_names[f] +
                                              "') contains no vertex");
  }

  {
    // ridge condition: dropping one facet from a vertex set yields an edge
    // direction, and each such (dim-1)-set must occur in exactly two vertices
    std::map<std::vector<int>, int> ridge_count;
    for (const auto& b : p.vertices)
      for (std::size_t s = 0; s < b.size(); ++s) {
        std::vector<int> ridge;
        ridge.reserve(b.size() - 1);
        for (std::size_t t = 0; t < b.size(); ++t)
          if (t != s) ridge.push_back(b[t]);
        ++ridge_count[ridge];
      }
    if (p.dim == 1) {
      if (p.vertex_count() != 2)
        issue("ridge condition", "a 1-dimensional polytope must have exactly 2 vertices, got " +
                                     std::to_string(p.vertex_count()));
    } else {
      for (const auto& [ridge, count] : ridge_count)
        if (count != 2)
          issue("ridge condition", "facet set " + detail::join_ints(ridge) + " lies in " +
                                       std::to_string(count) + " vertices, expected 2");
    }
  }

  {
    // connectivity of the graph whose edges join vertices sharing dim-1 facets
    const int m = p.vertex_count();
    std::vector<int> stack = {0};
    std::vector<bool> seen(m, false);
    seen[0] = true;
    int visited = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < m; ++w) {
        if (seen[w]) continue;
        std::vector<int> common;
        std::set_intersection(p.vertices[v].begin(), p.vertices[v].end(), p.vertices[w].begin(),
                              p.vertices[w].end(), std::back_inserter(common));
        if (static_cast<int>(common.size()) == p.dim - 1) {
          seen[w] = true;
          ++visited;
          stack.push_back(w);
        }
      }
    }
    if (visited != m)
      issue("connectivity", "vertex-edge graph is disconnected: reached " + std::to_string(visited) +
                                " of " + std::to_string(m) + " vertices");
  }

  return rep;
}

// True iff f is the facet set of an actual face: empty, or a subset of some
// vertex set with all indices in range.
inline bool is_face_of(const SimplePolytope& p, const Face& f) {
  if (f.facets.empty()) return true;
  for (int x : f.facets)
    if (x < 0 || x >= p.facet_count()) return false;
  for (const auto& b : p.vertices)
    if (std::includes(b.begin(), b.end(), f.facets.begin(), f.facets.end())) return true;
  return false;
}

inline void require_face(const SimplePolytope& p, const Face& f) {
  if (!is_face_of(p, f))
    throw DomainError("invalid face " + detail::join_ints(f.facets) +
                      ": not the intersection of facets at any vertex");
}

// All faces of the given codimension, as sorted facet sets in lexicographic
// order. Codimension 0 is the whole polytope; codimension dim the vertices.
inline std::vector<Face> faces_of_codim(const SimplePolytope& p, int k) {
  if (k < 0 || k > p.dim) throw DomainError("codimension out of range");
  if (k == 0) return {Face{}};
  std::set<std::vector<int>> found;
  std::vector<int> idx(k);
  for (const auto& b : p.vertices) {
    // all k-subsets of this vertex's facet set
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      std::vector<int> sub(k);
      for (int i = 0; i < k; ++i) sub[i] = b[idx[i]];
      found.insert(std::move(sub));
      int i = k - 1;
      while (i >= 0 && idx[i] == static_cast<int>(b.size()) - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  std::vector<Face> out;
  out.reserve(found.size());
  for (const auto& s : found) out.push_back(Face(s));
  return out;
}

// Indices of the vertices lying on f, in increasing order.
inline std::vector<int> vertices_of_face(const SimplePolytope& p, const Face& f) {
  require_face(p, f);
  std::vector<int> out;
  for (int v = 0; v < p.vertex_count(); ++v)
    if (std::includes(p.vertices[v].begin(), p.vertices[v].end(), f.facets.begin(), f.facets.end()))
      out.push_back(v);
  return out;
}

enum class FaceRelation { kEqual, kLess, kGreater, kIncomparable };

// Partial order by inclusion of the faces themselves: a is below b when a's
// facet set contains b's. Both must be faces of p.
inline FaceRelation face_partial_order(const SimplePolytope& p, const Face& a, const Face& b) {
  require_face(p, a);
  require_face(p, b);
  const bool a_below = std::includes(a.facets.begin(), a.facets.end(), b.facets.begin(), b.facets.end());
  const bool b_below = std::includes(b.facets.begin(), b.facets.end(), a.facets.begin(), a.facets.end());
  if (a_below && b_below) return FaceRelation::kEqual;
  if (a_below) return FaceRelation::kLess;
  if (b_below) return FaceRelation::kGreater;
  return FaceRelation::kIncomparable;
}

namespace detail {

inline std::string fresh_name(const std::vector<std::string>& taken, std::string base) {
  while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += "~";
  return base;
}

}  // namespace detail

// The prism Q x [0,1]: side facets keep Q's indices and names, then the
// bottom cap, then the top cap. Vertex order: all bottom copies in Q's
// vertex order, then all top copies.
inline SimplePolytope product_with_interval(const SimplePolytope& q) {
  ValidationReport rep = validate(q);
  if (!rep.ok())
    throw DomainError("product_with_interval: invalid polytope: " + rep.issues.front().rule + " (" +
                      rep.issues.front().detail + ")");
  SimplePolytope p;
  p.dim = q.dim + 1;
  p.facet_names = q.facet_names;
  p.facet_names.push_back(detail::fresh_name(p.facet_names, "bottom"));
  p.facet_names.push_back(detail::fresh_name(p.facet_names, "top"));
  const int bottom = q.facet_count();
  const int top = bottom + 1;
  for (const auto& b : q.vertices) {
    std::vector<int> v = b;
    v.push_back(bottom);
    p.vertices.push_back(std::move(v));
  }
  for (const auto& b : q.vertices) {
    std::vector<int> v = b;
    v.push_back(top);
    p.vertices.push_back(std::move(v));
  }
  return p;
}

// Records how blowup vertices arose: parallel to the new polytope's vertex
// list, source_vertex[i] is the index of the originating vertex in the old
// polytope and dropped_facet[i] the facet removed from its set (-1 for
// vertices copied through unchanged).
struct BlowupProvenance {
  int new_facet = -1;
  std::vector<int> source_vertex;
  std::vector<int> dropped_facet;
};

struct BlowupResult {
  SimplePolytope polytope;
  BlowupProvenance provenance;
};

// Combinatorial blowup (corner truncation) along a face of codimension
// 2 <= k <= dim. The face's vertices are each replaced by k new vertices:
// drop one of the face's facets, add the new facet. Every other vertex is
// copied through. The new facet is appended at the end with a fresh
// "cut<N>" name, so existing facet indices are stable across the operation.
inline BlowupResult blowup(const SimplePolytope& p, const Face& f) {
  ValidationReport rep = validate(p);
  if (!rep.ok())
    throw DomainError("blowup: invalid polytope: " + rep.issues.front().rule + " (" +
                      rep.issues.front().detail + ")");
  require_face(p, f);
  if (f.codim() == 0) throw DomainError("cannot blow up along the whole polytope");
  if (f.codim() == 1) throw DomainError("blowup along facet is a no-op, rejected");

  SimplePolytope out;
  out.dim = p.dim;
  out.facet_names = p.facet_names;
  {
    int n = 0;
    std::string name = "cut0";
    while (std::find(out.facet_names.begin(), out.facet_names.end(), name) != out.facet_names.end())
      name = "cut" + std::to_string(++n);
    out.facet_names.push_back(name);
  }
  const int new_facet = p.facet_count();

  BlowupProvenance prov;
  prov.new_facet = new_facet;
  for (int v = 0; v < p.vertex_count(); ++v) {
    const std::vector<int>& b = p.vertices[v];
    if (!std::includes(b.begin(), b.end(), f.facets.begin(), f.facets.end())) {
      out.vertices.push_back(b);
      prov.source_vertex.push_back(v);
      prov.dropped_facet.push_back(-1);
      continue;
    }
    for (int drop : f.facets) {
      std::vector<int> nb;
      nb.reserve(b.size());
      for (int x : b)
        if (x != drop) nb.push_back(x);
      nb.push_back(new_facet);  // largest index, so the list stays sorted
      out.vertices.push_back(std::move(nb));
      prov.source_vertex.push_back(v);
      prov.dropped_facet.push_back(drop);
    }
  }

  ValidationReport post = validate(out);
  if (!post.ok())
    throw DomainError("blowup produced an invalid polytope: " + post.issues.front().rule + " (" +
                      post.issues.front().detail + ")");
  return {std::move(out), std::move(prov)};
}

// --- small constructions used by tests and fixtures ---

// The n-simplex: n+1 facets, vertices = all n-subsets.
inline SimplePolytope simplex(int n) {
  if (n < 1) throw DomainError("simplex dimension must be at least 1");
  SimplePolytope p;
  p.dim = n;
  for (int f = 0; f <= n; ++f) p.facet_names.push_back("s" + std::to_string(f));
  for (int skip = n; skip >= 0; --skip) {
    std::vector<int> b;
    for (int f = 0; f <= n; ++f)
      if (f != skip) b.push_back(f);
    p.vertices.push_back(std::move(b));
  }
  return p;
}

// The m-gon (m >= 3): facet i is the edge between vertices i and i+1 mod m.
inline SimplePolytope polygon(int m) {
  if (m < 3) throw DomainError("polygon needs at least 3 edges");
  SimplePolytope p;
  p.dim = 2;
  for (int f = 0; f < m; ++f) p.facet_names.push_back("e" + std::to_string(f));
  for (int v = 0; v < m; ++v) {
    int a = (v + m - 1) % m;
    int b = v;
    p.vertices.push_back(a < b ? std::vector<int>{a, b} : std::vector<int>{b, a});
  }
  return p;
}

}  // namespace torb
