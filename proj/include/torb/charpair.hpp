#pragma once

// Characteristic data on simple polytopes: facet vector assignments, the
// singularity order of a face (the index of the sublattice spanned by its
// facet vectors inside the saturation), and the singular locus. Two
// flavours: vectors in Z^n on an n-polytope ("R-characteristic" when vertex
// matrices are nonsingular, "characteristic" when they are unimodular), and
// vectors in Z^{n+1} ("hyper characteristic" when every vertex spans a rank-n
// unimodular submodule).

#include <algorithm>
#include <string>
#include <vector>

#include "torb/errors.hpp"
#include "torb/lattice.hpp"
#include "torb/polytope.hpp"

namespace torb {

struct RCharPair {
  SimplePolytope polytope;
  std::vector<IntVec> vectors;  // one per facet, length == polytope.dim

  friend bool operator==(const RCharPair&, const RCharPair&) = default;
};

struct HyperCharPair {
  SimplePolytope polytope;
  std::vector<IntVec> vectors;  // one per facet, length == polytope.dim + 1

  friend bool operator==(const HyperCharPair&, const HyperCharPair&) = default;
};

namespace detail {

inline std::string facet_label(const SimplePolytope& p, int f) {
  return "facet " + std::to_string(f) + " ('" + p.facet_names[f] + "')";
}

template <typename Pair>
void require_vector_shape(const Pair& pair, std::size_t expected_len) {
  if (pair.vectors.size() != static_cast<std::size_t>(pair.polytope.facet_count()))
    throw DomainError("vector count (" + std::to_string(pair.vectors.size()) +
                      ") does not match facet count (" + std::to_string(pair.polytope.facet_count()) + ")");
  for (std::size_t i = 0; i < pair.vectors.size(); ++i)
    if (pair.vectors[i].size() != expected_len)
      throw DomainError("vector for facet " + std::to_string(i) + " has length " +
                        std::to_string(pair.vectors[i].size()) + ", expected " +
                        std::to_string(expected_len));
}

}  // namespace detail

// The matrix whose columns are the facet vectors of f, in ascending facet
// index order.
template <typename Pair>
IntMat face_matrix(const Pair& pair, const Face& f) {
  require_face(pair.polytope, f);
  if (f.codim() == 0) throw DomainError("the whole polytope has no face matrix");
  std::vector<IntVec> cols;
  cols.reserve(f.facets.size());
  for (int i : f.facets) cols.push_back(pair.vectors[i]);
  return IntMat::from_columns(cols);
}

// Checks primitivity of every facet vector and nonsingularity of every
// vertex matrix. Shape errors (wrong vector count or length) throw; rule
// violations are reported with the offending facet or vertex.
inline ValidationReport validate_r_characteristic(const RCharPair& pair) {
  detail::require_vector_shape(pair, static_cast<std::size_t>(pair.polytope.dim));
  ValidationReport rep = validate(pair.polytope);
  if (!rep.ok()) return rep;

  for (int i = 0; i < pair.polytope.facet_count(); ++i)
    if (!is_primitive(pair.vectors[i]))
      rep.issues.push_back({"not primitive", detail::facet_label(pair.polytope, i) +
                                                 " vector is not primitive"});
  for (int v = 0; v < pair.polytope.vertex_count(); ++v) {
    IntMat m = face_matrix(pair, Face(pair.polytope.vertices[v]));
    if (determinant(m) == 0)
      rep.issues.push_back({"singular vertex matrix",
                            "vertex " + std::to_string(v) + " " +
                                detail::join_ints(pair.polytope.vertices[v]) +
                                " has linearly dependent facet vectors"});
  }
  return rep;
}

namespace detail {

inline void require_ok(const ValidationReport& rep) {
  if (!rep.ok())
    throw DomainError("invalid pair: " + rep.issues.front().rule + " (" + rep.issues.front().detail + ")");
}

}  // namespace detail

inline void require_r_characteristic(const RCharPair& pair) {
  detail::require_ok(validate_r_characteristic(pair));
}

// |G_F|: the saturation index of the face matrix. 1 means the pair is
// smooth over F.
inline Int face_order(const RCharPair& pair, const Face& f) {
  if (f.codim() == 0) throw DomainError("the whole polytope has no singularity order");
  return saturation_index(face_matrix(pair, f));
}

inline std::vector<Int> vertex_orders(const RCharPair& pair) {
  std::vector<Int> orders;
  orders.reserve(pair.polytope.vertices.size());
  for (const auto& b : pair.polytope.vertices) orders.push_back(face_order(pair, Face(b)));
  return orders;
}

// True iff every vertex matrix is unimodular; by the divisibility of orders
// along the face lattice this is equivalent to every face order being 1.
inline bool is_characteristic(const RCharPair& pair) {
  require_r_characteristic(pair);
  for (const auto& b : pair.polytope.vertices)
    if (abs_int(determinant(face_matrix(pair, Face(b)))) != 1) return false;
  return true;
}

struct SingularFaceEntry {
  Face face;
  Int order;
  bool maximal = false;
};

struct SingularLocus {
  std::vector<SingularFaceEntry> entries;
  bool empty() const { return entries.empty(); }
};

// All faces with order >= 2. Codimension-1 faces are skipped: a primitive
// facet vector always spans a direct summand. Entries are sorted by
// codimension descending, then lexicographically by facet set; an entry is
// maximal when the locus contains no strictly larger face (no strict subset
// of its facet set).
inline SingularLocus singular_locus(const RCharPair& pair) {
  require_r_characteristic(pair);
  SingularLocus locus;
  for (int k = pair.polytope.dim; k >= 2; --k)
    for (const Face& f : faces_of_codim(pair.polytope, k)) {
      Int order = face_order(pair, f);
      if (order >= 2) locus.entries.push_back({f, order, false});
    }
  for (auto& e : locus.entries) {
    bool maximal = true;
    for (const auto& other : locus.entries) {
      if (other.face == e.face) continue;
      if (std::includes(e.face.facets.begin(), e.face.facets.end(), other.face.facets.begin(),
                        other.face.facets.end())) {
        maximal = false;  // a strictly larger singular face exists
        break;
      }
    }
    e.maximal = maximal;
  }
  return locus;
}

// Checks that every vertex's (n+1) x n matrix spans a rank-n unimodular
// submodule of Z^{n+1}.
inline ValidationReport validate_hyper_characteristic(const HyperCharPair& pair) {
  detail::require_vector_shape(pair, static_cast<std::size_t>(pair.polytope.dim) + 1);
  ValidationReport rep = validate(pair.polytope);
  if (!rep.ok()) return rep;

  for (int v = 0; v < pair.polytope.vertex_count(); ++v) {
    IntMat m = face_matrix(pair, Face(pair.polytope.vertices[v]));
    SmithDecomposition snf = smith_normal_form(m);
    if (snf.invariant_factors.size() != m.cols()) {
      rep.issues.push_back({"vertex matrix rank deficient",
                            "vertex " + std::to_string(v) + " " +
                                detail::join_ints(pair.polytope.vertices[v]) +
                                " has rank " + std::to_string(snf.invariant_factors.size()) +
                                ", expected " + std::to_string(m.cols())});
      continue;
    }
    Int idx = 1;
    for (const Int& f : snf.invariant_factors) idx *= f;
    if (idx != 1)
      rep.issues.push_back({"vertex submodule not unimodular",
                            "vertex " + std::to_string(v) + " " +
                                detail::join_ints(pair.polytope.vertices[v]) +
                                " spans a submodule of index " + idx.str()});
  }
  return rep;
}

inline void require_hyper_characteristic(const HyperCharPair& pair) {
  detail::require_ok(validate_hyper_characteristic(pair));
}

}  // namespace torb
