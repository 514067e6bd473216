#pragma once

// Shared fixture pairs and randomized-pair generators for the test suites.
// The fixed pairs mirror fixtures/*.json; tests freeze their expected
// invariants (orders, loci, step counts) as plain literals.

#include <random>
#include <vector>

#include "torb/charpair.hpp"
#include "torb/polytope.hpp"

namespace torb_fixtures {

using namespace torb;

inline IntVec iv(std::initializer_list<long long> xs) {
  IntVec v;
  for (long long x : xs) v.emplace_back(x);
  return v;
}

// Triangular prism with one order-2 side edge {2,3}.
// Facets: 0 top, 1 bottom, 2 left, 3 right, 4 back.
inline RCharPair prism_pair() {
  RCharPair pair;
  pair.polytope.dim = 3;
  pair.polytope.facet_names = {"top", "bottom", "left", "right", "back"};
  pair.polytope.vertices = {{0, 2, 3}, {0, 3, 4}, {0, 2, 4}, {1, 2, 3}, {1, 3, 4}, {1, 2, 4}};
  pair.vectors = {iv({0, 0, 1}), iv({0, 0, 1}), iv({1, 0, 0}), iv({1, 2, 0}), iv({0, 1, 0})};
  return pair;
}

// The cube obtained by truncating the prism's {2,3} edge; characteristic.
inline RCharPair cube_pair() {
  RCharPair pair;
  pair.polytope.dim = 3;
  pair.polytope.facet_names = {"top", "bottom", "left", "right", "back", "cut0"};
  pair.polytope.vertices = {{0, 3, 5}, {0, 2, 5}, {0, 3, 4}, {0, 2, 4},
                            {1, 3, 5}, {1, 2, 5}, {1, 3, 4}, {1, 2, 4}};
  pair.vectors = {iv({0, 0, 1}), iv({0, 0, 1}), iv({1, 0, 0}),
                  iv({1, 2, 0}), iv({0, 1, 0}), iv({1, 1, 0})};
  return pair;
}

// Pentagon with hyper characteristic vectors, edges in cyclic order.
inline HyperCharPair pentagon_pair() {
  HyperCharPair pair;
  pair.polytope = polygon(5);
  pair.vectors = {iv({1, 0, 0}), iv({0, 0, 1}), iv({1, 1, 0}), iv({1, 1, 1}), iv({0, 1, 1})};
  return pair;
}

// The pentagon prism capped with a = (1,2,0) on bottom (5) and top (6).
inline RCharPair pentagon_prism_pair() {
  RCharPair pair;
  pair.polytope = product_with_interval(polygon(5));
  pair.vectors = {iv({1, 0, 0}), iv({0, 0, 1}), iv({1, 1, 0}), iv({1, 1, 1}),
                  iv({0, 1, 1}), iv({1, 2, 0}), iv({1, 2, 0})};
  return pair;
}

// Complex-projective-space model on the n-simplex: basis vectors plus
// -(1,...,1); characteristic.
inline RCharPair simplex_pair(int n) {
  RCharPair pair;
  pair.polytope = simplex(n);
  for (int i = 0; i < n; ++i) {
    IntVec e(n, Int(0));
    e[i] = 1;
    pair.vectors.push_back(std::move(e));
  }
  pair.vectors.push_back(IntVec(n, Int(-1)));
  return pair;
}

// --- randomized generators (all deterministic given the rng state) ---

inline IntVec random_primitive_vector(std::mt19937_64& rng, int len, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  for (;;) {
    IntVec v(len);
    bool zero = true;
    for (int i = 0; i < len; ++i) {
      v[i] = dist(rng);
      if (v[i] != 0) zero = false;
    }
    if (zero) continue;
    return primitive_decompose(v).direction;
  }
}

inline std::vector<SimplePolytope> small_polytope_catalog() {
  return {simplex(2),
          simplex(3),
          simplex(4),
          polygon(4),
          polygon(5),
          polygon(6),
          polygon(7),
          product_with_interval(simplex(2)),
          product_with_interval(polygon(4)),
          product_with_interval(polygon(5)),
          product_with_interval(simplex(3))};
}

// A valid R-characteristic pair on a random catalog polytope.
inline RCharPair random_r_pair(std::mt19937_64& rng, int bound = 3) {
  static const std::vector<SimplePolytope> catalog = small_polytope_catalog();
  std::uniform_int_distribution<std::size_t> pick(0, catalog.size() - 1);
  for (;;) {
    RCharPair pair;
    pair.polytope = catalog[pick(rng)];
    pair.vectors.clear();
    for (int f = 0; f < pair.polytope.facet_count(); ++f)
      pair.vectors.push_back(random_primitive_vector(rng, pair.polytope.dim, bound));
    if (validate_r_characteristic(pair).ok()) return pair;
  }
}

inline RCharPair random_singular_r_pair(std::mt19937_64& rng, int bound = 3) {
  for (;;) {
    RCharPair pair = random_r_pair(rng, bound);
    if (!singular_locus(pair).empty()) return pair;
  }
}

// A valid hyper characteristic pair on a polygon or the 3-simplex.
inline HyperCharPair random_hyper_pair(std::mt19937_64& rng, int bound = 2) {
  for (;;) {
    HyperCharPair pair;
    std::uniform_int_distribution<int> shape(0, 4);
    int s = shape(rng);
    pair.polytope = (s == 4) ? simplex(3) : polygon(3 + s);
    pair.vectors.clear();
    for (int f = 0; f < pair.polytope.facet_count(); ++f)
      pair.vectors.push_back(random_primitive_vector(rng, pair.polytope.dim + 1, bound));
    if (validate_hyper_characteristic(pair).ok()) return pair;
  }
}

}  // namespace torb_fixtures
