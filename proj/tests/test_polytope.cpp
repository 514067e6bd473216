#include <catch2/catch_amalgamated.hpp>

#include "torb/polytope.hpp"

using namespace torb;

namespace {

// Triangular prism with the facet order used throughout the fixtures:
// 0 top, 1 bottom, 2 left, 3 right, 4 back.
SimplePolytope triangular_prism() {
  SimplePolytope p;
  p.dim = 3;
  p.facet_names = {"top", "bottom", "left", "right", "back"};
  p.vertices = {{0, 2, 3}, {0, 3, 4}, {0, 2, 4}, {1, 2, 3}, {1, 3, 4}, {1, 2, 4}};
  return p;
}

SimplePolytope segment() {
  SimplePolytope p;
  p.dim = 1;
  p.facet_names = {"a", "b"};
  p.vertices = {{0}, {1}};
  return p;
}

}  // namespace

TEST_CASE("validation accepts the standard examples") {
  CHECK(validate(segment()).ok());
  CHECK(validate(triangular_prism()).ok());
  CHECK(validate(simplex(2)).ok());
  CHECK(validate(simplex(3)).ok());
  CHECK(validate(simplex(5)).ok());
  for (int m = 3; m <= 8; ++m) CHECK(validate(polygon(m)).ok());
}

TEST_CASE("validation flags a shrunk vertex as not simple") {
  SimplePolytope p = triangular_prism();
  p.vertices[2] = {0, 2};  // drop one facet
  ValidationReport rep = validate(p);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.issues[0].rule == "vertex not simple");
  CHECK(rep.issues[0].detail.find("vertex 2") != std::string::npos);
}

TEST_CASE("validation flags duplicate vertices and unused facets") {
  SimplePolytope p = triangular_prism();
  p.vertices[1] = p.vertices[0];
  ValidationReport rep = validate(p);
  REQUIRE_FALSE(rep.ok());
  bool saw_dup = false;
  for (const auto& i : rep.issues) saw_dup |= (i.rule == "duplicate vertex");
  CHECK(saw_dup);

  SimplePolytope q = triangular_prism();
  q.facet_names.push_back("ghost");
  ValidationReport rep2 = validate(q);
  REQUIRE_FALSE(rep2.ok());
  CHECK(rep2.issues[0].rule == "unused facet");
  CHECK(rep2.issues[0].detail.find("ghost") != std::string::npos);
}

TEST_CASE("validation flags ridge violations") {
  SimplePolytope p = triangular_prism();
  p.vertices.erase(p.vertices.begin());  // remove one vertex: three ridges now occur once
  ValidationReport rep = validate(p);
  REQUIRE_FALSE(rep.ok());
  bool saw_ridge = false;
  for (const auto& i : rep.issues) saw_ridge |= (i.rule == "ridge condition");
  CHECK(saw_ridge);
}

TEST_CASE("validation flags a disconnected union") {
  SimplePolytope p;
  p.dim = 2;
  p.facet_names = {"a0", "a1", "a2", "a3", "b0", "b1", "b2", "b3"};
  p.vertices = {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {4, 5}, {5, 6}, {6, 7}, {4, 7}};
  ValidationReport rep = validate(p);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.issues[0].rule == "connectivity");
}

TEST_CASE("validation flags bad facet names and indices") {
  SimplePolytope p = segment();
  p.facet_names = {"a", "a"};
  REQUIRE_FALSE(validate(p).ok());

  SimplePolytope q = segment();
  q.vertices[1] = {7};
  ValidationReport rep = validate(q);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.issues[0].rule == "facet index");
}

TEST_CASE("face enumeration on the triangular prism") {
  SimplePolytope p = triangular_prism();

  auto whole = faces_of_codim(p, 0);
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].facets.empty());

  auto facets = faces_of_codim(p, 1);
  REQUIRE(facets.size() == 5);
  for (int f = 0; f < 5; ++f) CHECK(facets[f] == Face({f}));

  auto edges = faces_of_codim(p, 2);
  REQUIRE(edges.size() == 9);
  CHECK(edges[0] == Face({0, 2}));  // lexicographic order
  CHECK(edges.back() == Face({3, 4}));

  auto verts = faces_of_codim(p, 3);
  REQUIRE(verts.size() == 6);

  CHECK_THROWS_MATCHES(faces_of_codim(p, 4), DomainError,
                       Catch::Matchers::Message("codimension out of range"));
  CHECK_THROWS_AS(faces_of_codim(p, -1), DomainError);
}

TEST_CASE("vertices of a face") {
  SimplePolytope p = triangular_prism();
  CHECK(vertices_of_face(p, Face({2, 3})) == std::vector<int>{0, 3});
  CHECK(vertices_of_face(p, Face({0})) == std::vector<int>{0, 1, 2});
  CHECK(vertices_of_face(p, Face({1, 2, 4})) == std::vector<int>{5});
  CHECK(vertices_of_face(p, Face{}) == std::vector<int>{0, 1, 2, 3, 4, 5});
  // top and bottom triangles are disjoint, so {0,1} is not a face
  CHECK_THROWS_AS(vertices_of_face(p, Face({0, 1})), DomainError);
  CHECK_THROWS_AS(vertices_of_face(p, Face({0, 9})), DomainError);
}

TEST_CASE("face partial order") {
  SimplePolytope p = triangular_prism();
  CHECK(face_partial_order(p, Face({0, 2, 3}), Face({2, 3})) == FaceRelation::kLess);
  CHECK(face_partial_order(p, Face({2, 3}), Face({0, 2, 3})) == FaceRelation::kGreater);
  CHECK(face_partial_order(p, Face({2, 3}), Face({2, 3})) == FaceRelation::kEqual);
  CHECK(face_partial_order(p, Face({0, 2}), Face({1, 2})) == FaceRelation::kIncomparable);
  CHECK(face_partial_order(p, Face{}, Face({4})) == FaceRelation::kGreater);
  CHECK_THROWS_AS(face_partial_order(p, Face({0, 1}), Face({2})), DomainError);
}

TEST_CASE("prism over a triangle") {
  SimplePolytope prism = product_with_interval(simplex(2));
  CHECK(validate(prism).ok());
  CHECK(prism.dim == 3);
  REQUIRE(prism.facet_count() == 5);
  CHECK(prism.facet_names[3] == "bottom");
  CHECK(prism.facet_names[4] == "top");
  REQUIRE(prism.vertex_count() == 6);
  CHECK(prism.vertices[0] == std::vector<int>{0, 1, 3});
  CHECK(prism.vertices[3] == std::vector<int>{0, 1, 4});

  // name collision falls back to a decorated name
  SimplePolytope named = simplex(2);
  named.facet_names[1] = "bottom";
  SimplePolytope prism2 = product_with_interval(named);
  CHECK(prism2.facet_names[3] == "bottom~");
  CHECK(prism2.facet_names[4] == "top");
  CHECK(validate(prism2).ok());

  SimplePolytope broken = simplex(2);
  broken.vertices.pop_back();
  CHECK_THROWS_AS(product_with_interval(broken), DomainError);
}

TEST_CASE("blowup of the prism along a side edge gives the cube") {
  SimplePolytope p = triangular_prism();
  BlowupResult res = blowup(p, Face({2, 3}));
  const SimplePolytope& cube = res.polytope;

  CHECK(validate(cube).ok());
  CHECK(cube.dim == 3);
  REQUIRE(cube.facet_count() == 6);
  CHECK(cube.facet_names[5] == "cut0");
  REQUIRE(cube.vertex_count() == 8);  // 6 + 2 * (2 - 1)

  std::vector<std::vector<int>> expected = {{0, 3, 5}, {0, 2, 5}, {0, 3, 4}, {0, 2, 4},
                                            {1, 3, 5}, {1, 2, 5}, {1, 3, 4}, {1, 2, 4}};
  CHECK(cube.vertices == expected);

  CHECK(res.provenance.new_facet == 5);
  CHECK(res.provenance.source_vertex == std::vector<int>{0, 0, 1, 2, 3, 3, 4, 5});
  CHECK(res.provenance.dropped_facet == std::vector<int>{2, 3, -1, -1, 2, 3, -1, -1});

  // every new-facet vertex count: the new facet is the face times a segment
  CHECK(vertices_of_face(cube, Face({5})).size() == 4);
}

TEST_CASE("blowup of a polygon corner adds one edge") {
  SimplePolytope tri = simplex(2);
  BlowupResult res = blowup(tri, Face({0, 1}));
  CHECK(res.polytope.vertex_count() == 4);
  CHECK(res.polytope.facet_count() == 4);
  CHECK(validate(res.polytope).ok());
}

TEST_CASE("blowup of a cube vertex") {
  SimplePolytope cube = product_with_interval(polygon(4));
  BlowupResult res = blowup(cube, Face(cube.vertices[0]));
  CHECK(res.polytope.vertex_count() == 8 + 1 * (3 - 1));
  CHECK(validate(res.polytope).ok());
  // the new facet is a triangle
  CHECK(vertices_of_face(res.polytope, Face({res.provenance.new_facet})).size() == 3);
}

TEST_CASE("blowup rejects facets and the whole polytope") {
  SimplePolytope p = triangular_prism();
  CHECK_THROWS_MATCHES(blowup(p, Face({2})), DomainError,
                       Catch::Matchers::Message("blowup along facet is a no-op, rejected"));
  CHECK_THROWS_AS(blowup(p, Face{}), DomainError);
  CHECK_THROWS_AS(blowup(p, Face({0, 1})), DomainError);  // not a face
  SimplePolytope bad = p;
  bad.vertices[0] = {0, 2};
  CHECK_THROWS_AS(blowup(bad, Face({2, 3})), DomainError);
}

TEST_CASE("blowup names stay fresh under iteration") {
  SimplePolytope p = triangular_prism();
  BlowupResult once = blowup(p, Face({2, 3}));
  BlowupResult twice = blowup(once.polytope, Face({0, 5}));
  CHECK(twice.polytope.facet_names[6] == "cut1");
  CHECK(validate(twice.polytope).ok());
}

TEST_CASE("vertex count law across random blowups") {
  // blow up every codim >= 2 face of a few seed polytopes once
  std::vector<SimplePolytope> seeds = {triangular_prism(), simplex(3), product_with_interval(polygon(5))};
  for (const auto& p : seeds) {
    for (int k = 2; k <= p.dim; ++k) {
      for (const Face& f : faces_of_codim(p, k)) {
        BlowupResult res = blowup(p, f);
        const int on_face = static_cast<int>(vertices_of_face(p, f).size());
        CHECK(res.polytope.vertex_count() == p.vertex_count() + on_face * (k - 1));
        CHECK(validate(res.polytope).ok());
        // the new facet is combinatorially F x simplex(k-1): |V(F)| * k vertices
        CHECK(static_cast<int>(vertices_of_face(res.polytope, Face({res.provenance.new_facet})).size()) ==
              on_face * k);
      }
    }
  }
}
