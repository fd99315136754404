#include <doctest.h>

#include "kklab/simplicial.hpp"

using namespace kklab;
using namespace kklab::sset;

TEST_SUITE("simplicial") {

TEST_CASE("standard simplex structure") {
  auto d2 = standard_simplex(2);
  CHECK(d2.size() == 7);
  CHECK(d2.max_dim() == 2);
  CHECK(d2.simplices(0) == std::vector<std::string>{"0", "1", "2"});
  CHECK(d2.simplices(1) == std::vector<std::string>{"0_1", "0_2", "1_2"});
  CHECK(d2.simplices(2) == std::vector<std::string>{"0_1_2"});

  // d_i drops vertex i, so d_0 of an edge is its far endpoint
  auto top = d2.faces_of("0_1_2");
  REQUIRE(top.size() == 3);
  CHECK(top[0].str() == "1_2");
  CHECK(top[1].str() == "0_2");
  CHECK(top[2].str() == "0_1");
  auto e = d2.faces_of("0_1");
  CHECK(e[0].str() == "1");
  CHECK(e[1].str() == "0");

  CHECK(d2.apply_face(0, {{}, "0_1"}).str() == "1");
  CHECK(d2.apply_degeneracy(0, {{}, "0_1"}).str() == "s0.0_1");
  CHECK(d2.ref_dim({{0}, "0_1"}) == 2);
  CHECK_NOTHROW(d2.validate());
}

TEST_CASE("catalog complexes validate with correct euler characteristics") {
  CHECK(standard_simplex(3).euler_characteristic() == 1);
  CHECK(boundary_simplex(3).euler_characteristic() == 2);  // sphere S^2
  CHECK(boundary_simplex(2).euler_characteristic() == 0);  // triangle boundary ~ S^1
  CHECK(circle().euler_characteristic() == 0);
  CHECK(point_complex().euler_characteristic() == 1);

  auto c = circle();
  CHECK(c.size() == 2);
  CHECK(c.simplices(0) == std::vector<std::string>{"*"});
  CHECK(c.faces_of("0_1")[0].str() == "*");
  CHECK(c.faces_of("0_1")[1].str() == "*");
  REQUIRE(c.basepoint().has_value());
  CHECK(*c.basepoint() == "*");

  auto pt = point_complex();
  CHECK(pt.simplices(0) == std::vector<std::string>{"*"});
  REQUIRE(pt.basepoint().has_value());
}

TEST_CASE("validate rejects broken complexes with specific codes") {
  auto code_of = [](const FiniteSimplicialSet& K) {
    try {
      K.validate();
      return std::string("ok");
    } catch (const Error& e) {
      return e.code();
    }
  };

  FiniteSimplicialSet dangling;
  dangling.add_simplex(0, "a", {});
  dangling.add_simplex(1, "e", {{{}, "ghost"}, {{}, "a"}});
  try {
    dangling.validate();
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "E_NO_SIMPLEX");
    CHECK(std::string(e.what()).find("face of e references unknown id ghost") != std::string::npos);
  }

  FiniteSimplicialSet badword;
  badword.add_simplex(0, "v", {});
  badword.add_simplex(1, "e", {{{0, 0}, "v"}, {{}, "v"}});
  CHECK(code_of(badword) == "E_WORD_ORDER");

  FiniteSimplicialSet baddim;
  baddim.add_simplex(0, "a", {});
  baddim.add_simplex(0, "b", {});
  baddim.add_simplex(1, "e1", {{{}, "b"}, {{}, "a"}});
  baddim.add_simplex(1, "e2", {{{}, "e1"}, {{}, "a"}});
  CHECK(code_of(baddim) == "E_FACE_DIM");

  FiniteSimplicialSet nobase;
  nobase.add_simplex(0, "a", {});
  CHECK_THROWS_AS(nobase.set_basepoint("zzz"), Error);
}

TEST_CASE("degeneracy word normalization") {
  // s_j s_w normalized back to strictly decreasing words, and stripped again
  DegWord w = insert_degeneracy({2, 0}, 1);
  CHECK(w == DegWord{3, 1, 0});
  CHECK(strip_degeneracy(w, 1) == DegWord{2, 0});
  CHECK(insert_degeneracy({}, 0) == DegWord{0});
}

TEST_CASE("iterated faces and monotone structure maps") {
  auto d3 = standard_simplex(3);
  CHECK(d3.iterated_face("0_1_2_3", {0, 3}).str() == "0_3");
  CHECK(d3.iterated_face("0_1_2_3", {1}).str() == "1");
  CHECK(d3.iterated_face("0_1_2_3", {0, 1, 2, 3}).str() == "0_1_2_3");

  auto d1 = standard_simplex(1);
  // [2] -> [1], 0,0,1: the degenerate edge s_0(0_1)
  CHECK(d1.simplex_from_monotone("0_1", {0, 0, 1}).str() == "s0.0_1");
  CHECK(d1.simplex_from_monotone("0_1", {0, 1}).str() == "0_1");
  CHECK(d1.simplex_from_monotone("0_1", {1, 1}).str() == "s0.1");
}

TEST_CASE("regularity detection") {
  CHECK(standard_simplex(2).is_regular());
  std::string why;
  CHECK_FALSE(circle().is_regular(&why));
  CHECK(why == "simplex 0_1 has coincident iterated faces");
}

TEST_CASE("barycentric subdivision of the interval zigzags") {
  auto sd = subdivide(standard_simplex(1));
  CHECK(sd.K.simplices(0) == std::vector<std::string>{"0", "1", "0_1"});
  CHECK(sd.K.simplices(1) == std::vector<std::string>{"0|0_1", "1|0_1"});
  // both new edges run *into* the barycenter: d_0 = 0_1 on each
  CHECK(sd.K.faces_of("0|0_1")[0].str() == "0_1");
  CHECK(sd.K.faces_of("0|0_1")[1].str() == "0");
  CHECK(sd.K.faces_of("1|0_1")[0].str() == "0_1");
  CHECK(sd.K.faces_of("1|0_1")[1].str() == "1");

  // last-vertex map: barycenter goes to the chain's last vertex
  CHECK(sd.lv.images.at("0_1").str() == "1");
  CHECK(sd.lv.images.at("0|0_1").str() == "0_1");
  CHECK(sd.lv.images.at("1|0_1").str() == "s0.1");
  CHECK_NOTHROW(validate_map(sd.lv, sd.K, standard_simplex(1)));

  CHECK(sd.chains.at("0|0_1") == std::vector<std::string>{"0", "0_1"});
}

TEST_CASE("subdivision counts and invariance") {
  auto sd2 = subdivide(standard_simplex(2));
  CHECK(sd2.K.simplices(0).size() == 7);
  CHECK(sd2.K.simplices(1).size() == 12);
  CHECK(sd2.K.simplices(2).size() == 6);
  CHECK(sd2.chains.size() == 25);
  CHECK(sd2.K.euler_characteristic() == 1);
  CHECK_NOTHROW(sd2.K.validate());
  CHECK(sd2.K.is_regular());

  // sd of a non-regular complex still validates and keeps chi
  auto sdc = subdivide(circle());
  CHECK_NOTHROW(sdc.K.validate());
  CHECK(sdc.K.euler_characteristic() == 0);
}

TEST_CASE("quotient collapses a subcomplex to the basepoint") {
  auto d1 = standard_simplex(1);
  auto q = quotient(d1, {"0", "1"});
  CHECK(q.q.size() == 2);
  CHECK(q.proj.images.at("0").str() == "*");
  CHECK(q.proj.images.at("0_1").str() == "0_1");
  CHECK_NOTHROW(validate_map(q.proj, d1, q.q));
  CHECK(isomorphic(q.q, circle()));

  // Delta^2 / boundary: one vertex, chi of the 2-sphere
  auto q2 = quotient(standard_simplex(2),
                     {"0", "1", "2", "0_1", "0_2", "1_2"});
  CHECK(q2.q.euler_characteristic() == 2);
  CHECK(q2.q.simplices(0).size() == 1);
}

TEST_CASE("product of two intervals is a square") {
  auto d1 = standard_simplex(1);
  auto pr = product(d1, d1);
  CHECK(pr.p.simplices(0).size() == 4);
  CHECK(pr.p.simplices(1).size() == 5);
  CHECK(pr.p.simplices(2).size() == 2);
  CHECK(pr.p.euler_characteristic() == 1);
  CHECK_NOTHROW(pr.p.validate());
  CHECK_NOTHROW(validate_map(pr.pr1, pr.p, d1));
  CHECK_NOTHROW(validate_map(pr.pr2, pr.p, d1));
  // the two triangles project to the two degeneracies of the edge
  auto cells = pr.p.simplices(2);
  CHECK(pr.pr1.images.at(cells[0]).str() == "s0.0_1");
  CHECK(pr.pr2.images.at(cells[0]).str() == "s1.0_1");
}

TEST_CASE("isomorphism respects subdivision orientation") {
  auto sd = subdivide(standard_simplex(1)).K;

  FiniteSimplicialSet zig;  // both edges enter the middle vertex
  zig.add_simplex(0, "a", {});
  zig.add_simplex(0, "b", {});
  zig.add_simplex(0, "c", {});
  zig.add_simplex(1, "ab", {{{}, "b"}, {{}, "a"}});
  zig.add_simplex(1, "cb", {{{}, "b"}, {{}, "c"}});
  auto iso = find_isomorphism(zig, sd);
  REQUIRE(iso.has_value());
  CHECK(iso->at("b") == "0_1");

  FiniteSimplicialSet straight;  // a -> b -> c cannot match the zigzag
  straight.add_simplex(0, "a", {});
  straight.add_simplex(0, "b", {});
  straight.add_simplex(0, "c", {});
  straight.add_simplex(1, "ab", {{{}, "b"}, {{}, "a"}});
  straight.add_simplex(1, "bc", {{{}, "c"}, {{}, "b"}});
  CHECK_FALSE(find_isomorphism(straight, sd).has_value());
}

TEST_CASE("canonical form is relabeling invariant") {
  auto d1 = standard_simplex(1);
  CHECK(d1.canonical_order() == std::vector<std::string>{"1", "0", "0_1"});
  auto re = d1.relabeled({{"0", "p"}, {"1", "q"}, {"0_1", "pq"}});
  CHECK_NOTHROW(re.validate());
  CHECK(re.canonical_string() == d1.canonical_string());
  CHECK(isomorphic(re, d1));
  CHECK(re.faces_of("pq")[0].str() == "q");
}

TEST_CASE("map composition applies left to right") {
  auto sd = subdivide(standard_simplex(1));
  auto sdsd = subdivide(sd.K);
  // lv after lv: sd^2 -> Delta^1
  auto twice = compose(sdsd.lv, sd.lv);
  CHECK_NOTHROW(validate_map(twice, sdsd.K, standard_simplex(1)));
  for (auto& [id, img] : twice.images)
    CHECK(img == sd.lv.apply(sdsd.lv.images.at(id)));
}

TEST_CASE("json round trip preserves the complex") {
  auto d1 = standard_simplex(1);
  CHECK(d1.to_json().dump() ==
        R"({"dims":[0,1],"simplices":{"0":["0","1"],"1":[{"faces":[[[],"1"],[[],"0"]],"id":"0_1"}]}})");
  auto back = FiniteSimplicialSet::from_json(d1.to_json());
  CHECK(back == d1);

  auto c = circle();
  CHECK(FiniteSimplicialSet::from_json(c.to_json()) == c);
  auto sd2 = subdivide(standard_simplex(2)).K;
  CHECK(FiniteSimplicialSet::from_json(sd2.to_json()) == sd2);

  try {
    FiniteSimplicialSet::from_json(nlohmann::json::parse("{\"dims\":[0]}"));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "E_SCHEMA");
  }
  CHECK_THROWS_AS(FiniteSimplicialSet::from_json(nlohmann::json::parse("[]")), Error);
}

}  // TEST_SUITE
