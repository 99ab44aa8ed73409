#include <doctest.h>

#include "ospfield/builtins.hpp"
#include "ospfield/reference.hpp"

using namespace ospfield;

TEST_CASE("reference families build and pass degree-3 confluence") {
  for (auto d : std::vector<AlgebraDescriptor>{
           {Family::A1},        {Family::Afermi}, {Family::S3},
           {Family::S4},        {Family::F},      {Family::Sl2},
           {Family::A, 2, 1, 1}, {Family::HatA, 1, 1, 1},
           {Family::HatA, 2, 1, 0}}) {
    Presentation p = build_reference(d);
    CAPTURE(p.name());
    CHECK(p.check_confluence(3).passed());
  }
}

TEST_CASE("hatA(r,s,t) counts: generators, directed and dotted edges") {
  for (auto [r, s, t] : std::vector<std::array<int, 3>>{
           {1, 1, 0}, {2, 1, 0}, {1, 1, 1}, {2, 2, 3}, {0, 1, 0}}) {
    Presentation p = build_reference({Family::HatA, r, s, t});
    CHECK(p.ngens() == std::size_t(2 * r + 2 * s + t));
    RelationGraph g = relation_graph(p);
    CHECK(g.directed.size() == std::size_t(r));
    CHECK(g.dotted.size() == std::size_t(s));
  }
}

TEST_CASE("invalid descriptor parameters are rejected") {
  CHECK_THROWS_AS(build_reference({Family::HatA, -1, 0, 0}), EngineError);
}

TEST_CASE("fermionic change of variables in A^1") {
  Presentation p = build_reference({Family::Afermi});
  p.mark_invertible("u");
  REQUIRE(p.check_confluence(3).passed());
  Budget bud{p.budget_limit()};
  Element u = p.generator_element(0), v = p.generator_element(1);
  Element w = Scalar(2) * p.multiply(u, v, bud) - p.constant(Scalar(1));
  CHECK(p.bracket(w, u, BracketKind::Acomm, bud).is_zero());
  CHECK(p.bracket(w, v, BracketKind::Acomm, bud).is_zero());
  // v = (1/2) u^{-1} (w + 1)
  Element vr = p.multiply(p.generator_element(0, -1),
                          w + p.constant(Scalar(1)), bud) *
               scalar(1, 2);
  CHECK(vr == v);
}

TEST_CASE("graph classification of the builtin pictures") {
  // S3: x -> y directed, x..z and y..z dotted
  RelationGraph g = relation_graph(build_reference({Family::S3}));
  REQUIRE(g.directed.size() == 1);
  CHECK(g.vertices[g.directed[0].a] == "x");
  CHECK(g.vertices[g.directed[0].b] == "y");
  REQUIRE(g.dotted.size() == 2);

  // osp(1,2): the b-b+ pair keeps its 2k tail as an edge label
  BuiltinInstance inst = make_builtin("osp", {1, 2});
  RelationGraph o = relation_graph(inst.pres);
  bool found = false;
  for (const auto& e : o.dotted)
    if (e.label == "2*k") found = true;
  CHECK(found);
}

TEST_CASE("graph rejects q outside {1,-1}") {
  Presentation p("qplane", {{"x", 0, false}, {"y", 0, false}});
  p.set_rule(1, 0, scalar(2), Element());
  CHECK_THROWS_AS(relation_graph(p), EngineError);
}

TEST_CASE("DOT output is deterministic") {
  Presentation p = build_reference({Family::S4});
  RelationGraph g = relation_graph(p);
  CHECK(g.to_dot("S4") == relation_graph(p).to_dot("S4"));
}
