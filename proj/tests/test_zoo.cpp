#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tpack/errors.hpp"
#include "tpack/json_io.hpp"
#include "tpack/periodic.hpp"
#include "tpack/tpath.hpp"
#include "tpack/zoo.hpp"

using namespace tpack;

TEST_CASE("finite entries") {
  auto star3 = zoo_graph("star", {3});
  CHECK(star3.vertex_count() == 4);
  CHECK(star3.edge_count() == 3);
  CHECK(star3.degree("c") == 3);

  auto path4 = zoo_graph("path", {4});
  CHECK(path4.vertex_count() == 4);
  CHECK(path4.edge_count() == 3);

  auto cyc5 = zoo_graph("cycle", {5});
  CHECK(cyc5.edge_count() == 5);
  for (const auto& v : cyc5.vertices()) CHECK(cyc5.degree(v) == 2);

  auto par3 = zoo_graph("parallel", {3});
  CHECK(par3.degree("u") == 3);

  CHECK_THROWS_AS(zoo_graph("nonsense", {}), Error);
  CHECK_THROWS_AS(zoo_graph("ray", {}), Error);  // infinite entry
}

TEST_CASE("documented degree properties hold under audit") {
  auto dup = zoo_presentation("dup_rung_ladder", {});
  for (const char* v : {"u@0", "u@7", "u@-4", "w@0", "w@9", "w@-3"}) {
    CHECK(dup.adjacency(v).size() == 4);
  }
  auto dl = zoo_presentation("double_ladder", {});
  for (const char* v : {"u@0", "w@5", "u@-2"}) {
    CHECK(dl.adjacency(v).size() == 3);
  }
  auto fig3 = zoo_presentation("fig3_tree", {});
  CHECK(fig3.adjacency("c").size() == 4);
  CHECK(fig3.adjacency("la").size() == 1);
  CHECK(fig3.adjacency("lb").size() == 1);
  CHECK(fig3.adjacency("lc").size() == 1);
  CHECK(fig3.adjacency("r@0").size() == 2);
  CHECK(fig3.ends().size() == 1);
}

TEST_CASE("fig3 reconstruction satisfies all four prose properties") {
  auto fig3 = zoo_presentation("fig3_tree", {});
  // even non-leaves within a window
  TruncatedGraph w = window(fig3, 6);
  for (const VertexId& v : w.ball) {
    if (fig3.adjacency(v).size() == 1) continue;  // a leaf
    CHECK(fig3.adjacency(v).size() % 2 == 0);
  }
  // odd unique end
  CHECK(end_degree_parity(fig3, "omega", 16).parity == Parity::Odd);
  // lambda(leaf) = 1
  auto r = lambda_end(fig3, TerminalRef::of_vertex("la"),
                      {TerminalRef::of_vertex("lb"), TerminalRef::of_vertex("lc")}, 16);
  CHECK(r.value == 1);
  // brute-force maximum T-arc count on the window is 1: the window's T-paths
  // between leaves all pass through the center's leaf edges
  TerminalSet leaves{{"la", "lb", "lc"}};
  auto brute = brute_force_pack(w.graph, leaves);
  CHECK(brute.max_paths == 1);
}

TEST_CASE("zoo entries are deterministic builders") {
  auto a = zoo_graph("star", {4});
  auto b = zoo_graph("star", {4});
  CHECK(graph_to_json(a) == graph_to_json(b));
  auto p1 = zoo_periodic("dup_rung_ladder", {});
  auto p2 = zoo_periodic("dup_rung_ladder", {});
  CHECK(periodic_to_json(p1) == periodic_to_json(p2));
}

TEST_CASE("periodic descriptions round-trip through json") {
  for (const char* name : {"ray", "double_ladder", "dup_rung_ladder", "fig3_tree"}) {
    CAPTURE(name);
    auto desc = zoo_periodic(name, {});
    auto doc = periodic_to_json(desc);
    auto back = periodic_from_json(doc);
    CHECK(periodic_to_json(back) == doc);
    // the rebuilt presentation produces the same windows
    auto p1 = presentation_from_periodic(desc);
    auto p2 = presentation_from_periodic(back);
    for (unsigned r : {2u, 4u}) {
      auto w1 = window(p1, r);
      auto w2 = window(p2, r);
      CHECK(graph_to_json(w1.graph) == graph_to_json(w2.graph));
    }
  }
}

TEST_CASE("periodic parser rejects malformed descriptions") {
  auto good = periodic_to_json(zoo_periodic("ray", {}));

  auto bad1 = good;
  bad1["glue"] = {{"r", "v", "nope"}};  // unknown cell vertex
  CHECK_THROWS_AS(presentation_from_periodic(periodic_from_json(bad1)), Error);

  auto bad2 = good;
  bad2["period_cell"]["edges"] = {{"self", "v", "v"}};  // loop
  CHECK_THROWS_AS(presentation_from_periodic(periodic_from_json(bad2)), Error);

  auto bad3 = good;
  bad3["root"] = "ghost@0";
  CHECK_THROWS_AS(presentation_from_periodic(periodic_from_json(bad3)), Error);

  auto bad4 = good;
  bad4.erase("kind");
  CHECK_THROWS_AS(periodic_from_json(bad4), Error);
}

TEST_CASE("zoo describe surfaces the documented facts") {
  auto doc = zoo_describe("dup_rung_ladder", {});
  CHECK(doc.at("ends").size() == 2);
  CHECK(doc.at("finite") == false);
  auto star = zoo_describe("star", {3});
  CHECK(star.at("vertices") == 4);
  CHECK(star.at("degrees").at("c") == 3);
}
