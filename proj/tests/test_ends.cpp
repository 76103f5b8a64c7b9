#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "support.hpp"
#include "tpack/errors.hpp"
#include "tpack/lfgraph.hpp"
#include "tpack/tpath.hpp"
#include "tpack/zoo.hpp"

using namespace tpack;

TEST_CASE("window of a single ray") {
  auto ray = zoo_presentation("ray", {});
  TruncatedGraph w = window(ray, 3);
  // path of 4 vertices plus one end-region super attached at distance 3
  CHECK(w.ball.size() == 4);
  CHECK(w.end_region.count("omega") == 1);
  CHECK(w.nonend_regions.empty());
  CHECK(w.graph.vertex_count() == 5);
  CHECK(w.graph.edge_count() == 4);
  const VertexId& super = w.end_region.at("omega");
  CHECK(w.graph.degree(super) == 1);
  // the super attaches at the distance-3 vertex
  const auto& e = w.graph.edges()[w.graph.incident(super)[0]];
  VertexId attach = e.u == super ? e.v : e.u;
  CHECK(w.distance.at(attach) == 3);
}

TEST_CASE("window of the duplicated-rung ladder") {
  auto lad = zoo_presentation("dup_rung_ladder", {});
  TruncatedGraph w = window(lad, 4);
  CHECK(w.end_region.count("east") == 1);
  CHECK(w.end_region.count("west") == 1);
  CHECK(w.end_region.at("east") != w.end_region.at("west"));
  CHECK(w.nonend_regions.empty());
  // the ball boundary is staggered (w@4 is at distance 5), so each region
  // attaches through one rail, the two rungs of the boundary column, and the
  // other rail
  for (const auto& [end, super] : w.end_region) {
    (void)end;
    CHECK(w.graph.degree(super) == 4);
  }
}

TEST_CASE("window of a finite presentation is the graph itself") {
  auto g = tsup::graph({"a", "b", "c", "d"},
                       {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}});
  auto p = presentation_from_graph(g);
  for (unsigned r : {0u, 1u, 2u, 5u}) {
    TruncatedGraph w = window(p, r);
    CHECK(w.graph.vertex_count() == 4);
    CHECK(w.graph.edge_count() == 4);
    CHECK(w.end_region.empty());
    CHECK(w.nonend_regions.empty());
  }
}

TEST_CASE("window restriction is consistent across radii") {
  auto lad = zoo_presentation("dup_rung_ladder", {});
  for (unsigned r = 2; r <= 6; ++r) {
    TruncatedGraph big = window(lad, r);
    TruncatedGraph small = window(lad, r - 1);
    // every edge of the smaller ball appears identically in the bigger window
    for (const auto& e : small.graph.edges()) {
      auto du = small.distance.find(e.u);
      auto dv = small.distance.find(e.v);
      if (du == small.distance.end() || dv == small.distance.end()) continue;
      CHECK(big.graph.has_edge(e.id));
      const auto& be = big.graph.edge(e.id);
      CHECK(std::set<VertexId>{be.u, be.v} == std::set<VertexId>{e.u, e.v});
    }
  }
}

TEST_CASE("check_discrete") {
  SUBCASE("double ladder ends separate at small radius") {
    auto lad = zoo_presentation("double_ladder", {});
    TerminalSpec t;
    t.end_terminals = {"east", "west"};
    auto verdicts = check_discrete(lad, t, 16);
    CHECK(verdicts.at("east").status == DiscreteVerdict::Status::Discrete);
    CHECK(verdicts.at("west").status == DiscreteVerdict::Status::Discrete);
    CHECK(verdicts.at("east").radius <= 3);
  }
  SUBCASE("vertex-only terminal sets are discrete without search") {
    auto lad = zoo_presentation("dup_rung_ladder", {});
    TerminalSpec t;
    t.vertex_terminals = {"u@0", "w@3"};
    auto verdicts = check_discrete(lad, t, 4);
    for (const auto& [tok, v] : verdicts) {
      (void)tok;
      CHECK(v.status == DiscreteVerdict::Status::Discrete);
    }
  }
  SUBCASE("ends plus a main-ray family are not discrete") {
    auto lad = zoo_presentation("dup_rung_ladder", {});
    TerminalSpec t;
    t.end_terminals = {"east", "west"};
    t.families = {"top"};
    auto verdicts = check_discrete(lad, t, 12);
    CHECK(verdicts.at("east").status == DiscreteVerdict::Status::NotDiscrete);
    CHECK(verdicts.at("west").status == DiscreteVerdict::Status::NotDiscrete);
    CHECK_FALSE(verdicts.at("east").evidence.empty());
  }
}

TEST_CASE("lambda_end") {
  SUBCASE("single ray: every edge is a cut") {
    auto ray = zoo_presentation("ray", {});
    auto r = lambda_end(ray, TerminalRef::of_end("omega"),
                        {TerminalRef::of_vertex("v@0")}, 16);
    CHECK(r.value == 1);
  }
  SUBCASE("double ladder end to end") {
    auto lad = zoo_presentation("double_ladder", {});
    auto r = lambda_end(lad, TerminalRef::of_end("east"),
                        {TerminalRef::of_end("west")}, 16);
    CHECK(r.value == 2);
    // certificate lies strictly inside the smaller ball
    TruncatedGraph w = window(lad, r.radius);
    for (const EdgeId& eid : r.cut.edge_set) {
      const auto& e = w.graph.edge(eid);
      CHECK(w.distance.at(e.u) <= r.radius - 1);
      CHECK(w.distance.at(e.v) <= r.radius - 1);
    }
  }
  SUBCASE("fig3 tree: lambda(leaf) = 1") {
    auto fig3 = zoo_presentation("fig3_tree", {});
    for (const char* leaf : {"la", "lb", "lc"}) {
      std::vector<TerminalRef> rest;
      for (const char* other : {"la", "lb", "lc"}) {
        if (std::string(other) != leaf) rest.push_back(TerminalRef::of_vertex(other));
      }
      auto r = lambda_end(fig3, TerminalRef::of_vertex(leaf), rest, 16);
      CHECK(r.value == 1);
    }
  }
  SUBCASE("unstabilized within a tiny budget") {
    auto lad = zoo_presentation("double_ladder", {});
    CHECK_THROWS_AS(lambda_end(lad, TerminalRef::of_end("east"),
                               {TerminalRef::of_end("west")}, 1),
                    Error);
  }
}

TEST_CASE("end degree parity") {
  CHECK(end_degree_parity(zoo_presentation("ray", {}), "omega", 16).parity == Parity::Odd);
  CHECK(end_degree_parity(zoo_presentation("double_ladder", {}), "east", 16).parity ==
        Parity::Even);
  auto dup = end_degree_parity(zoo_presentation("dup_rung_ladder", {}), "east", 16);
  CHECK(dup.parity == Parity::Even);
  CHECK(dup.degrees.front() == 2);
  auto fig3 = end_degree_parity(zoo_presentation("fig3_tree", {}), "omega", 16);
  CHECK(fig3.parity == Parity::Odd);
  CHECK(fig3.degrees.front() == 1);
}

TEST_CASE("inner-Eulerian with ends") {
  SUBCASE("fig3 with leaf terminals fails on the odd end") {
    TerminalSpec t;
    t.vertex_terminals = {"la", "lb", "lc"};
    auto v = is_inner_eulerian_with_ends(zoo_presentation("fig3_tree", {}), t, 16);
    CHECK(v.status == EndsVerdict::Status::False);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->is_end);
    CHECK(v.witness->end == "omega");
  }
  SUBCASE("dup_rung_ladder with both ends is inner-Eulerian") {
    TerminalSpec t;
    t.end_terminals = {"east", "west"};
    auto v = is_inner_eulerian_with_ends(zoo_presentation("dup_rung_ladder", {}), t, 16);
    CHECK(v.status == EndsVerdict::Status::True);
  }
  SUBCASE("double ladder fails on a degree-3 vertex") {
    TerminalSpec t;
    t.end_terminals = {"east", "west"};
    auto v = is_inner_eulerian_with_ends(zoo_presentation("double_ladder", {}), t, 16);
    CHECK(v.status == EndsVerdict::Status::False);
    REQUIRE(v.witness.has_value());
    CHECK_FALSE(v.witness->is_end);
  }
  SUBCASE("ray with every vertex terminal: premise vacuous, odd end outside T") {
    TerminalSpec t;
    t.families = {"all"};
    auto ray = zoo_presentation("ray", {});
    auto v = is_inner_eulerian_with_ends(ray, t, 16);
    CHECK(v.status == EndsVerdict::Status::False);  // the end is odd
    for (unsigned r : {2u, 4u, 6u}) {
      auto cp = check_cut_parity_premise(ray, t, r);
      CHECK(cp.status == CutParityVerdict::Status::True);  // vacuously: T fills V
    }
  }
}

TEST_CASE("cut parity premise enumeration") {
  SUBCASE("fig3 with leaf terminals has an odd witness cut") {
    TerminalSpec t;
    t.vertex_terminals = {"la", "lb", "lc"};
    for (unsigned r : {1u, 2u, 4u}) {
      auto cp = check_cut_parity_premise(zoo_presentation("fig3_tree", {}), t, r);
      CHECK(cp.status == CutParityVerdict::Status::False);
      REQUIRE(cp.odd_witness.has_value());
      CHECK(cp.odd_witness->edge_set.size() % 2 == 1);
    }
  }
  SUBCASE("K_{1,4} with leaf terminals holds") {
    auto g = tsup::graph({"c", "w", "x", "y", "z"},
                         {{"c", "w"}, {"c", "x"}, {"c", "y"}, {"c", "z"}});
    TerminalSpec t;
    t.vertex_terminals = {"w", "x", "y", "z"};
    auto cp = check_cut_parity_premise(g, t);
    CHECK(cp.status == CutParityVerdict::Status::True);
  }
  SUBCASE("dup_rung_ladder with both ends holds at small radii") {
    auto lad = zoo_presentation("dup_rung_ladder", {});
    TerminalSpec t;
    t.end_terminals = {"east", "west"};
    for (unsigned r : {1u, 2u, 3u}) {
      auto cp = check_cut_parity_premise(lad, t, r);
      CHECK(cp.status == CutParityVerdict::Status::True);
    }
  }
  SUBCASE("guard refusal on large windows") {
    auto lad = zoo_presentation("dup_rung_ladder", {});
    TerminalSpec t;
    t.end_terminals = {"east", "west"};
    CHECK_THROWS_AS(check_cut_parity_premise(lad, t, 12), Error);
  }
}

TEST_CASE("inner-Eulerian instances satisfy the cut parity premise") {
  // wherever inner-Eulerian-with-ends certifies true, the cut-parity premise
  // holds at every enumerable radius
  struct Probe {
    std::string name;
    TerminalSpec t;
  };
  std::vector<Probe> probes;
  {
    Probe p;
    p.name = "dup_rung_ladder";
    p.t.end_terminals = {"east", "west"};
    probes.push_back(p);
    Probe q;
    q.name = "ray";
    q.t.vertex_terminals = {"v@0"};
    q.t.end_terminals = {"omega"};
    probes.push_back(q);
  }
  for (const auto& probe : probes) {
    auto g = zoo_presentation(probe.name, {});
    auto ie = is_inner_eulerian_with_ends(g, probe.t, 16);
    if (ie.status != EndsVerdict::Status::True) continue;
    for (unsigned r : {1u, 2u, 3u}) {
      auto cp = check_cut_parity_premise(g, probe.t, r);
      CHECK(cp.status == CutParityVerdict::Status::True);
    }
  }
}

TEST_CASE("handshake audit") {
  auto ray = handshake_check(zoo_presentation("ray", {}), 16);
  CHECK(ray.status == HandshakeResult::Status::Even);
  CHECK(ray.odd_vertices.size() + ray.odd_ends.size() == 2);

  auto fig3 = handshake_check(zoo_presentation("fig3_tree", {}), 16);
  CHECK(fig3.status == HandshakeResult::Status::Even);
  CHECK(fig3.odd_vertices.size() == 3);
  CHECK(fig3.odd_ends.size() == 1);

  auto dup = handshake_check(zoo_presentation("dup_rung_ladder", {}), 16);
  CHECK(dup.status == HandshakeResult::Status::Even);
  CHECK(dup.odd_vertices.empty());
  CHECK(dup.odd_ends.empty());

  auto dl = handshake_check(zoo_presentation("double_ladder", {}), 16);
  CHECK(dl.status == HandshakeResult::Status::PotentiallyInfinite);
}

TEST_CASE("finite presentations degenerate to multigraph behavior") {
  auto g = tsup::graph({"a", "b", "c", "d"},
                       {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}});
  auto p = presentation_from_graph(g);
  auto r = lambda_end(p, TerminalRef::of_vertex("a"), {TerminalRef::of_vertex("c")}, 16);
  CHECK(r.value == min_cut(g, {"a"}, {"c"}).value);
  TerminalSpec t;
  t.vertex_terminals = {"a", "c"};
  auto verdicts = check_discrete(p, t, 4);
  CHECK(verdicts.at("a").status == DiscreteVerdict::Status::Discrete);
  auto hs = handshake_check(p, 8);
  CHECK(hs.status == HandshakeResult::Status::Even);
  auto ie = is_inner_eulerian_with_ends(p, t, 8);
  CHECK((ie.status == EndsVerdict::Status::True) ==
        is_inner_eulerian(g, {{"a", "c"}}).holds);
}

TEST_CASE("lambda stabilization is monotone: larger windows keep the value") {
  struct Probe {
    std::string name;
    TerminalRef t;
    std::vector<TerminalRef> rest;
  };
  std::vector<Probe> probes{
      {"ray", TerminalRef::of_end("omega"), {TerminalRef::of_vertex("v@0")}},
      {"double_ladder", TerminalRef::of_end("east"), {TerminalRef::of_end("west")}},
      {"dup_rung_ladder", TerminalRef::of_end("east"), {TerminalRef::of_end("west")}},
      {"fig3_tree",
       TerminalRef::of_vertex("la"),
       {TerminalRef::of_vertex("lb"), TerminalRef::of_vertex("lc")}},
  };
  for (const auto& probe : probes) {
    CAPTURE(probe.name);
    auto g = zoo_presentation(probe.name, {});
    auto r = lambda_end(g, probe.t, probe.rest, 16);
    for (unsigned extra = 1; extra <= 4; ++extra) {
      TruncatedGraph W = window(g, r.radius + extra);
      VertexId src = probe.t.is_end ? W.end_region.at(probe.t.end) : probe.t.vertex;
      std::set<VertexId> sinks;
      for (const auto& ref : probe.rest) {
        sinks.insert(ref.is_end ? W.end_region.at(ref.end) : ref.vertex);
      }
      CHECK(min_cut(W.graph, {src}, sinks).value == r.value);
    }
  }
}

TEST_CASE("presentations are safe for concurrent checks") {
  auto lad = zoo_presentation("dup_rung_ladder", {});
  std::vector<std::size_t> values(4, 0);
  std::vector<std::thread> threads;
  for (int i = 0; i < 4; ++i) {
    threads.emplace_back([&lad, &values, i] {
      auto r = lambda_end(lad, TerminalRef::of_end(i % 2 ? "east" : "west"),
                          {TerminalRef::of_end(i % 2 ? "west" : "east")}, 16);
      values[i] = r.value;
    });
  }
  for (auto& t : threads) t.join();
  for (std::size_t v : values) CHECK(v == 2);
}

TEST_CASE("presentation validation") {
  // a declared representative that skips vertices is not a ray
  LFGraphPresentation bad(
      [](const VertexId& v) {
        std::vector<LFGraphPresentation::AdjEntry> out;
        long k = std::stol(v);
        if (k > 0) out.push_back({"e" + std::to_string(k - 1), std::to_string(k - 1)});
        out.push_back({"e" + std::to_string(k), std::to_string(k + 1)});
        return out;
      },
      "0", {{"omega", [](std::size_t i) { return std::to_string(2 * i); }}});
  CHECK_THROWS_AS(window(bad, 2), Error);
}
