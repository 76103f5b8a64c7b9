#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tpack/errors.hpp"
#include "tpack/rays.hpp"
#include "tpack/zoo.hpp"

using namespace tpack;

namespace {

void check_system(const LFGraphPresentation& g, const RaySystem& rs) {
  CHECK(rs.rays.size() == rs.claimed_size);
  std::set<EdgeId> used;
  for (const auto& ray : rs.rays) {
    REQUIRE_FALSE(ray.verts.empty());
    CHECK(ray.verts.size() == ray.edges.size() + 1);
    // starts in S, no other vertex in S
    CHECK(rs.source_set.count(ray.verts.front()) == 1);
    for (std::size_t i = 1; i < ray.verts.size(); ++i) {
      CHECK(rs.source_set.count(ray.verts[i]) == 0);
    }
    // simple, consecutive vertices adjacent through the named edge
    std::set<VertexId> seen(ray.verts.begin(), ray.verts.end());
    CHECK(seen.size() == ray.verts.size());
    for (std::size_t i = 0; i < ray.edges.size(); ++i) {
      bool ok = false;
      for (const auto& [eid, w] : g.adjacency(ray.verts[i])) {
        if (eid == ray.edges[i] && w == ray.verts[i + 1]) ok = true;
      }
      CHECK(ok);
    }
    for (const auto& e : ray.edges) {
      CHECK(used.insert(e).second);  // pairwise edge-disjoint
    }
  }
}

}  // namespace

TEST_CASE("single ray graph: the system is the graph itself") {
  auto ray = zoo_presentation("ray", {});
  auto rs = max_ray_system(ray, {"v@0"}, "omega", 10);
  CHECK(rs.claimed_size == 1);
  REQUIRE(rs.rays.size() == 1);
  CHECK(rs.rays[0].verts.front() == "v@0");
  CHECK(rs.rays[0].verts[1] == "v@1");
  CHECK(rs.rays[0].verts.size() >= 10);
  check_system(ray, rs);
}

TEST_CASE("double ladder: two rail rays from a rung pair") {
  auto lad = zoo_presentation("double_ladder", {});
  auto rs = max_ray_system(lad, {"u@0", "w@0"}, "east", 12);
  CHECK(rs.claimed_size == 2);
  check_system(lad, rs);
  // the two rays leave along the two rails
  std::set<VertexId> starts;
  for (const auto& r : rs.rays) starts.insert(r.verts.front());
  CHECK(starts == std::set<VertexId>{"u@0", "w@0"});
}

TEST_CASE("source choices on the zoo families match the stabilized cut") {
  struct Probe {
    std::string name;
    std::set<VertexId> s;
    EndId end;
    std::size_t expect;
  };
  std::vector<Probe> probes{
      {"ray", {"v@0"}, "omega", 1},
      {"ray", {"v@3"}, "omega", 1},
      {"ray", {"v@0", "v@5"}, "omega", 1},
      {"double_ladder", {"u@0", "w@0"}, "east", 2},
      {"double_ladder", {"u@0"}, "east", 2},
      {"double_ladder", {"w@2"}, "west", 2},
      {"dup_rung_ladder", {"u@0", "w@0"}, "east", 2},
      {"dup_rung_ladder", {"u@0"}, "west", 2},
      {"dup_rung_ladder", {"u@0", "u@1", "w@0", "w@1"}, "east", 2},
  };
  for (const auto& probe : probes) {
    CAPTURE(probe.name);
    auto g = zoo_presentation(probe.name, {});
    auto rs = max_ray_system(g, probe.s, probe.end, 8);
    CHECK(rs.claimed_size == probe.expect);
    check_system(g, rs);
  }
}

TEST_CASE("extending depth preserves prefixes and the claimed size") {
  for (const char* name : {"ray", "double_ladder", "dup_rung_ladder"}) {
    CAPTURE(name);
    auto g = zoo_presentation(name, {});
    std::set<VertexId> s =
        std::string(name) == "ray" ? std::set<VertexId>{"v@0"}
                                   : std::set<VertexId>{"u@0", "w@0"};
    EndId end = std::string(name) == "ray" ? "omega" : "east";
    auto shallow = max_ray_system(g, s, end, 20);
    CHECK(shallow.materialized_depth >= 20);
    auto deep = extend_rays(g, shallow, 60);
    CHECK(deep.materialized_depth >= 60);
    CHECK(deep.claimed_size == shallow.claimed_size);
    REQUIRE(deep.rays.size() == shallow.rays.size());
    for (std::size_t i = 0; i < deep.rays.size(); ++i) {
      REQUIRE(deep.rays[i].verts.size() >= shallow.rays[i].verts.size());
      for (std::size_t k = 0; k < shallow.rays[i].verts.size(); ++k) {
        CHECK(deep.rays[i].verts[k] == shallow.rays[i].verts[k]);
      }
      for (std::size_t k = 0; k < shallow.rays[i].edges.size(); ++k) {
        CHECK(deep.rays[i].edges[k] == shallow.rays[i].edges[k]);
      }
    }
    check_system(g, deep);
  }
}

TEST_CASE("ray systems against a cut start in its edges") {
  auto lad = zoo_presentation("dup_rung_ladder", {});
  // the two east rails at column 3 form a minimum east-separating cut
  std::set<EdgeId> cut{"p@3", "q@3"};
  auto rs = ray_system_against_cut(lad, cut, "east", 15);
  CHECK(rs.claimed_size == 2);
  auto idx = start_edge_index(rs, rs.against);
  CHECK(idx.size() == 2);
  CHECK(idx.count("p@3") == 1);
  CHECK(idx.count("q@3") == 1);
  for (const auto& [eid, i] : idx) {
    CHECK(rs.rays[i].edges.front() == eid);
  }
  // rays stay on the east side: no vertex with a cell index below 3
  for (const auto& ray : rs.rays) {
    for (std::size_t i = 1; i < ray.verts.size(); ++i) {
      auto at = ray.verts[i].rfind('@');
      REQUIRE(at != std::string::npos);
      CHECK(std::stol(ray.verts[i].substr(at + 1)) >= 4);
    }
  }
}

TEST_CASE("start_edge_index rejects mismatched cuts") {
  auto ray = zoo_presentation("ray", {});
  auto rs = max_ray_system(ray, {"v@0"}, "omega", 6);
  Cut wrong;
  wrong.edge_set = {"r@0", "r@1"};  // size 2 against a 1-ray system
  CHECK_THROWS_AS(start_edge_index(rs, wrong), Error);
  Cut absent;
  absent.edge_set = {"r@5"};  // right size, wrong edge
  CHECK_THROWS_AS(start_edge_index(rs, absent), Error);
}

TEST_CASE("ray json carries the depth and end id") {
  auto ray = zoo_presentation("ray", {});
  auto rs = max_ray_system(ray, {"v@0"}, "omega", 6);
  auto doc = ray_system_to_json(rs);
  CHECK(doc.at("end") == "omega");
  CHECK(doc.at("materialized_depth").get<unsigned>() >= 6);
  CHECK(doc.at("claimed_size") == 1);
}
