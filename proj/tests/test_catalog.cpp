#include "doctest.h"
#include "support.hpp"
#include "twbd/canonical.hpp"
#include "twbd/catalog.hpp"
#include "twbd/error.hpp"

using namespace twbd;
using namespace twbd::testing;

TEST_SUITE("catalog") {

TEST_CASE("entry list") {
  auto ids = catalog_list();
  REQUIRE(ids.size() == 33);
  CHECK(ids.front() == "D16_1");
  CHECK(ids[1] == "D20_1");
  CHECK(ids[3] == "X20_3");
  CHECK(ids.back() == "D28_15");
  std::map<Point, int> per_v;
  for (const auto &e : catalog_entries()) ++per_v[e.v];
  CHECK(per_v == std::map<Point, int>{{16, 1}, {20, 3}, {22, 7}, {26, 7}, {28, 15}});
  CHECK_THROWS_AS(catalog_get("D99_1"), std::out_of_range);
}

TEST_CASE("baseblock counts follow the listings") {
  CHECK(catalog_get("D22_1").baseblocks.size() == 16);
  CHECK(catalog_get("D22_3").baseblocks.size() == 16);
  CHECK(catalog_get("X22_4").baseblocks.size() == 19);
  CHECK(catalog_get("X22_5").baseblocks.size() == 20);
  CHECK(catalog_get("X22_6").baseblocks.size() == 20);
  CHECK(catalog_get("X22_7").baseblocks.size() == 15);
}

TEST_CASE("materialized entries are designs with the right block counts") {
  for (const auto &e : catalog_entries()) {
    CAPTURE(e.id);
    auto d = e.materialize();
    CHECK(verify_twbd(d, 3, {4, 6}, 1).ok);
    CHECK(d.blocks_of_size(6).size() == e.v);
    CHECK(d.blocks_of_size(4).size() == tetrad_count(e.v));
    CHECK(is_transitive(e.group()));
  }
  auto d16 = catalog_get("D16_1").materialize();
  CHECK(d16.blocks_of_size(6).size() == 16);
  CHECK(d16.blocks_of_size(4).size() == 60);
}

TEST_CASE("label schemes") {
  // x_i -> x + 11 i
  CHECK(catalog_get("D22_1").baseblocks.front() == Subset{0, 2, 6, 12});
  // The hex listing's "14" is point 14.
  CHECK(catalog_get("D16_1").generators[1](10) == 14);
  CHECK(catalog_get("D16_1").generators[1](14) == 2);
  auto g = catalog_get("D22_1").generators;
  REQUIRE(g.size() == 2);
  CHECK(g[0](10) == 0);
  CHECK(g[0](21) == 11);
  CHECK(g[1](0) == 11);
  CHECK(g[1](1) == 21);
  CHECK(closure_order(catalog_get("D22_1").group()) == 22);
  CHECK(closure_order(catalog_get("X20_3").group()) == 80);
}

TEST_CASE("entry parser") {
  const char *ok = "# T1\nv 4\nlabels decimal\norder 4\nhexads not-2-class\ngenerators\n(0,1,2,3)\nbaseblocks\n{0,1}\n";
  auto e = parse_catalog_entry(ok);
  CHECK(e.id == "T1");
  CHECK(e.expected_order == std::optional<std::uint64_t>(4));
  CHECK(e.materialize().size() == 4);
  CHECK_THROWS_AS(parse_catalog_entry("# T\nv 4\nbogus 1\n"), ParseError);
  CHECK_THROWS_AS(parse_catalog_entry("# T\nv 4\ngenerators\n(0,1)\nbaseblocks\n{0,9}\n"), ParseError);
  CHECK_THROWS_AS(parse_catalog_entry("# T\nv 4\ngenerators\n(0,1)\nbaseblocks\n{0,0}\n"), ParseError);
  CHECK_THROWS_AS(parse_catalog_entry("# T\nv 4\ngenerators\naction x+1\nbaseblocks\n{0}\n"), ParseError);
  CHECK_THROWS_AS(parse_catalog_entry("# T\nv 4\n"), ParseError);
  CHECK_THROWS_AS(parse_catalog_entry("# T\nv 22\nlabels z11x2\ngenerators\naction y\nbaseblocks\n{0_0}\n"), ParseError);
}

TEST_CASE("flat best biplane listing is the same design as D16_1") {
  auto flat = best_biplane_fixture();
  CHECK(flat.blocks_of_size(6).size() == 16);
  CHECK(flat.blocks_of_size(4).size() == 60);
  CHECK(verify_twbd(flat, 3, {4, 6}, 1).ok);
  CHECK(verify_twbd(flat.blocks_of_size(6), 2, {6}, 2).ok);
  CHECK(are_isomorphic(flat, catalog_get("D16_1").materialize()));
}

TEST_CASE("same-v entries are pairwise non-isomorphic") {
  const auto &entries = catalog_entries();
  std::vector<Certificate> certs;
  for (const auto &e : entries) certs.push_back(canonical_certificate(e.materialize()));
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = i + 1; j < entries.size(); ++j)
      if (entries[i].v == entries[j].v) {
        CAPTURE(entries[i].id);
        CAPTURE(entries[j].id);
        CHECK(certs[i] != certs[j]);
      }
}

TEST_CASE("verify_all passes and a corrupted entry fails with a witness") {
  auto reports = verify_all(2);
  REQUIRE(reports.size() == 33);
  for (const auto &r : reports) {
    CAPTURE(r.id);
    CHECK(r.pass());
    CHECK(r.gd_conventions_agree);
  }
  CHECK(reports.back().id == "D28_15");
  CHECK_FALSE(reports.back().expected_order);

  const auto &e = catalog_get("D20_1");
  auto d = e.materialize();
  std::vector<Subset> blocks(d.blocks().begin(), d.blocks().end());
  blocks[0] = blocks[0].without(blocks[0].points().back()).with(blocks[0].points().back() == 19 ? 18 : 19);
  auto r = verify_entry(e, SetSystem(20, blocks));
  CHECK_FALSE(r.pass());
  CHECK_FALSE(r.balanced);
  CHECK(r.balance_detail.find("lies in") != std::string::npos);
  CHECK(format_report_table({r}).find("FAIL") != std::string::npos);
}

}  // TEST_SUITE
