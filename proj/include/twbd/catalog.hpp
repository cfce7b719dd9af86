#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twbd/design.hpp"
#include "twbd/perm.hpp"

namespace twbd {

// One published design: base group, base blocks and what it should verify
// to. Labels are already mapped to 0..v-1.
struct CatalogEntry {
  std::string id;  // e.g. "D22_3", "X20_2"
  Point v = 0;
  std::string family;  // listing it came from, e.g. "v=22 listing"
  std::vector<Permutation> generators;
  std::vector<Subset> baseblocks;
  std::optional<std::uint64_t> expected_order;  // full automorphism group
  std::string expected_hexads;                  // Classification::tag() of the hexads

  PermGroup group() const;
  SetSystem materialize() const;
  std::vector<std::string> generator_strings() const;
};

// Parses one catalog text asset. Throws ParseError.
CatalogEntry parse_catalog_entry(std::string_view text);

// All entries ordered by v, then by listing index.
const std::vector<CatalogEntry> &catalog_entries();
std::vector<std::string> catalog_list();
// Throws std::out_of_range for an unknown id.
const CatalogEntry &catalog_get(std::string_view id);

// The v=16 biplane with its 60 ovals as printed point by point.
SetSystem best_biplane_fixture();

struct EntryReport {
  std::string id;
  Point v = 0;
  bool balanced = false;
  std::string balance_detail;  // witness when unbalanced
  std::size_t hexads = 0, tetrads = 0;
  std::uint64_t expected_tetrads = 0;
  std::string hexad_tag, expected_tag;
  std::uint64_t aut_order = 0;
  std::optional<std::uint64_t> expected_order;
  bool aut_transitive = false;
  // Both readings of the group divisible inequalities give the same type
  // (true when the hexads are not group divisible).
  bool gd_conventions_agree = true;
  double seconds = 0;

  bool counts_ok() const { return hexads == v && tetrads == expected_tetrads; }
  bool tag_ok() const { return hexad_tag == expected_tag; }
  bool order_ok() const { return !expected_order || aut_order == *expected_order; }
  bool pass() const { return balanced && counts_ok() && tag_ok() && order_ok() && aut_transitive; }
};

// Checks design against what entry promises.
EntryReport verify_entry(const CatalogEntry &entry, const SetSystem &design);
EntryReport verify_entry(const CatalogEntry &entry);
// Entries are checked concurrently on jobs threads; reports keep catalog order.
std::vector<EntryReport> verify_all(unsigned jobs = 1);

std::string format_report_table(const std::vector<EntryReport> &reports);

}  // namespace twbd
