#include "twbd/design_io.hpp"

#include <fstream>
#include <sstream>

#include "twbd/error.hpp"

namespace twbd {

namespace {

nlohmann::json blocks_json(std::span<const Subset> blocks) {
  auto arr = nlohmann::json::array();
  for (Subset b : blocks) arr.push_back(b.points());
  return arr;
}

std::vector<Subset> blocks_from(const nlohmann::json &arr, Point v, const char *field) {
  if (!arr.is_array()) throw ParseError(std::string("design: '") + field + "' must be an array");
  std::vector<Subset> out;
  for (const auto &blk : arr) {
    if (!blk.is_array()) throw ParseError(std::string("design: entries of '") + field + "' must be arrays");
    std::uint64_t mask = 0;
    for (const auto &x : blk) {
      if (!x.is_number_integer()) throw ParseError("design: point labels must be integers");
      const auto p = x.get<long long>();
      if (p < 0 || p >= static_cast<long long>(v))
        throw ParseError("design: point " + std::to_string(p) + " outside 0..v-1");
      const std::uint64_t bit = std::uint64_t{1} << p;
      if (mask & bit) throw ParseError("design: repeated point in a block");
      mask |= bit;
    }
    out.emplace_back(mask);
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const DesignRecord &rec) {
  nlohmann::json j;
  j["v"] = rec.design.v();
  j["blocks"] = blocks_json(rec.design.blocks());
  if (rec.baseblocks) j["baseblocks"] = blocks_json(*rec.baseblocks);
  if (rec.group) j["group"] = *rec.group;
  return j;
}

DesignRecord design_from_json(const nlohmann::json &j) {
  if (!j.is_object() || !j.contains("v") || !j["v"].is_number_integer())
    throw ParseError("design: expected an object with integer 'v'");
  const auto v = j["v"].get<long long>();
  if (v <= 0 || v > kMaxPoints) throw ParseError("design: v must be in 1..64");
  const auto pv = static_cast<Point>(v);

  DesignRecord rec;
  if (j.contains("baseblocks")) rec.baseblocks = blocks_from(j["baseblocks"], pv, "baseblocks");
  if (j.contains("group")) {
    if (!j["group"].is_array()) throw ParseError("design: 'group' must be an array of strings");
    std::vector<std::string> gens;
    for (const auto &g : j["group"]) {
      if (!g.is_string()) throw ParseError("design: 'group' must be an array of strings");
      gens.push_back(g.get<std::string>());
    }
    rec.group = std::move(gens);
  }
  if (j.contains("blocks")) {
    rec.design = SetSystem(pv, blocks_from(j["blocks"], pv, "blocks"));
  } else if (rec.baseblocks && rec.group) {
    std::vector<Permutation> gens;
    for (const auto &g : *rec.group) gens.push_back(parse_cycle_notation(g, pv));
    if (gens.empty()) gens.push_back(Permutation::identity(pv));
    rec.design = develop(*rec.baseblocks, PermGroup(pv, std::move(gens)));
  } else {
    throw ParseError("design: needs 'blocks' or both 'baseblocks' and 'group'");
  }
  return rec;
}

std::string dump_design(const DesignRecord &rec) { return to_json(rec).dump(); }

DesignRecord parse_design(const std::string &text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(std::string("design: invalid JSON: ") + e.what());
  }
  return design_from_json(j);
}

DesignRecord read_design_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open design file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_design(buf.str());
}

void write_design_file(const std::string &path, const DesignRecord &rec) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << dump_design(rec) << '\n';
}

}  // namespace twbd
