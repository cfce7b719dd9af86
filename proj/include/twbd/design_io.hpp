#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "twbd/design.hpp"

namespace twbd {

// On-disk design record:
//   { "v": int, "blocks": [[int,...],...],
//     "baseblocks": [[int,...],...],   (optional)
//     "group": ["(0,1,...)...", ...] } (optional, cycle notation)
// When "blocks" is absent the design is developed from baseblocks and group.
struct DesignRecord {
  SetSystem design;
  std::optional<std::vector<Subset>> baseblocks;
  std::optional<std::vector<std::string>> group;
};

nlohmann::json to_json(const DesignRecord &rec);
DesignRecord design_from_json(const nlohmann::json &j);

std::string dump_design(const DesignRecord &rec);  // one line, no trailing newline
DesignRecord parse_design(const std::string &text);
DesignRecord read_design_file(const std::string &path);
void write_design_file(const std::string &path, const DesignRecord &rec);

}  // namespace twbd
