#pragma once

#include <span>
#include <string_view>

namespace twbd {

struct CatalogAsset {
  std::string_view name;
  std::string_view text;
};

// Text files under data/catalog, compiled in by the build.
std::span<const CatalogAsset> catalog_assets();

}  // namespace twbd
