#pragma once

#include <string>
#include <vector>

#include "cohoforge/group.hpp"

namespace cohoforge {

struct CatalogEntry {
  std::string name;
  std::string spec;  // group-spec text realizing the entry
  std::size_t order;
};

/// The census catalog: every group of order at most 16 (up to isomorphism),
/// plus S4, Q8xC2 (already among the order-16 groups) and the order-32 group H.
const std::vector<CatalogEntry>& census_catalog();

GroupPtr realize_entry(const CatalogEntry& entry);

}  // namespace cohoforge
