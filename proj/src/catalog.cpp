#include "cohoforge/catalog.hpp"

#include "cohoforge/group_spec.hpp"

namespace cohoforge {

const std::vector<CatalogEntry>& census_catalog() {
  static const std::vector<CatalogEntry> entries{
      {"C1", "C1", 1},
      {"C2", "C2", 2},
      {"C3", "C3", 3},
      {"C4", "C4", 4},
      {"V4", "V4", 4},
      {"C5", "C5", 5},
      {"C6", "C6", 6},
      {"S3", "S3", 6},
      {"C7", "C7", 7},
      {"C8", "C8", 8},
      {"C4xC2", "C4xC2", 8},
      {"C2^3", "C2xC2xC2", 8},
      {"D8", "D8", 8},
      {"Q8", "Q8", 8},
      {"C9", "C9", 9},
      {"C3xC3", "C3xC3", 9},
      {"C10", "C10", 10},
      {"D10", "D10", 10},
      {"C11", "C11", 11},
      {"C12", "C12", 12},
      {"C6xC2", "C6xC2", 12},
      {"D12", "D12", 12},
      {"A4", "A4", 12},
      {"DIC12", "DIC12", 12},
      {"C13", "C13", 13},
      {"C14", "C14", 14},
      {"D14", "D14", 14},
      {"C15", "C15", 15},
      {"C16", "C16", 16},
      {"C4xC4", "C4xC4", 16},
      {"G16_3", "G16_3", 16},
      {"H16", "H16", 16},
      {"C8xC2", "C8xC2", 16},
      {"M16", "M16", 16},
      {"D16", "D16", 16},
      {"SD16", "SD16", 16},
      {"Q16", "Q16", 16},
      {"C4xC2xC2", "C4xC2xC2", 16},
      {"D8xC2", "D8xC2", 16},
      {"Q8xC2", "Q8xC2", 16},
      {"G16_13", "G16_13", 16},
      {"C2^4", "C2xC2xC2xC2", 16},
      {"S4", "S4", 24},
      {"H32", "H32", 32},
  };
  return entries;
}

GroupPtr realize_entry(const CatalogEntry& entry) { return realize(entry.spec); }

}  // namespace cohoforge
