#pragma once

// Built-in worked instances. Names are stable CLI-facing identifiers; the
// generic family takes its top-group index in parentheses.

#include <selfsim/similarity.hpp>

#include <optional>
#include <string>
#include <vector>

namespace selfsim {

struct CatalogEntry {
  std::string name;
  std::string note;
  SimilarityTriple triple;
  // Set when the entry is fundamentally an abelian pair (the triple is its
  // degenerate lift).
  std::optional<AbelianPair> pair;
};

// The five entries; the generic one is listed with an m placeholder.
std::vector<std::string> catalog_names();

// Accepts the listed names plus instantiations like "zwrz-pair-generic(4)".
CatalogEntry catalog_entry(const std::string& name);

}  // namespace selfsim
