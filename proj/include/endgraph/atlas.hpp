#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace endgraph {

/// A named graph with its signature text (or spine model) and the
/// expected invariant values, each entry carrying a justifying note.
struct AtlasEntry {
  std::string name;
  std::string expr;     // empty for model-based entries
  nlohmann::json model; // null unless a flux fixture
  std::string note;
  std::vector<std::pair<std::string, std::string>> expected;
};

std::string defaultAtlasPath();
std::vector<AtlasEntry> atlasEntries(const std::string& path = defaultAtlasPath());

struct AtlasCheck {
  int passed = 0;
  int failed = 0;
  std::vector<std::string> failures;
};
/// Evaluate every expectation of every entry.
AtlasCheck atlasCheck(const std::string& path = defaultAtlasPath());

/// Evaluate a single expectation against an entry; returns the computed
/// value (to be compared with the expected one).
std::string atlasEvaluate(const AtlasEntry& entry, const std::string& key);

}  // namespace endgraph
