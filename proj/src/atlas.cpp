#include "endgraph/atlas.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "endgraph/classify.hpp"
#include "endgraph/flux.hpp"
#include "endgraph/parser.hpp"

namespace endgraph {

namespace {

flux::SpineModel modelFromJson(const nlohmann::json& j) {
  flux::SpineModel m;
  m.kind = j.value("kind", "end") == "loop" ? flux::SpineModel::Kind::Loop
                                            : flux::SpineModel::Kind::End;
  m.window = -1;
  if (j.contains("decorations")) {
    for (const auto& d : j["decorations"]) {
      std::int64_t pos = d.at(0).get<std::int64_t>();
      m.decorations[pos] = d.at(1).get<std::uint64_t>();
      m.window = std::max(m.window, pos < 0 ? -pos : pos);
    }
  }
  if (j.contains("tail")) {
    m.tailPeriod = j["tail"].value("period", 1u);
    m.tailCounts.clear();
    for (const auto& c : j["tail"]["counts"]) m.tailCounts.push_back(c.get<std::uint64_t>());
    if (m.tailCounts.empty()) m.tailCounts.push_back(0);
    m.tailPeriod = m.tailCounts.size();
  }
  return m;
}

std::string verdictString(const Verdict& v) {
  switch (v.answer) {
    case Tri::Yes:
      return std::string("Yes:") + theoremTagName(v.tag);
    case Tri::No:
      return std::string("No:") + theoremTagName(v.tag);
    default: {
      std::string t = theoremTagName(v.tag);
      return "Unknown:" + t.substr(t.size() - 1);
    }
  }
}

// "Yes" matches "Yes:<anything>"; "No:Tag" must match the tag exactly.
bool verdictMatches(const std::string& expected, const std::string& got) {
  if (expected == got) return true;
  return got.rfind(expected + ":", 0) == 0;
}

}  // namespace

std::string defaultAtlasPath() {
  if (const char* env = std::getenv("ENDGRAPH_ATLAS")) return env;
#ifdef ENDGRAPH_ATLAS_PATH
  return ENDGRAPH_ATLAS_PATH;
#else
  return "data/atlas.json";
#endif
}

std::vector<AtlasEntry> atlasEntries(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open atlas file: " + path);
  nlohmann::json j;
  in >> j;
  std::vector<AtlasEntry> out;
  for (const auto& e : j) {
    AtlasEntry a;
    a.name = e.value("name", "");
    a.expr = e.value("expr", "");
    if (e.contains("model")) a.model = e["model"];
    a.note = e.value("note", "");
    if (e.contains("expected"))
      for (const auto& [k, v] : e["expected"].items())
        a.expected.emplace_back(k, v.get<std::string>());
    if (!a.expr.empty()) parseSignature(a.expr);  // entries must parse
    out.push_back(std::move(a));
  }
  return out;
}

std::string atlasEvaluate(const AtlasEntry& entry, const std::string& key) {
  if (!entry.model.is_null()) {
    flux::SpineModel m = modelFromJson(entry.model);
    if (key.rfind("cork(", 0) == 0) {
      std::istringstream ss(key.substr(5));
      std::int64_t a, b;
      char comma;
      ss >> a >> comma >> b;
      return std::to_string(
          flux::cork(m, flux::SubgraphXn{a, std::nullopt}, flux::SubgraphXn{b, std::nullopt}));
    }
    if (key.rfind("flux(", 0) == 0) {
      std::string spec = key.substr(5, key.size() - 6);
      return std::to_string(flux::fluxValue(m, flux::parseAction(spec)));
    }
    throw std::runtime_error("unknown model expectation: " + key);
  }
  Signature sig = parseSignature(entry.expr);
  if (key == "classify-maps") return verdictString(classifyMapsDCC(sig));
  if (key == "classify-homeo") return verdictString(classifyHomeoDCC(sig));
  if (key == "stable") return stabilityName(isStable(sig).value);
  if (key == "self-similar") return triName(isSelfSimilar(sig).answer);
  if (key == "normalize") return normalizeSig(sig).str();
  if (key == "genus") return genusClass(sig).str();
  if (key == "msform") {
    MsPair p = msForm(sig);
    return p.alpha.str() + "|" + std::to_string(p.count);
  }
  throw std::runtime_error("unknown expectation: " + key);
}

AtlasCheck atlasCheck(const std::string& path) {
  AtlasCheck out;
  for (const auto& entry : atlasEntries(path)) {
    for (const auto& [key, expected] : entry.expected) {
      std::string got;
      try {
        got = atlasEvaluate(entry, key);
      } catch (const std::exception& e) {
        got = std::string("<error: ") + e.what() + ">";
      }
      bool ok = (key == "classify-maps" || key == "classify-homeo")
                    ? verdictMatches(expected, got)
                    : expected == got;
      if (ok) {
        ++out.passed;
      } else {
        ++out.failed;
        out.failures.push_back(entry.name + " / " + key + ": expected " + expected +
                               ", got " + got);
      }
    }
  }
  return out;
}

}  // namespace endgraph
