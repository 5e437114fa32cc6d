#include "endgraph/api.hpp"

#include <fstream>

#include "endgraph/atlas.hpp"
#include "endgraph/classify.hpp"
#include "endgraph/flux.hpp"
#include "endgraph/oracle.hpp"
#include "endgraph/parser.hpp"

namespace endgraph::api {

using nlohmann::json;

namespace {

Signature arg(const std::vector<std::string>& args, std::size_t i) {
  if (i >= args.size()) throw CommandError(64, "missing signature argument");
  try {
    return parseSignature(args[i]);
  } catch (const ParseError& e) {
    throw CommandError(65, e.what());
  }
}

json verdictJson(const Verdict& v, bool trace) {
  json out;
  out["answer"] = triName(v.answer);
  if (v.answer == Tri::Unknown) {
    std::string t = theoremTagName(v.tag);
    out["category"] = t.back() - '0';
  } else {
    out["theorem"] = theoremTagName(v.tag);
  }
  json w = json::object();
  for (const auto& [k, val] : v.witness) w[k] = val;
  out["witness"] = w;
  if (trace) out["trace"] = v.trace;
  return out;
}

json stabilityJson(const StabilityResult& st) {
  json out;
  out["stability"] = stabilityName(st.value);
  if (st.witness) {
    json w;
    w["at"] = st.witness->path;
    w["reason"] = st.witness->reason;
    json pairs = json::array();
    for (const auto& [a, b] : st.witness->incomparablePairs)
      pairs.push_back(json::array({a, b}));
    w["incomparablePairs"] = pairs;
    out["witness"] = w;
  }
  return out;
}

json charPairJson(const Signature& sig) {
  CharPairSummary c = charPair(sig);
  json out;
  out["genus"] = c.genus.str();
  out["countable"] = c.countable;
  if (c.msForm) {
    out["msform"] = {{"alpha", c.msForm->alpha.str()}, {"count", c.msForm->count}};
  } else {
    out["msform"] = nullptr;
  }
  out["isolatedPlainEnd"] = c.hasIsolatedPlainEnd;
  out["isolatedGenusEnd"] = c.hasIsolatedGenusEnd;
  out["perfect"] = c.perfect;
  out["genusSupport"] = c.genusSupport == GenusSupport::None   ? "None"
                        : c.genusSupport == GenusSupport::All ? "All"
                                                              : "Mixed";
  return out;
}

flux::SpineModel loadModel(const std::string& spec) {
  if (spec == "unit" || spec == "unit-density") return flux::SpineModel::unitDensity();
  if (spec == "unit-loop")
    return flux::SpineModel::unitDensity(flux::SpineModel::Kind::Loop);
  if (spec == "fig-xn") return flux::SpineModel::figXn();
  std::ifstream in(spec);
  if (!in) throw CommandError(64, "cannot open model file: " + spec);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw CommandError(65, std::string("bad model file: ") + e.what());
  }
  flux::SpineModel m;
  m.kind = j.value("kind", "end") == "loop" ? flux::SpineModel::Kind::Loop
                                            : flux::SpineModel::Kind::End;
  m.window = -1;
  for (const auto& d : j.value("decorations", json::array())) {
    std::int64_t pos = d.at(0).get<std::int64_t>();
    m.decorations[pos] = d.at(1).get<std::uint64_t>();
    m.window = std::max(m.window, pos < 0 ? -pos : pos);
  }
  if (j.contains("tail")) {
    m.tailCounts.clear();
    for (const auto& c : j["tail"]["counts"]) m.tailCounts.push_back(c.get<std::uint64_t>());
    if (m.tailCounts.empty()) m.tailCounts.push_back(0);
    m.tailPeriod = m.tailCounts.size();
  }
  return m;
}

}  // namespace

json run(const std::string& command, const std::vector<std::string>& args, bool trace) {
  json out;
  out["command"] = command;
  if (command == "parse") {
    Signature s = arg(args, 0);
    out["input"] = args[0];
    out["canonicalText"] = s.str();
    out["depth"] = s.size();
    return out;
  }
  if (command == "normalize") {
    Signature s = arg(args, 0);
    out["input"] = args[0];
    std::vector<RewriteStep> steps;
    CanonicalSignature c = normalize(s, trace ? &steps : nullptr);
    out["normal"] = c.sig.str();
    out["stability"] = stabilityName(c.stability.value);
    out["orderedCertificate"] = c.orderedCertificate;
    if (trace) {
      json t = json::array();
      for (const auto& st : steps)
        t.push_back({{"rule", st.rule}, {"before", st.before}, {"after", st.after}});
      out["trace"] = t;
    }
    return out;
  }
  if (command == "stable") {
    Signature s = arg(args, 0);
    out["input"] = args[0];
    out.update(stabilityJson(isStable(s)));
    return out;
  }
  if (command == "self-similar") {
    Signature s = arg(args, 0);
    out["input"] = args[0];
    SelfSimilarVerdict v = isSelfSimilar(s);
    out["answer"] = triName(v.answer);
    json parts = json::array();
    for (const auto& p : v.decomposition) parts.push_back(p.str());
    out["decomposition"] = parts;
    return out;
  }
  if (command == "decompose") {
    Signature s = arg(args, 0);
    out["input"] = args[0];
    try {
      json parts = json::array();
      for (const auto& p : wedgeDecomposition(s)) parts.push_back(p.str());
      out["components"] = parts;
    } catch (const UnstableInputError& e) {
      throw CommandError(64, e.what());
    }
    return out;
  }
  if (command == "endspace") {
    Signature s = arg(args, 0);
    out["input"] = args[0];
    out.update(charPairJson(s));
    return out;
  }
  if (command == "genus") {
    Signature s = arg(args, 0);
    out["input"] = args[0];
    out["genus"] = genusClass(s).str();
    return out;
  }
  if (command == "max-ends") {
    Signature s = arg(args, 0);
    out["input"] = args[0];
    try {
      EndTypeReport r = maximalEndTypes(s);
      json types = json::array();
      for (const auto& [t, m] : r.types) {
        json e;
        e["structure"] = t.sig.str();
        e["shell"] = maxShellName(t.shell);
        if (m.cantorMany)
          e["multiplicity"] = "CantorMany";
        else
          e["multiplicity"] = m.count;
        types.push_back(e);
      }
      out["types"] = types;
    } catch (const UnstableInputError& e) {
      throw CommandError(64, e.what());
    }
    return out;
  }
  if (command == "types") {
    Signature s = arg(args, 0);
    out["input"] = args[0];
    if (args.size() > 1) {
      Signature z = arg(args, 1);
      out["query"] = args[1];
      out["answer"] = triName(hasEndOfType(s, z));
      return out;
    }
    TypeCensus c = typeCensus(s);
    json plain = json::array(), genus = json::array(), structured = json::array();
    for (const auto& r : c.plain)
      plain.push_back({{"upTo", r.hi.str()}, {"inclusive", r.hiIncl}});
    for (const auto& r : c.genus)
      genus.push_back({{"upTo", r.hi.str()}, {"inclusive", r.hiIncl}});
    for (const auto& t : c.structured) structured.push_back(t.str());
    for (const auto& t : c.templates) structured.push_back("{" + t.templ.str() + "}");
    out["plainRanks"] = plain;
    out["genusRanks"] = genus;
    out["structured"] = structured;
    out["complete"] = !c.incomplete;
    return out;
  }
  if (command == "compare") {
    Signature a = arg(args, 0), b = arg(args, 1);
    out["left"] = args[0];
    out["right"] = args[1];
    out["leq"] = triName(leq(a, b));
    out["geq"] = triName(leq(b, a));
    out["isomorphic"] = triName(isomorphic(a, b).answer);
    return out;
  }
  if (command == "iso") {
    Signature a = arg(args, 0), b = arg(args, 1);
    IsoResult r = isomorphic(a, b);
    out["left"] = args[0];
    out["right"] = args[1];
    out["answer"] = triName(r.answer);
    if (r.answer == Tri::No) out["separatingInvariant"] = r.separating;
    return out;
  }
  if (command == "embeds") {
    Signature a = arg(args, 0), b = arg(args, 1);
    out["left"] = args[0];
    out["right"] = args[1];
    out["answer"] = triName(clopenEmbeds(a, b));
    return out;
  }
  if (command == "successor") {
    Signature s = arg(args, 0);
    bool cantor = args.size() > 1 && args[1] == "cantor";
    out["input"] = args[0];
    out["kind"] = cantor ? "cantor" : "one";
    out["successor"] = immediateSuccessor(s, cantor).str();
    return out;
  }
  if (command == "mub") {
    if (args.size() < 2) throw CommandError(64, "mub needs at least two signatures");
    bool cantor = false;
    std::vector<Signature> zs;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "one" || args[i] == "cantor") {
        cantor = args[i] == "cantor";
        continue;
      }
      zs.push_back(arg(args, i));
    }
    if (zs.size() < 2) throw CommandError(64, "mub needs at least two signatures");
    out["kind"] = cantor ? "cantor" : "one";
    out["bound"] = minimalUpperBound(zs, cantor).str();
    return out;
  }
  if (command == "gcd") {
    Signature s = arg(args, 0);
    out["input"] = args[0];
    if (auto w = gcdWitnessSearch(s)) {
      out["found"] = true;
      out["mu1"] = w->mu1.str();
      out["mu2"] = w->mu2.str();
      out["lambda"] = w->loopMark ? "R1" : w->lambda.str();
      out["sideCheck"] = w->sideCheck;
    } else {
      out["found"] = false;
    }
    return out;
  }
  if (command == "classify-maps") {
    Signature s = arg(args, 0);
    out["input"] = args[0];
    out.update(verdictJson(classifyMapsDCC(s), trace));
    return out;
  }
  if (command == "classify-homeo") {
    Signature s = arg(args, 0);
    out["input"] = args[0];
    out.update(verdictJson(classifyHomeoDCC(s), trace));
    return out;
  }
  if (command == "flux") {
    // Positional "flux <model> <action>" or flagged --model / --action.
    std::string modelSpec, actionSpec;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--model" && i + 1 < args.size()) {
        modelSpec = args[++i];
      } else if (args[i] == "--action" && i + 1 < args.size()) {
        actionSpec = args[++i];
      } else if (modelSpec.empty()) {
        modelSpec = args[i];
      } else if (actionSpec.empty()) {
        actionSpec = args[i];
      }
    }
    if (modelSpec.empty() || actionSpec.empty())
      throw CommandError(64, "flux needs a model and an action spec");
    flux::SpineModel m = loadModel(modelSpec);
    flux::EndAction f;
    try {
      f = flux::parseAction(actionSpec);
    } catch (const flux::ModelError& e) {
      throw CommandError(65, e.what());
    }
    out["model"] = modelSpec;
    out["action"] = actionSpec;
    try {
      out["value"] = flux::fluxValue(m, f);
    } catch (const flux::ModelError& e) {
      throw CommandError(64, e.what());
    }
    return out;
  }
  if (command == "oracle") {
    if (args.empty()) throw CommandError(64, "oracle needs a subcommand");
    const std::string& sub = args[0];
    std::vector<std::string> rest(args.begin() + 1, args.end());
    out["subcommand"] = sub;
    if (sub == "endspace") {
      Signature s = arg(rest, 0);
      out["input"] = rest[0];
      try {
        oracle::OrdVal xi = oracle::endSpaceOrdinal(s);
        oracle::CbRank r = oracle::cbRankOfSpace(oracle::OrdinalSpace{xi});
        out["xi"] = oracle::toOrdinal(xi).str();
        out["rank"] = {{"alpha", oracle::toOrdinal(r.alpha).str()}, {"count", r.count}};
      } catch (const std::exception& e) {
        throw CommandError(64, e.what());
      }
      return out;
    }
    if (sub == "embed-check") {
      Signature a = arg(rest, 0), b = arg(rest, 1);
      int depth = rest.size() > 2 ? std::atoi(rest[2].c_str()) : 4;
      out["answer"] = triName(oracle::smallEmbedCheck(a, b, depth));
      return out;
    }
    throw CommandError(64, "unknown oracle subcommand: " + sub);
  }
  if (command == "atlas") {
    std::string path = defaultAtlasPath();
    bool check = false;
    for (const auto& a : args) {
      if (a == "--check") check = true;
      else path = a;
    }
    if (check) {
      AtlasCheck r = atlasCheck(path);
      out["passed"] = r.passed;
      out["failed"] = r.failed;
      out["failures"] = r.failures;
      return out;
    }
    json entries = json::array();
    for (const auto& e : atlasEntries(path)) {
      json je;
      je["name"] = e.name;
      if (!e.expr.empty()) je["expr"] = e.expr;
      if (!e.model.is_null()) je["model"] = e.model;
      je["note"] = e.note;
      json exp = json::object();
      for (const auto& [k, v] : e.expected) exp[k] = v;
      je["expected"] = exp;
      entries.push_back(je);
    }
    out["entries"] = entries;
    return out;
  }
  throw CommandError(64, "unknown command: " + command);
}

int exitCode(const json& result) {
  if (result.contains("answer")) {
    std::string a = result["answer"];
    if (a == "Yes") return 0;
    if (a == "No") return 1;
    if (a == "Unknown") return 2;
  }
  if (result.contains("failed") && result["failed"].get<int>() > 0) return 1;
  return 0;
}

std::string renderText(const json& result) {
  std::string cmd = result.value("command", "");
  std::string out;
  auto line = [&out](const std::string& s) { out += s + "\n"; };
  if (result.contains("input")) line("input:     " + result["input"].get<std::string>());
  if (result.contains("normal")) line("normal:    " + result["normal"].get<std::string>());
  if (result.contains("canonicalText"))
    line("canonical: " + result["canonicalText"].get<std::string>());
  if (result.contains("stability"))
    line("stability: " + result["stability"].get<std::string>());
  if (result.contains("answer")) line("answer:    " + result["answer"].get<std::string>());
  if (result.contains("theorem")) line("theorem:   " + result["theorem"].get<std::string>());
  if (result.contains("category"))
    line("category:  " + std::to_string(result["category"].get<int>()));
  if (result.contains("components")) {
    std::string parts;
    for (const auto& p : result["components"]) parts += (parts.empty() ? "" : "  |  ") + p.get<std::string>();
    line("components: " + parts);
  }
  if (result.contains("types")) {
    for (const auto& t : result["types"]) {
      std::string m = t["multiplicity"].is_string()
                          ? t["multiplicity"].get<std::string>()
                          : std::to_string(t["multiplicity"].get<std::uint64_t>());
      line("max type:  " + t["structure"].get<std::string>() + "   x" + m);
    }
  }
  if (result.contains("value"))
    line("flux:      " + std::to_string(result["value"].get<std::int64_t>()));
  if (result.contains("passed"))
    line("atlas:     " + std::to_string(result["passed"].get<int>()) + " passed, " +
         std::to_string(result["failed"].get<int>()) + " failed");
  if (result.contains("failures"))
    for (const auto& f : result["failures"]) line("  FAIL " + f.get<std::string>());
  if (out.empty()) out = result.dump(2) + "\n";
  return out;
}

}  // namespace endgraph::api
