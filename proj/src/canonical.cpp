#include "endgraph/canonical.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "endgraph/poset.hpp"

namespace endgraph {

namespace {

Signature ord0() { return Signature::ord(Ordinal()); }

bool isGenusAtom(const Signature& s) {
  return s.kind() == SigKind::Genus &&
         (s.inner().kind() == SigKind::Ord || s.inner().kind() == SigKind::Cantor);
}

bool isMinimalBase(const Signature& s) {
  if (s.kind() == SigKind::Ord) return s.ordExpr().closed() && s.ordExpr().value().isZero();
  if (s.kind() == SigKind::Cantor) return true;
  if (s.kind() == SigKind::Genus) {
    const Signature& i = s.inner();
    if (i.kind() == SigKind::Cantor) return true;
    return i.kind() == SigKind::Ord && i.ordExpr().closed() && i.ordExpr().value().isZero();
  }
  return false;
}

FamilyExpr genusifyFam(const FamilyExpr& f) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const:
      return FamilyExpr::constant(Signature::genus(f.constSig()));
    case K::Param:
      return FamilyExpr::param(f.paramVar(), Signature::genus(f.paramTemplate()));
    case K::Accum:
      return FamilyExpr::accum(genusifyFam(f.child()));
    case K::Stride:
      return FamilyExpr::stride(f.strideK(), f.strideR(), genusifyFam(f.child()));
    case K::WedgeFam:
      return FamilyExpr::wedgeFam(genusifyFam(f.child(0)), genusifyFam(f.child(1)));
    case K::Prefix: {
      std::vector<Signature> head;
      for (const auto& h : f.prefixHead()) head.push_back(Signature::genus(h));
      return FamilyExpr::prefix(std::move(head), genusifyFam(f.child()));
    }
  }
  return f;
}

// Normalize the closed payloads of a family; templates stay structural.
Signature normClosed(const Signature& s, std::vector<RewriteStep>* trace);

FamilyExpr normFamily(const FamilyExpr& f, std::vector<RewriteStep>* trace) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const:
      return FamilyExpr::constant(normClosed(f.constSig(), trace));
    case K::Param:
      return f;
    case K::Accum:
      return FamilyExpr::accum(normFamily(f.child(), trace));
    case K::Stride:
      return FamilyExpr::stride(f.strideK(), f.strideR(), normFamily(f.child(), trace));
    case K::WedgeFam:
      return FamilyExpr::wedgeFam(normFamily(f.child(0), trace),
                                  normFamily(f.child(1), trace));
    case K::Prefix: {
      std::vector<Signature> head;
      for (const auto& h : f.prefixHead()) head.push_back(normClosed(h, trace));
      return FamilyExpr::prefix(std::move(head), normFamily(f.child(), trace));
    }
  }
  return f;
}

void note(std::vector<RewriteStep>* trace, const char* rule, const Signature& before,
          const Signature& after) {
  if (trace) trace->push_back({rule, before.str(), after.str()});
}

bool cantorMaxShell(const Signature& s) {
  MaxShellKind k = maxShell(s);
  return k == MaxShellKind::CantorMany || k == MaxShellKind::GenusCantor;
}

Signature normWedgeParts(std::vector<Signature> parts, const Signature& before,
                         std::vector<RewriteStep>* trace);

Signature normConv(const Signature& s, std::vector<RewriteStep>* trace) {
  FamilyExpr fam = normFamily(s.family(), trace);
  Signature base = normClosed(s.base(), trace);
  Signature cur = Signature::conv(fam, base);

  // Degenerate rose base: only member 0 lands on the single vertex.
  if (base.kind() == SigKind::Rose) {
    Signature out = normClosed(
        Signature::wedge({fam.member(0), Signature::rose(base.roseLoops())}), trace);
    note(trace, "conv-degenerate-base", cur, out);
    return out;
  }

  // R3 generalized: families without ends only decorate the base.
  if (!familyEverEnds(fam)) {
    Signature out;
    if (familyGenusInfinitelyOften(fam)) {
      out = normClosed(Signature::genus(base), trace);
    } else {
      GenusValue total = genusClass(cur);
      GenusValue gb = genusClass(base);
      std::uint64_t extra =
          (total.infinite || gb.infinite) ? 0 : total.count - gb.count;
      out = extra ? normClosed(Signature::wedge({base, Signature::rose(extra)}), trace)
                  : base;
    }
    note(trace, "R3-family-without-ends", cur, out);
    return out;
  }

  EndStructure es = endStructure(cur);

  // R5: countable genus-free subgraphs take their MS normal form.  Family
  // schemas outside the rank calculus stay structural.
  if (es.countable && es.anyEnds && !es.anyGenus &&
      genusClass(cur) == GenusValue{false, 0}) {
    try {
      MsPair ms = msForm(cur);
      std::vector<Signature> copies(ms.count, Signature::ord(ms.alpha));
      Signature out = Signature::wedge(std::move(copies));
      note(trace, "R5-countable-collapse", cur, out);
      return out;
    } catch (const UnsupportedFamily&) {
    }
  }
  // R5b: countable all-genus subgraphs likewise, with the genus mark.
  if (es.countable && es.anyEnds && !es.anyPlain) {
    try {
      MsPair ms = msForm(cur);
      std::vector<Signature> copies(ms.count,
                                    Signature::genus(Signature::ord(ms.alpha)));
      Signature out = Signature::wedge(std::move(copies));
      note(trace, "R5-countable-genus-collapse", cur, out);
      return out;
    } catch (const UnsupportedFamily&) {
    }
  }
  // R6: perfect end spaces are Cantor space (Brouwer).
  if (es.anyEnds && es.perfect() && !es.anyGenus &&
      genusClass(cur) == GenusValue{false, 0}) {
    Signature out = Signature::cantor();
    note(trace, "R6-perfect-collapse", cur, out);
    return out;
  }
  if (es.anyEnds && es.perfect() && !es.anyPlain) {
    Signature out = Signature::genus(Signature::cantor());
    note(trace, "R6-perfect-genus-collapse", cur, out);
    return out;
  }

  // Genus alignment: members carrying genus cofinally mark every base end.
  if (familyGenusInfinitelyOften(fam) && endStructure(base).anyPlain) {
    Signature out =
        normClosed(Signature::conv(fam, Signature::genus(base)), trace);
    note(trace, "R2-genusify-base", cur, out);
    return out;
  }

  // R4: convergence distributes over wedge bases.  The shared wedge point
  // belongs to the first branch; other branches see the family shifted by
  // one (their vertices start at distance 1).
  if (base.kind() == SigKind::Wedge) {
    std::vector<Signature> parts;
    FamilyExpr shifted = FamilyExpr::stride(1, 1, fam);
    for (std::size_t i = 0; i < base.parts().size(); ++i)
      parts.push_back(Signature::conv(i == 0 ? fam : shifted, base.parts()[i]));
    Signature out = normClosed(Signature::wedge(std::move(parts)), trace);
    note(trace, "R4-base-split", cur, out);
    return out;
  }

  // R7: a constant Cantor-type member absorbs a minimal base of its kind.
  if (fam.kind() == FamilyExpr::Kind::Const) {
    const Signature& z = fam.constSig();
    if (hasEnds(z) && z.kind() != SigKind::Wedge) {
      MaxShellKind zk = maxShell(z);
      if (base == ord0() && zk == MaxShellKind::CantorMany) {
        note(trace, "R7-cantor-max-absorb", cur, z);
        return z;
      }
      if (base == Signature::genus(ord0()) && zk == MaxShellKind::GenusCantor) {
        note(trace, "R7-cantor-max-absorb", cur, z);
        return z;
      }
    }
  }

  return Signature::conv(fam, base);
}

Signature normClosed(const Signature& s, std::vector<RewriteStep>* trace) {
  if (!s.closed()) return s;  // templates are analyzed structurally
  switch (s.kind()) {
    case SigKind::Rose:
    case SigKind::Cantor:
    case SigKind::Ord:
      return s;
    case SigKind::VeeUpTo: {
      // A closed bound expands to a plain wedge.
      Signature out = s.substFree("", 0);
      if (out == s) return s;
      note(trace, "vee-expand", s, out);
      return normClosed(out, trace);
    }
    case SigKind::Genus: {
      Signature inner = normClosed(s.inner(), trace);
      switch (inner.kind()) {
        case SigKind::Rose: {
          Signature out = Signature::rose(inner.roseLoops() + 1);
          note(trace, "R2-genus-rose", s, out);
          return out;
        }
        case SigKind::Genus:
          note(trace, "R2-genus-idempotent", s, inner);
          return inner;
        case SigKind::Wedge: {
          std::vector<Signature> parts;
          for (const auto& p : inner.parts()) parts.push_back(Signature::genus(p));
          Signature out = normClosed(Signature::wedge(std::move(parts)), trace);
          note(trace, "R2-genus-distributes-wedge", s, out);
          return out;
        }
        case SigKind::Conv: {
          Signature out = normClosed(
              Signature::conv(genusifyFam(inner.family()), Signature::genus(inner.base())),
              trace);
          note(trace, "R2-genus-distributes-conv", s, out);
          return out;
        }
        default:
          return Signature::genus(inner);
      }
    }
    case SigKind::Wedge: {
      std::vector<Signature> parts;
      for (const auto& p : s.parts()) {
        Signature np = normClosed(p, trace);
        if (np.kind() == SigKind::Wedge)
          for (const auto& q : np.parts()) parts.push_back(q);
        else
          parts.push_back(np);
      }
      return normWedgeParts(std::move(parts), s, trace);
    }
    case SigKind::Conv:
      return normConv(s, trace);
  }
  return s;
}

Signature normWedgeParts(std::vector<Signature> parts, const Signature& before,
                         std::vector<RewriteStep>* trace) {
  // R1: merge roses, drop units, group ordinal trees by MS arithmetic.
  std::uint64_t roses = 0;
  std::vector<MsPair> plainOrds, genusOrds;
  std::vector<Signature> rest;
  for (auto& p : parts) {
    if (p.kind() == SigKind::Rose) {
      roses += p.roseLoops();
    } else if (p.kind() == SigKind::Ord) {
      plainOrds.push_back(MsPair{p.ordExpr().value(), 1});
    } else if (isGenusAtom(p) && p.inner().kind() == SigKind::Ord) {
      genusOrds.push_back(MsPair{p.inner().ordExpr().value(), 1});
    } else {
      rest.push_back(std::move(p));
    }
  }
  auto msMerge = [](std::vector<MsPair>& v) -> std::optional<MsPair> {
    if (v.empty()) return std::nullopt;
    MsPair out = v[0];
    for (std::size_t i = 1; i < v.size(); ++i) {
      int c = cmp(v[i].alpha, out.alpha);
      if (c > 0) out = v[i];
      else if (c == 0) out.count += v[i].count;
    }
    return out;
  };
  // Finite loop bundles are absorbed by any infinite-genus component.
  if (roses && !genusOrds.empty()) roses = 0;
  if (roses) {
    for (const auto& r : rest) {
      if (genusClass(r).infinite) {
        roses = 0;
        break;
      }
    }
  }
  std::vector<Signature> out;
  if (roses) out.push_back(Signature::rose(roses));
  if (auto m = msMerge(plainOrds))
    for (std::uint64_t i = 0; i < m->count; ++i) out.push_back(Signature::ord(m->alpha));
  if (auto m = msMerge(genusOrds))
    for (std::uint64_t i = 0; i < m->count; ++i)
      out.push_back(Signature::genus(Signature::ord(m->alpha)));
  for (auto& r : rest) out.push_back(std::move(r));

  std::sort(out.begin(), out.end(),
            [](const Signature& a, const Signature& b) { return compare(a, b) < 0; });

  // R8: Cantor-type components absorb their duplicates.
  for (std::size_t i = 0; i + 1 < out.size();) {
    if (out[i] == out[i + 1] && hasEnds(out[i]) && cantorMaxShell(out[i])) {
      out.erase(out.begin() + i + 1);
    } else {
      ++i;
    }
  }

  // R9: drop a component whose maximal type recurs non-maximally elsewhere.
  bool changed = true;
  while (changed && out.size() > 1) {
    changed = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Signature& w = out[i];
      if (!hasEnds(w)) continue;
      for (std::size_t j = 0; j < out.size(); ++j) {
        if (i == j || !hasEnds(out[j])) continue;
        if (hasEndOfType(out[j], w) != Tri::Yes) continue;
        bool nonMaximal = isomorphic(w, out[j]).answer != Tri::Yes ||
                          cantorMaxShell(out[j]);
        if (nonMaximal) {
          out.erase(out.begin() + i);
          changed = true;
          break;
        }
      }
      if (changed) break;
    }
  }

  Signature result =
      out.empty() ? Signature::rose(0) : Signature::wedge(std::move(out));
  if (!(result == before)) note(trace, "R1-wedge", before, result);
  return result;
}

// Memoized entry point.
std::mutex normMutex;
std::map<std::string, Signature> normCache;

}  // namespace

Signature normalizeSig(const Signature& sig, std::vector<RewriteStep>* trace) {
  if (!trace) {
    std::string key = sig.str();
    {
      std::lock_guard<std::mutex> lock(normMutex);
      auto it = normCache.find(key);
      if (it != normCache.end()) return it->second;
    }
    Signature out = normClosed(sig, nullptr);
    std::lock_guard<std::mutex> lock(normMutex);
    normCache.emplace(std::move(key), out);
    return out;
  }
  return normClosed(sig, trace);
}

// --- max shell ---

const char* maxShellName(MaxShellKind k) {
  switch (k) {
    case MaxShellKind::One: return "1";
    case MaxShellKind::GenusOne: return "o(1)";
    case MaxShellKind::CantorMany: return "C";
    case MaxShellKind::GenusCantor: return "o(C)";
  }
  return "?";
}

Signature maxShellSignature(MaxShellKind k) {
  switch (k) {
    case MaxShellKind::One: return ord0();
    case MaxShellKind::GenusOne: return Signature::genus(ord0());
    case MaxShellKind::CantorMany: return Signature::cantor();
    case MaxShellKind::GenusCantor: return Signature::genus(Signature::cantor());
  }
  return ord0();
}

namespace {
MaxShellKind maxShellNorm(const Signature& s) {
  switch (s.kind()) {
    case SigKind::Ord:
      return MaxShellKind::One;
    case SigKind::Cantor:
      return MaxShellKind::CantorMany;
    case SigKind::Genus: {
      MaxShellKind inner = maxShellNorm(s.inner());
      if (inner == MaxShellKind::CantorMany || inner == MaxShellKind::GenusCantor)
        return MaxShellKind::GenusCantor;
      return MaxShellKind::GenusOne;
    }
    case SigKind::Conv: {
      MaxShellKind b = maxShellNorm(s.base());
      if (familyGenusInfinitelyOften(s.family())) {
        if (b == MaxShellKind::One) return MaxShellKind::GenusOne;
        if (b == MaxShellKind::CantorMany) return MaxShellKind::GenusCantor;
      }
      return b;
    }
    default:
      throw std::invalid_argument("maxShell: not a local structure: " + s.str());
  }
}
}  // namespace

MaxShellKind maxShell(const Signature& sig) {
  Signature n = normalizeSig(sig);
  if (n.kind() == SigKind::Wedge || n.kind() == SigKind::Rose) {
    if (n.kind() == SigKind::Wedge) {
      // A wedge is a local structure only when all parts share one
      // Cantor-type maximal class; otherwise reject.
      throw std::invalid_argument("maxShell: not self-similar: " + n.str());
    }
    throw std::invalid_argument("maxShell: empty end space");
  }
  return maxShellNorm(n);
}

// --- isomorphism ---

IsoResult isomorphic(const Signature& a, const Signature& b) {
  Signature na = normalizeSig(a), nb = normalizeSig(b);
  if (na == nb) return {Tri::Yes, ""};
  bool ca = isCountable(na), cb = isCountable(nb);
  if (ca != cb) return {Tri::No, "countability"};
  if (hasEnds(na) != hasEnds(nb)) return {Tri::No, "end space emptiness"};
  if (!(genusClass(na) == genusClass(nb))) return {Tri::No, "genusClass"};
  if (ca && hasEnds(na)) {
    try {
      if (!(msForm(na) == msForm(nb))) return {Tri::No, "msForm"};
    } catch (const UnsupportedFamily&) {
    }
  }
  EndStructure ea = endStructure(na), eb = endStructure(nb);
  if (ea.isoPlain != eb.isoPlain || ea.isoGenus != eb.isoGenus)
    return {Tri::No, "isolated ends"};
  if (ea.anyPlain != eb.anyPlain || ea.anyGenus != eb.anyGenus)
    return {Tri::No, "genusSupport"};
  if (ea.perfect() != eb.perfect()) return {Tri::No, "perfectness"};
  TypeCensus ta = typeCensus(na), tb = typeCensus(nb);
  auto pa = ta.plainRankBound(), pb = tb.plainRankBound();
  if (pa && pb && !(*pa == *pb)) return {Tri::No, "plain rank census"};
  auto ga = ta.genusRankBound(), gb2 = tb.genusRankBound();
  if (ga && gb2 && !(*ga == *gb2)) return {Tri::No, "genus rank census"};
  // Maximal shell counts of the top-level decomposition are invariants.
  auto shellCounts = [](const Signature& s) {
    std::map<MaxShellKind, int> m;
    std::vector<Signature> parts =
        s.kind() == SigKind::Wedge ? s.parts() : std::vector<Signature>{s};
    for (const auto& p : parts) {
      if (!hasEnds(p)) continue;
      try {
        ++m[maxShellNorm(p)];
      } catch (const std::exception&) {
        m.clear();
        m[MaxShellKind::One] = -1;  // unknown marker
        break;
      }
    }
    return m;
  };
  auto ma = shellCounts(na), mb = shellCounts(nb);
  bool unknownShells = (ma.size() == 1 && ma.begin()->second == -1) ||
                       (mb.size() == 1 && mb.begin()->second == -1);
  if (!unknownShells && ma != mb) return {Tri::No, "maximalEndTypes"};
  return {Tri::Unknown, ""};
}

// --- stability ---

namespace {

bool templateTreeShaped(const Signature& t) {
  switch (t.kind()) {
    case SigKind::Conv:
      return false;
    case SigKind::VeeUpTo:
      return false;
    default:
      for (const auto& p : t.parts())
        if (!templateTreeShaped(p)) return false;
      return true;
  }
}

// Conv template whose growth comes from a bounded wedge over the family
// index: members split into cumulative wedges, so embeddings hold.
bool cumulativeVeeTemplate(const Signature& t, const std::string& var) {
  if (t.kind() != SigKind::Conv) return false;
  const Signature& b = t.base();
  if (b.kind() != SigKind::VeeUpTo) return false;
  if (!(b.veeUpper() == OrdinalExpr::var(var))) return false;
  std::vector<std::string> bodyVars;
  b.body().freeVars(bodyVars);
  for (const auto& v : bodyVars)
    if (v == var) return false;
  std::vector<std::string> famVars;
  t.family().freeVars(famVars);
  return famVars.empty();
}

struct ConvCheck {
  Tri embeds = Tri::Unknown;
  std::vector<std::pair<std::string, std::string>> pairs;  // incomparable pairs
};

int famHeadLen(const FamilyExpr& f) { return familyHeadLength(f); }

// Instability prover: sampled members contain pairwise-incomparable
// maximal components whose types never recur later in the family.
bool incomparableProver(const FamilyExpr& f, ConvCheck& out) {
  int h = famHeadLen(f);
  std::vector<Signature> orphans;
  for (int i = h; i < h + 4; ++i) {
    Signature m = normalizeSig(f.member(i));
    std::vector<Signature> comps =
        m.kind() == SigKind::Wedge ? m.parts() : std::vector<Signature>{m};
    for (const auto& c : comps) {
      if (!hasEnds(c)) continue;
      bool recurs = false;
      for (int j = i + 1; j <= h + 5; ++j) {
        if (hasEndOfType(f.member(j), c) != Tri::No) {
          recurs = true;
          break;
        }
      }
      if (!recurs) orphans.push_back(c);
    }
  }
  // Keep pairwise incomparable orphans.
  std::vector<Signature> kept;
  for (const auto& c : orphans) {
    bool ok = true;
    for (const auto& k : kept) {
      if (leq(c, k) != Tri::No || leq(k, c) != Tri::No) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(c);
  }
  if (kept.size() < 3) return false;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      out.pairs.emplace_back(kept[i].str(), kept[j].str());
  return true;
}

ConvCheck famCofinalEmbed(const FamilyExpr& f) {
  using K = FamilyExpr::Kind;
  ConvCheck out;
  switch (f.kind()) {
    case K::Const:
    case K::Accum:
      out.embeds = Tri::Yes;
      return out;
    case K::Prefix:
      return famCofinalEmbed(f.child());
    case K::Stride: {
      ConvCheck inner = famCofinalEmbed(f.child());
      if (inner.embeds == Tri::Yes) return inner;
      break;  // fall through to sampling on the strided family
    }
    case K::Param: {
      const Signature& t = f.paramTemplate();
      if (templateTreeShaped(t)) {
        out.embeds = Tri::Yes;
        return out;
      }
      if (cumulativeVeeTemplate(t, f.paramVar())) {
        out.embeds = Tri::Yes;
        return out;
      }
      break;
    }
    case K::WedgeFam: {
      ConvCheck a = famCofinalEmbed(f.child(0));
      ConvCheck b = famCofinalEmbed(f.child(1));
      if (a.embeds == Tri::Yes && b.embeds == Tri::Yes) {
        out.embeds = Tri::Yes;
        return out;
      }
      break;
    }
  }
  // Sampling: consecutive-member clopen embeddings witness condition 3.
  int h = famHeadLen(f);
  bool allYes = true;
  for (int i = h; i < h + 3; ++i) {
    Tri e = clopenEmbeds(f.member(i), f.member(i + 1));
    if (e != Tri::Yes) {
      allYes = false;
      break;
    }
  }
  if (allYes) {
    out.embeds = Tri::Yes;
    return out;
  }
  if (incomparableProver(f, out)) {
    out.embeds = Tri::No;
    return out;
  }
  out.embeds = Tri::Unknown;
  return out;
}

void collectConvs(const Signature& s, std::vector<Signature>& out);

void collectFamilyConvs(const FamilyExpr& f, std::vector<Signature>& out) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const:
      collectConvs(f.constSig(), out);
      return;
    case K::Param:
      collectConvs(f.paramTemplate(), out);
      return;
    case K::Prefix:
      for (const auto& h : f.prefixHead()) collectConvs(h, out);
      collectFamilyConvs(f.child(), out);
      return;
    case K::Accum:
    case K::Stride:
      collectFamilyConvs(f.child(), out);
      return;
    case K::WedgeFam:
      collectFamilyConvs(f.child(0), out);
      collectFamilyConvs(f.child(1), out);
      return;
  }
}

void collectConvs(const Signature& s, std::vector<Signature>& out) {
  if (s.kind() == SigKind::Conv) {
    out.push_back(s);
    collectFamilyConvs(s.family(), out);
    collectConvs(s.base(), out);
    return;
  }
  for (const auto& p : s.parts()) collectConvs(p, out);
}

std::mutex stableMutex;
std::map<std::string, StabilityResult> stableCache;

}  // namespace

StabilityResult isStable(const Signature& sig) {
  std::string key = sig.str();
  {
    std::lock_guard<std::mutex> lock(stableMutex);
    auto it = stableCache.find(key);
    if (it != stableCache.end()) return it->second;
  }
  StabilityResult out;
  Signature n = sig.closed() ? normalizeSig(sig) : sig;
  std::vector<Signature> convs;
  collectConvs(n, convs);
  out.value = Stability::Stable;
  for (const auto& c : convs) {
    ConvCheck check = famCofinalEmbed(c.family());
    if (check.embeds == Tri::No) {
      out.value = Stability::Unstable;
      UnstableWitness w;
      w.path = c.str();
      w.reason = "InfinitelyManyIncomparableMaxTypes";
      w.incomparablePairs = check.pairs;
      out.witness = w;
      break;
    }
    if (check.embeds == Tri::Unknown) out.value = Stability::Unknown;
  }
  std::lock_guard<std::mutex> lock(stableMutex);
  stableCache.emplace(std::move(key), out);
  return out;
}

// --- ordered certificate ---

namespace {
bool orderedConvsOk(const Signature& s) {
  if (s.kind() == SigKind::Conv) {
    if (!isMinimalBase(s.base())) return false;
    // Simplicity of genus: a plain base forbids genus on the left.
    bool basePlain = s.base().kind() != SigKind::Genus;
    if (basePlain && familyGenusInfinitelyOften(s.family())) return false;
    ConvCheck check = famCofinalEmbed(s.family());
    if (check.embeds != Tri::Yes) return false;
    std::vector<Signature> inner;
    collectFamilyConvs(s.family(), inner);
    for (const auto& c : inner)
      if (!orderedConvsOk(c)) return false;
    return true;
  }
  for (const auto& p : s.parts())
    if (!orderedConvsOk(p)) return false;
  return true;
}
}  // namespace

CanonicalSignature normalize(const Signature& sig, std::vector<RewriteStep>* trace) {
  CanonicalSignature out;
  out.sig = normalizeSig(sig, trace);
  out.stability = isStable(out.sig);
  out.orderedCertificate =
      out.stability.value == Stability::Stable && orderedConvsOk(out.sig);
  return out;
}

// --- decomposition / self-similarity ---

std::vector<Signature> wedgeDecomposition(const Signature& sig) {
  StabilityResult st = isStable(sig);
  if (st.value != Stability::Stable)
    throw UnstableInputError(st.value == Stability::Unstable
                                 ? "unstable: " + st.witness->path
                                 : "stability unknown");
  Signature n = normalizeSig(sig);
  if (n.kind() == SigKind::Wedge) return n.parts();
  return {n};
}

SelfSimilarVerdict isSelfSimilar(const Signature& sig) {
  SelfSimilarVerdict out;
  StabilityResult st = isStable(sig);
  if (st.value == Stability::Unknown) {
    out.answer = Tri::Unknown;
    return out;
  }
  if (st.value == Stability::Unstable) {
    out.answer = Tri::No;
    return out;
  }
  std::vector<Signature> parts = wedgeDecomposition(sig);
  out.decomposition = parts;
  GenusValue g = genusClass(sig);
  if (!g.infinite && g.count > 0) {
    out.answer = Tri::No;
    return out;
  }
  std::vector<Signature> ended;
  for (const auto& p : parts)
    if (hasEnds(p)) ended.push_back(p);
  out.answer = (ended.size() == 1 && parts.size() == ended.size()) ? Tri::Yes : Tri::No;
  return out;
}

}  // namespace endgraph
