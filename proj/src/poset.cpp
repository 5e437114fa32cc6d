#include "endgraph/poset.hpp"

#include <algorithm>

namespace endgraph {

namespace {

Signature ord0() { return Signature::ord(Ordinal()); }

bool rankCovered(const std::vector<RankRange>& ranges, const Ordinal& beta) {
  for (const auto& r : ranges) {
    int c = cmp(beta, r.hi);
    if (c < 0 || (c == 0 && r.hiIncl)) return true;
  }
  return false;
}

std::optional<Ordinal> rangeBound(const std::vector<RankRange>& ranges) {
  // Strict upper bound on the ranks covered, when a canonical one exists.
  if (ranges.empty()) return Ordinal();
  Ordinal bound;
  for (const auto& r : ranges) {
    Ordinal b = r.hiIncl ? r.hi.succ() : r.hi;
    if (b > bound) bound = b;
  }
  return bound;
}

struct CensusBuilder {
  TypeCensus out;
  void plainRange(Ordinal hi, bool incl) {
    out.plain.push_back(RankRange{std::move(hi), incl});
  }
  void genusRange(Ordinal hi, bool incl) {
    out.genus.push_back(RankRange{std::move(hi), incl});
  }
};

void censusSig(const Signature& s, bool underGenus, CensusBuilder& b);
void censusFam(const FamilyExpr& f, bool underGenus, CensusBuilder& b);
void censusTemplate(const Signature& t, const std::string& var, std::uint64_t k,
                    std::uint64_t r, bool underGenus, CensusBuilder& b);

void censusSig(const Signature& s, bool underGenus, CensusBuilder& b) {
  switch (s.kind()) {
    case SigKind::Rose:
      return;
    case SigKind::Ord: {
      Ordinal a = s.ordExpr().value();
      underGenus ? b.genusRange(a, true) : b.plainRange(a, true);
      return;
    }
    case SigKind::Cantor:
      b.out.structured.push_back(underGenus ? Signature::genus(Signature::cantor())
                                            : Signature::cantor());
      return;
    case SigKind::Genus:
      censusSig(s.inner(), true, b);
      return;
    case SigKind::Wedge:
    case SigKind::VeeUpTo:
      for (const auto& p : s.parts()) censusSig(p, underGenus, b);
      return;
    case SigKind::Conv: {
      censusFam(s.family(), underGenus, b);
      EndStructure bs = endStructure(s.base());
      if (!bs.anyEnds) return;
      // The convergence top: a type of its own when the base is minimal.
      Signature whole = underGenus ? normalizeSig(Signature::genus(s)) : s;
      bool minimalBase =
          s.base() == ord0() || s.base() == Signature::cantor() ||
          s.base() == Signature::genus(ord0()) ||
          s.base() == Signature::genus(Signature::cantor());
      b.out.structured.push_back(whole);
      if (!minimalBase) {
        // Boosted intermediate base types are not representable here.
        b.out.incomplete = true;
        censusSig(s.base(), underGenus, b);  // keep at least a lower bound
      }
      return;
    }
  }
}

void censusFam(const FamilyExpr& f, bool underGenus, CensusBuilder& b) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const:
      censusSig(normalizeSig(f.constSig()), underGenus, b);
      return;
    case K::Param:
      censusTemplate(f.paramTemplate(), f.paramVar(), 1, 0, underGenus, b);
      return;
    case K::Accum:
      censusFam(f.child(), underGenus, b);
      return;
    case K::Stride: {
      // Compose index maps into any Param sites below.
      CensusBuilder inner;
      censusFam(f.child(), underGenus, inner);
      for (auto& t : inner.out.templates) {
        t.r = t.k * f.strideR() + t.r;
        t.k = t.k * f.strideK();
      }
      b.out.plain.insert(b.out.plain.end(), inner.out.plain.begin(), inner.out.plain.end());
      b.out.genus.insert(b.out.genus.end(), inner.out.genus.begin(), inner.out.genus.end());
      b.out.structured.insert(b.out.structured.end(), inner.out.structured.begin(),
                              inner.out.structured.end());
      b.out.templates.insert(b.out.templates.end(), inner.out.templates.begin(),
                             inner.out.templates.end());
      b.out.incomplete |= inner.out.incomplete;
      return;
    }
    case K::WedgeFam:
      censusFam(f.child(0), underGenus, b);
      censusFam(f.child(1), underGenus, b);
      return;
    case K::Prefix:
      for (const auto& h : f.prefixHead()) censusSig(normalizeSig(h), underGenus, b);
      censusFam(f.child(), underGenus, b);
      return;
  }
}

void censusTemplate(const Signature& t, const std::string& var, std::uint64_t k,
                    std::uint64_t r, bool underGenus, CensusBuilder& b) {
  switch (t.kind()) {
    case SigKind::Rose:
      return;
    case SigKind::Ord: {
      const OrdinalExpr& e = t.ordExpr();
      if (e.closed()) {
        censusSig(t, underGenus, b);
        return;
      }
      if (!e.monotone()) {
        b.out.incomplete = true;
        return;
      }
      auto sp = e.sup();
      underGenus ? b.genusRange(sp.bound, sp.attained)
                 : b.plainRange(sp.bound, sp.attained);
      return;
    }
    case SigKind::Cantor:
      censusSig(t, underGenus, b);
      return;
    case SigKind::Genus:
      censusTemplate(t.inner(), var, k, r, true, b);
      return;
    case SigKind::Wedge:
      for (const auto& p : t.parts()) censusTemplate(p, var, k, r, underGenus, b);
      return;
    case SigKind::VeeUpTo:
      // Types over all expansion indices pool the body's sites.
      censusTemplate(t.body(), t.veeVar(), 1, 0, underGenus, b);
      return;
    case SigKind::Conv: {
      if (t.closed()) {
        censusSig(normalizeSig(t), underGenus, b);
        return;
      }
      Signature site = underGenus ? Signature::genus(t) : t;
      b.out.templates.push_back(TemplateSite{site, var, k, r});
      censusFam(t.family(), underGenus, b);
      censusTemplate(t.base(), var, k, r, underGenus, b);
      return;
    }
  }
}

// Does the site family member ever equal z?  Members grow monotonically,
// so a countable query can be bounded.
Tri siteMatches(const TemplateSite& site, const Signature& z) {
  bool zCountable = isCountable(z);
  std::optional<MsPair> zms;
  if (zCountable && hasEnds(z)) zms = msForm(z);
  bool sawUnknown = false;
  for (std::uint64_t j = 0; j < 24; ++j) {
    Signature raw = site.templ.substFree(site.var, site.k * j + site.r);
    Signature m = normalizeSig(raw);
    if (m == z) return Tri::Yes;
    IsoResult ir = isomorphic(m, z);
    if (ir.answer == Tri::Yes) return Tri::Yes;
    if (ir.answer == Tri::Unknown) sawUnknown = true;
    if (zms && isCountable(m) && hasEnds(m)) {
      MsPair mm = msForm(m);
      if (mm.alpha > zms->alpha ||
          (mm.alpha == zms->alpha && mm.count > zms->count)) {
        // Monotone growth has passed the query.
        return sawUnknown ? Tri::Unknown : Tri::No;
      }
    }
  }
  return Tri::Unknown;
}

}  // namespace

Tri TypeCensus::hasPlainRank(const Ordinal& beta) const {
  // Template sites are conv-shaped tops; their members' ordinal types are
  // pooled into the ranges, so a miss here is a definite No.
  if (rankCovered(plain, beta)) return Tri::Yes;
  return incomplete ? Tri::Unknown : Tri::No;
}

Tri TypeCensus::hasGenusRank(const Ordinal& beta) const {
  if (rankCovered(genus, beta)) return Tri::Yes;
  return incomplete ? Tri::Unknown : Tri::No;
}

std::optional<Ordinal> TypeCensus::plainRankBound() const {
  if (incomplete) return std::nullopt;
  return rangeBound(plain);
}

std::optional<Ordinal> TypeCensus::genusRankBound() const {
  if (incomplete) return std::nullopt;
  return rangeBound(genus);
}

TypeCensus typeCensus(const Signature& sig) {
  CensusBuilder b;
  censusSig(normalizeSig(sig), false, b);
  return std::move(b.out);
}

namespace {

Tri hasSingleType(const Signature& sig, const Signature& nz) {
  TypeCensus c = typeCensus(sig);
  // Ordinal-type queries go through the rank ranges.
  if (nz.kind() == SigKind::Ord) return c.hasPlainRank(nz.ordExpr().value());
  if (nz.kind() == SigKind::Genus && nz.inner().kind() == SigKind::Ord)
    return c.hasGenusRank(nz.inner().ordExpr().value());
  // Structured queries match local structures up to isomorphism.
  bool sawUnknown = c.incomplete;
  for (const auto& s : c.structured) {
    IsoResult ir = isomorphic(s, nz);
    if (ir.answer == Tri::Yes) return Tri::Yes;
    if (ir.answer == Tri::Unknown) sawUnknown = true;
  }
  for (const auto& t : c.templates) {
    Tri m = siteMatches(t, nz);
    if (m == Tri::Yes) return Tri::Yes;
    if (m == Tri::Unknown) sawUnknown = true;
  }
  return sawUnknown ? Tri::Unknown : Tri::No;
}

bool cantorShellOf(const Signature& s) {
  try {
    MaxShellKind k = maxShell(s);
    return k == MaxShellKind::CantorMany || k == MaxShellKind::GenusCantor;
  } catch (const std::exception&) {
    return false;
  }
}

// A non-maximal occurrence means infinitely many disjoint copies exist.
bool occursNonMaximally(const Signature& sig, const Signature& part) {
  Signature n = normalizeSig(sig);
  std::vector<Signature> comps =
      n.kind() == SigKind::Wedge ? n.parts() : std::vector<Signature>{n};
  for (const auto& p : comps) {
    if (!hasEnds(p)) continue;
    if (hasSingleType(p, part) != Tri::Yes) continue;
    if (isomorphic(part, p).answer != Tri::Yes) return true;
    if (cantorShellOf(p)) return true;
  }
  return false;
}

// k disjoint clopen copies of the type `part` inside sig.
Tri hasTypeCopies(const Signature& sig, const Signature& part, std::uint64_t k) {
  // Exact on the countable genus-free fragment by MS rank arithmetic.
  bool sigPlain = isCountable(sig) && !endStructure(sig).anyGenus;
  bool partPlain = isCountable(part) && !endStructure(part).anyGenus;
  if (sigPlain && partPlain && hasEnds(sig)) {
    MsPair s = msForm(sig), p = msForm(part);
    int c = cmp(p.alpha, s.alpha);
    if (c < 0) return Tri::Yes;
    if (c > 0) return Tri::No;
    return p.count * k <= s.count ? Tri::Yes : Tri::No;
  }
  Tri base = hasSingleType(sig, part);
  if (base != Tri::Yes || k <= 1) return base;
  if (occursNonMaximally(sig, part)) return Tri::Yes;
  // Count maximal copies.
  Signature n = normalizeSig(sig);
  std::vector<Signature> comps =
      n.kind() == SigKind::Wedge ? n.parts() : std::vector<Signature>{n};
  std::uint64_t copies = 0;
  for (const auto& p : comps)
    if (hasEnds(p) && isomorphic(part, p).answer == Tri::Yes) ++copies;
  return copies >= k ? Tri::Yes : Tri::Unknown;
}

}  // namespace

Tri hasEndOfType(const Signature& sig, const Signature& z) {
  Signature nz = normalizeSig(z);
  if (!hasEnds(nz))
    throw std::invalid_argument("hasEndOfType: query has no ends: " + nz.str());
  if (nz.kind() != SigKind::Wedge) return hasTypeCopies(sig, nz, 1);
  // A wedge query asks for disjoint copies of each distinct part.
  std::vector<std::pair<Signature, std::uint64_t>> groups;
  for (const auto& p : nz.parts()) {
    if (!hasEnds(p)) continue;
    bool found = false;
    for (auto& [g, cnt] : groups) {
      if (g == p) {
        ++cnt;
        found = true;
        break;
      }
    }
    if (!found) groups.emplace_back(p, 1);
  }
  Tri out = Tri::Yes;
  for (const auto& [g, cnt] : groups) {
    out = triAnd(out, hasTypeCopies(sig, g, cnt));
    if (out == Tri::No) return Tri::No;
  }
  return out;
}

Tri leq(const Signature& z, const Signature& z2) { return hasEndOfType(z2, z); }

std::vector<Signature> minimalLocalStructures() {
  return {ord0(), Signature::genus(ord0()), Signature::cantor(),
          Signature::genus(Signature::cantor())};
}

EndTypeReport maximalEndTypes(const Signature& sig) {
  StabilityResult st = isStable(sig);
  if (st.value == Stability::Unstable)
    throw UnstableInputError("maximalEndTypes: " + st.witness->path);
  Signature n = normalizeSig(sig);
  std::vector<Signature> parts =
      n.kind() == SigKind::Wedge ? n.parts() : std::vector<Signature>{n};
  EndTypeReport out;
  for (const auto& p : parts) {
    if (!hasEnds(p)) continue;
    LocalStructure ls{p, maxShell(p)};
    if (ls.cantorMany()) {
      bool merged = false;
      for (auto& [t, m] : out.types) {
        if (m.cantorMany && isomorphic(t.sig, p).answer == Tri::Yes) {
          merged = true;
          break;
        }
      }
      if (!merged) out.types.push_back({ls, Multiplicity{true, 0}});
    } else {
      bool merged = false;
      for (auto& [t, m] : out.types) {
        if (!m.cantorMany && t.sig == p) {
          ++m.count;
          merged = true;
          break;
        }
      }
      if (!merged) out.types.push_back({ls, Multiplicity{false, 1}});
    }
  }
  return out;
}

Signature incomparableTo(const Signature& x) {
  Signature n = normalizeSig(x);
  if (isCountable(n)) return Signature::cantor();
  // The census bound is exact when complete: no end of type w^bound+1
  // occurs in x, and x is uncountable, so neither embeds in the other.
  {
    // Template sites are conv-shaped tops, never plain ordinal types, so
    // the plain rank ranges stay authoritative alongside them.
    TypeCensus c = typeCensus(n);
    if (!c.incomplete) {
      if (auto bound = c.plainRankBound()) {
        if (bound->isZero()) *bound = Ordinal::natural(1);
        return Signature::ord(*bound);
      }
    }
  }
  // Otherwise any strictly-exceeding ordinal works; use a crude syntactic
  // bound (boosts add at most one exponent per nesting level).
  Ordinal sigma;
  std::vector<const Signature*> stack{&n};
  std::vector<const FamilyExpr*> fams;
  while (!stack.empty() || !fams.empty()) {
    if (!stack.empty()) {
      const Signature* s = stack.back();
      stack.pop_back();
      if (s->kind() == SigKind::Ord) {
        Ordinal v = s->ordExpr().closed() ? s->ordExpr().value()
                                          : s->ordExpr().sup().bound;
        if (v > sigma) sigma = v;
      }
      if (s->kind() == SigKind::Conv) fams.push_back(&s->family());
      for (const auto& p : s->parts()) stack.push_back(&p);
      continue;
    }
    const FamilyExpr* f = fams.back();
    fams.pop_back();
    using K = FamilyExpr::Kind;
    switch (f->kind()) {
      case K::Const: stack.push_back(&f->constSig()); break;
      case K::Param: stack.push_back(&f->paramTemplate()); break;
      case K::Prefix:
        for (const auto& h : f->prefixHead()) stack.push_back(&h);
        fams.push_back(&f->child());
        break;
      case K::Accum:
      case K::Stride:
        fams.push_back(&f->child());
        break;
      case K::WedgeFam:
        fams.push_back(&f->child(0));
        fams.push_back(&f->child(1));
        break;
    }
  }
  Ordinal bound = sigma.timesNat(static_cast<std::uint64_t>(n.depth()) + 1).succ();
  return Signature::ord(bound);
}

Signature immediateSuccessor(const Signature& x, bool cantorKind) {
  Signature n = normalizeSig(x);
  Signature inc = incomparableTo(n);
  Signature member = normalizeSig(Signature::wedge({n, inc}));
  Signature base = cantorKind ? Signature::cantor() : ord0();
  return Signature::conv(FamilyExpr::constant(std::move(member)), std::move(base));
}

Signature minimalUpperBound(const std::vector<Signature>& zs, bool cantorKind) {
  if (zs.size() < 2)
    throw std::invalid_argument("minimalUpperBound needs at least two structures");
  // Delegate to the immediate successor when one structure dominates.
  for (const auto& cand : zs) {
    bool dominates = true;
    for (const auto& z : zs) {
      if (&z == &cand) continue;
      if (leq(z, cand) != Tri::Yes) {
        dominates = false;
        break;
      }
    }
    if (dominates) return immediateSuccessor(cand, cantorKind);
  }
  std::vector<Signature> head(zs.begin(), zs.end());
  FamilyExpr gen = FamilyExpr::prefix(std::move(head), FamilyExpr::constant(zs.back()));
  Signature base = cantorKind ? Signature::cantor() : ord0();
  return Signature::conv(FamilyExpr::accum(std::move(gen)), std::move(base));
}

Tri clopenEmbeds(const Signature& a, const Signature& b) {
  StabilityResult st = isStable(a);
  if (st.value != Stability::Stable) return Tri::Unknown;
  Signature n = normalizeSig(a);
  if (!hasEnds(n)) return Tri::Yes;
  // The wedge decomposition is the normalized top level; hasEndOfType
  // accounts for component multiplicities.
  return hasEndOfType(b, n);
}

}  // namespace endgraph
