#include "endgraph/semantics.hpp"

#include <algorithm>
#include <map>

namespace endgraph {

namespace {

bool famCountable(const FamilyExpr& f);

bool sigCountable(const Signature& s) {
  switch (s.kind()) {
    case SigKind::Cantor: return false;
    case SigKind::Conv: return famCountable(s.family()) && sigCountable(s.base());
    default:
      for (const auto& p : s.parts())
        if (!sigCountable(p)) return false;
      return true;
  }
}

bool famCountable(const FamilyExpr& f) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const: return sigCountable(f.constSig());
    case K::Param: return sigCountable(f.paramTemplate());
    case K::Prefix:
      for (const auto& h : f.prefixHead())
        if (!sigCountable(h)) return false;
      return famCountable(f.child());
    case K::Accum:
    case K::Stride:
      return famCountable(f.child());
    case K::WedgeFam:
      return famCountable(f.child(0)) && famCountable(f.child(1));
  }
  return true;
}

bool sigHasEnds(const Signature& s) {
  switch (s.kind()) {
    case SigKind::Rose: return false;
    case SigKind::Ord:
    case SigKind::Cantor: return true;
    case SigKind::Conv: return sigHasEnds(s.base()) || familyEverEnds(s.family());
    default:
      for (const auto& p : s.parts())
        if (sigHasEnds(p)) return true;
      return false;
  }
}

// Positive genus anywhere (a loop source, not necessarily an end mark).
bool sigHasPositiveGenus(const Signature& s) {
  switch (s.kind()) {
    case SigKind::Rose: return s.roseLoops() > 0;
    case SigKind::Genus: return true;
    case SigKind::Conv:
      if (sigHasPositiveGenus(s.base())) return true;
      return familyGenusInfinitelyOften(s.family()) || [&] {
        int h = familyHeadLength(s.family());
        for (int k = 0; k < h; ++k)
          if (sigHasPositiveGenus(s.family().member(k))) return true;
        return false;
      }();
    default:
      for (const auto& p : s.parts())
        if (sigHasPositiveGenus(p)) return true;
      return false;
  }
}

}  // namespace

bool isCountable(const Signature& sig) { return sigCountable(sig); }
bool hasEnds(const Signature& sig) { return sigHasEnds(sig); }

bool familyEverEnds(const FamilyExpr& f) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const: return sigHasEnds(f.constSig());
    case K::Param: return sigHasEnds(f.paramTemplate());
    case K::Prefix:
      for (const auto& h : f.prefixHead())
        if (sigHasEnds(h)) return true;
      return familyEverEnds(f.child());
    case K::Accum:
    case K::Stride:
      return familyEverEnds(f.child());
    case K::WedgeFam:
      return familyEverEnds(f.child(0)) || familyEverEnds(f.child(1));
  }
  return false;
}

bool familyEndsInfinitelyOften(const FamilyExpr& f) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const: return sigHasEnds(f.constSig());
    case K::Param: return sigHasEnds(f.paramTemplate());
    case K::Accum: return familyEverEnds(f.child());
    case K::Stride: return familyEndsInfinitelyOften(f.child());
    case K::WedgeFam:
      return familyEndsInfinitelyOften(f.child(0)) ||
             familyEndsInfinitelyOften(f.child(1));
    case K::Prefix: return familyEndsInfinitelyOften(f.child());
  }
  return false;
}

bool familyGenusInfinitelyOften(const FamilyExpr& f) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const: return sigHasPositiveGenus(f.constSig());
    case K::Param: return sigHasPositiveGenus(f.paramTemplate());
    case K::Accum:
      return familyGenusInfinitelyOften(f.child()) || [&] {
        int h = familyHeadLength(f.child());
        for (int k = 0; k < h; ++k)
          if (sigHasPositiveGenus(f.child().member(k))) return true;
        return false;
      }();
    case K::Stride: return familyGenusInfinitelyOften(f.child());
    case K::WedgeFam:
      return familyGenusInfinitelyOften(f.child(0)) ||
             familyGenusInfinitelyOften(f.child(1));
    case K::Prefix: return familyGenusInfinitelyOften(f.child());
  }
  return false;
}

int familyHeadLength(const FamilyExpr& f) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const:
    case K::Param:
      return 0;
    case K::Accum:
      return familyHeadLength(f.child()) + 1;
    case K::Stride:
      return familyHeadLength(f.child());
    case K::WedgeFam:
      return std::max(familyHeadLength(f.child(0)), familyHeadLength(f.child(1)));
    case K::Prefix:
      return static_cast<int>(f.prefixHead().size()) + familyHeadLength(f.child());
  }
  return 0;
}

// --- end structure flags ---

namespace {

EndStructure famMembers(const FamilyExpr& f);

EndStructure merge(EndStructure a, const EndStructure& b) {
  a.anyEnds |= b.anyEnds;
  a.countable &= b.countable;
  a.isoPlain |= b.isoPlain;
  a.isoGenus |= b.isoGenus;
  a.anyPlain |= b.anyPlain;
  a.anyGenus |= b.anyGenus;
  a.cantorPlain |= b.cantorPlain;
  a.cantorGenus |= b.cantorGenus;
  return a;
}

EndStructure genusify(EndStructure e) {
  e.isoGenus |= e.isoPlain;
  e.isoPlain = false;
  e.anyGenus |= e.anyPlain;
  e.anyPlain = false;
  e.cantorGenus |= e.cantorPlain;
  e.cantorPlain = false;
  return e;
}

EndStructure structureOf(const Signature& s) {
  switch (s.kind()) {
    case SigKind::Rose:
      return {};
    case SigKind::Cantor: {
      EndStructure e;
      e.anyEnds = true;
      e.countable = false;
      e.anyPlain = true;
      e.cantorPlain = true;
      return e;
    }
    case SigKind::Ord: {
      EndStructure e;
      e.anyEnds = true;
      e.isoPlain = true;
      e.anyPlain = true;
      return e;
    }
    case SigKind::Genus:
      return genusify(structureOf(s.inner()));
    case SigKind::Wedge:
    case SigKind::VeeUpTo: {
      EndStructure e;
      for (const auto& p : s.parts()) e = merge(e, structureOf(p));
      return e;
    }
    case SigKind::Conv: {
      const FamilyExpr& f = s.family();
      EndStructure members = famMembers(f);
      EndStructure base = structureOf(s.base());
      bool baseAccum = familyEndsInfinitelyOften(f);   // member ends pile up
      bool baseGenusified = familyGenusInfinitelyOften(f);
      EndStructure b = base;
      if (baseGenusified) b = genusify(b);
      if (baseAccum) {
        b.isoPlain = false;
        b.isoGenus = false;
      }
      EndStructure e = merge(members, b);
      e.anyEnds = members.anyEnds || base.anyEnds;
      e.countable = members.countable && base.countable;
      return e;
    }
  }
  return {};
}

EndStructure famMembers(const FamilyExpr& f) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const: return structureOf(f.constSig());
    case K::Param: return structureOf(f.paramTemplate());
    case K::Accum:
    case K::Stride:
      return famMembers(f.child());
    case K::WedgeFam:
      return merge(famMembers(f.child(0)), famMembers(f.child(1)));
    case K::Prefix: {
      EndStructure e = famMembers(f.child());
      for (const auto& h : f.prefixHead()) e = merge(e, structureOf(h));
      return e;
    }
  }
  return {};
}

}  // namespace

EndStructure endStructure(const Signature& sig) { return structureOf(sig); }

// --- genus counting ---

namespace {

bool infinitelyManyVertices(const Signature& s) {
  switch (s.kind()) {
    case SigKind::Rose: return false;
    case SigKind::Ord:
    case SigKind::Cantor: return true;
    case SigKind::Conv: return true;  // base plus infinitely many members
    default:
      for (const auto& p : s.parts())
        if (infinitelyManyVertices(p)) return true;
      return false;
  }
}

GenusValue gvAdd(GenusValue a, GenusValue b) {
  if (a.infinite || b.infinite) return {true, 0};
  return {false, a.count + b.count};
}

// Number of vertices at distance n from the base point of the canonical
// model.  The canonical tree for w^g+1 is a spine with the fundamental-
// sequence branch attached at each level.
std::uint64_t widthAt(const Signature& base, std::uint64_t n);

Ordinal fundamental(const Ordinal& g, std::uint64_t k) {
  // g limit: an increasing sequence g[k] -> g on CNF below epsilon_0.
  const auto& terms = g.terms();
  Ordinal head;
  for (std::size_t i = 0; i + 1 < terms.size(); ++i)
    head = add(head, Ordinal::omegaPow(terms[i].exponent, terms[i].coefficient));
  const auto& last = terms.back();
  Ordinal lastLess = Ordinal::omegaPow(last.exponent, last.coefficient - 1);
  const Ordinal& e = last.exponent;
  if (e.isSuccessor() || e.isFinite()) {
    // w^e = sup_k w^(e-1)*k
    Ordinal em1;
    {
      auto ts = e.terms();
      if (!ts.empty() && ts.back().exponent.isZero()) {
        Ordinal h;
        for (std::size_t i = 0; i + 1 < ts.size(); ++i)
          h = add(h, Ordinal::omegaPow(ts[i].exponent, ts[i].coefficient));
        if (ts.back().coefficient > 1)
          h = add(h, Ordinal::omegaPow(Ordinal(), ts.back().coefficient - 1));
        em1 = h;
      }
    }
    return add(add(head, lastLess), Ordinal::omegaPow(em1).timesNat(k ? k : 1));
  }
  return add(add(head, lastLess), Ordinal::omegaPow(fundamental(e, k)));
}

std::uint64_t ordTreeWidth(const Ordinal& g, std::uint64_t n) {
  if (n == 0) return 1;
  if (g.isZero()) return 1;  // a ray
  static std::map<std::pair<std::string, std::uint64_t>, std::uint64_t> memo;
  auto key = std::make_pair(g.str(), n);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  // Spine vertex at each level plus branch levels below attach points.
  std::uint64_t total = 1;
  for (std::uint64_t k = 0; k < n; ++k) {
    Ordinal branch;
    if (g.isSuccessor()) {
      auto ts = g.terms();
      Ordinal pred;
      for (std::size_t i = 0; i + 1 < ts.size(); ++i)
        pred = add(pred, Ordinal::omegaPow(ts[i].exponent, ts[i].coefficient));
      if (ts.back().coefficient > 1)
        pred = add(pred, Ordinal::natural(ts.back().coefficient - 1));
      branch = pred;
    } else {
      branch = fundamental(g, k);
    }
    total += ordTreeWidth(branch, n - k - 1);
  }
  memo[key] = total;
  return total;
}

std::uint64_t widthAt(const Signature& base, std::uint64_t n) {
  switch (base.kind()) {
    case SigKind::Rose:
      return n == 0 ? 1 : 0;
    case SigKind::Cantor:
      return n == 0 ? 1 : (1ull << std::min<std::uint64_t>(n, 40));
    case SigKind::Ord:
      return ordTreeWidth(base.ordExpr().value(), n);
    case SigKind::Genus:
      return widthAt(base.inner(), n);
    case SigKind::Wedge: {
      std::uint64_t s = 0;
      for (const auto& p : base.parts()) s += widthAt(p, n);
      return n == 0 ? 1 : s;  // shared wedge point at distance 0
    }
    default:
      // Structured bases: every level is non-empty once members exist.
      return 1;
  }
}

GenusValue genusOf(const Signature& s) {
  switch (s.kind()) {
    case SigKind::Rose:
      return {false, s.roseLoops()};
    case SigKind::Ord:
    case SigKind::Cantor:
      return {false, 0};
    case SigKind::Genus:
      if (infinitelyManyVertices(s.inner())) return {true, 0};
      // All-rose content sits at a single canonical vertex.
      return gvAdd(genusOf(s.inner()), {false, 1});
    case SigKind::Wedge:
    case SigKind::VeeUpTo: {
      GenusValue g;
      for (const auto& p : s.parts()) g = gvAdd(g, genusOf(p));
      return g;
    }
    case SigKind::Conv: {
      const FamilyExpr& f = s.family();
      GenusValue g = genusOf(s.base());
      if (familyGenusInfinitelyOften(f)) return {true, 0};
      int h = familyHeadLength(f);
      for (int k = 0; k < h; ++k) {
        Signature m = f.member(k);
        GenusValue gm = genusOf(m);
        if (gm.infinite) return {true, 0};
        if (gm.count == 0) continue;
        std::uint64_t w = widthAt(s.base(), k);
        g = gvAdd(g, {false, gm.count * w});
      }
      return g;
    }
  }
  return {false, 0};
}

}  // namespace

GenusValue genusClass(const Signature& sig) { return genusOf(sig); }

// --- MS normal form ---

namespace {

MsPair wedgeMs(const std::vector<MsPair>& parts) {
  if (parts.empty()) throw EmptyEndSpace();
  MsPair out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) {
    int c = cmp(parts[i].alpha, out.alpha);
    if (c > 0) out = parts[i];
    else if (c == 0) out.count += parts[i].count;
  }
  return out;
}

MsPair msOf(const Signature& s) {
  switch (s.kind()) {
    case SigKind::Rose:
      throw EmptyEndSpace();
    case SigKind::Cantor:
      throw UncountableInput();
    case SigKind::Ord:
      if (!s.ordExpr().closed())
        throw std::invalid_argument("msForm: open signature");
      return MsPair{s.ordExpr().value(), 1};
    case SigKind::Genus:
      return msOf(s.inner());
    case SigKind::VeeUpTo:
      throw std::invalid_argument("msForm: open signature");
    case SigKind::Wedge: {
      std::vector<MsPair> ps;
      for (const auto& p : s.parts())
        if (sigHasEnds(p)) ps.push_back(msOf(p));
      return wedgeMs(ps);
    }
    case SigKind::Conv: {
      const FamilyExpr& f = s.family();
      if (!famCountable(f)) throw UncountableInput();
      bool baseEnds = sigHasEnds(s.base());
      if (!baseEnds) {
        // Degenerate rose base: only member 0 attaches.
        if (!sigHasEnds(f.member(0))) throw EmptyEndSpace();
        return msOf(f.member(0));
      }
      std::vector<MsPair> ps;
      if (familyEndsInfinitelyOften(f)) {
        FamilyRank fr = familyRank(f);
        Ordinal lambda = fr.attainedIO ? fr.sup.succ() : fr.sup;
        MsPair b = msOf(s.base());
        ps.push_back(MsPair{add(lambda, b.alpha), b.count});
      } else {
        ps.push_back(msOf(s.base()));
      }
      // One-time prefix junk attaches at every vertex of its level, so it
      // carries the level width as a multiplicity.
      int heads = familyHeadLength(f);
      for (int k = 0; k < heads; ++k) {
        Signature m = f.member(k);
        if (!sigHasEnds(m)) continue;
        MsPair mk = msOf(m);
        mk.count *= widthAt(s.base(), static_cast<std::uint64_t>(k));
        ps.push_back(mk);
      }
      return wedgeMs(ps);
    }
  }
  throw std::logic_error("msOf: unreachable");
}

FamilyRank msLimit(const Signature& t);

// Limit over the free outer variable of the boost exponent Lambda of a
// family whose payloads carry that variable.
FamilyRank famLambdaLimit(const FamilyExpr& f) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const: {
      // Constant family: Lambda(v) = lead(y(v)) + 1 (sup attained per v).
      FamilyRank inner = msLimit(f.constSig());
      if (inner.attainedIO) return {inner.sup.succ(), true};
      return {inner.sup, false};  // lead+1 stays cofinal below a limit
    }
    case K::Param:
      // The inner binder shadows the outer variable; Lambda is constant.
      {
        FamilyRank r = familyRank(f);
        return {r.attainedIO ? r.sup.succ() : r.sup, true};
      }
    case K::Prefix:
      return famLambdaLimit(f.child());
    case K::Stride:
      return famLambdaLimit(f.child());
    case K::Accum: {
      std::vector<std::string> vs;
      f.child().freeVars(vs);
      if (vs.empty()) {
        FamilyRank r = familyRank(f);
        return {r.attainedIO ? r.sup.succ() : r.sup, true};
      }
      throw UnsupportedFamily("cumulative family with a variable generator");
    }
    case K::WedgeFam: {
      FamilyRank a = famLambdaLimit(f.child(0));
      FamilyRank b = famLambdaLimit(f.child(1));
      int c = cmp(a.sup, b.sup);
      if (c > 0) return a;
      if (c < 0) return b;
      return {a.sup, a.attainedIO || b.attainedIO};
    }
  }
  throw UnsupportedFamily("famLambdaLimit: unreachable");
}

// Limit of the member MS alpha of an open template as the index grows.
FamilyRank msLimit(const Signature& t) {
  switch (t.kind()) {
    case SigKind::Rose:
      return {Ordinal(), true};
    case SigKind::Cantor:
      throw UncountableInput();
    case SigKind::Ord: {
      if (t.ordExpr().closed()) return {t.ordExpr().value(), true};
      auto sp = t.ordExpr().sup();
      return {sp.bound, sp.attained};
    }
    case SigKind::Genus:
      return msLimit(t.inner());
    case SigKind::VeeUpTo:
      return {msLimit(t.body()).sup, msLimit(t.body()).attainedIO};
    case SigKind::Wedge: {
      FamilyRank out{Ordinal(), true};
      bool first = true;
      for (const auto& p : t.parts()) {
        if (!sigHasEnds(p)) continue;
        FamilyRank q = msLimit(p);
        if (first) {
          out = q;
          first = false;
          continue;
        }
        int c = cmp(q.sup, out.sup);
        if (c > 0) out = q;
        else if (c == 0) out.attainedIO = out.attainedIO || q.attainedIO;
      }
      if (first) throw EmptyEndSpace();
      return out;
    }
    case SigKind::Conv: {
      const FamilyExpr& f = t.family();
      std::vector<std::string> famVars;
      f.freeVars(famVars);
      FamilyRank out{Ordinal(), true};
      if (!sigHasEnds(t.base())) {
        if (!familyEverEnds(f)) return {Ordinal(), true};
        out = msLimit(f.member(0));
      } else if (famVars.empty()) {
        Ordinal lambda;
        if (familyEndsInfinitelyOften(f)) {
          FamilyRank inner = familyRank(f);
          lambda = inner.attainedIO ? inner.sup.succ() : inner.sup;
        }
        FamilyRank b = msLimit(t.base());
        out = {add(lambda, b.sup), b.attainedIO};
      } else if (!familyEndsInfinitelyOften(f)) {
        FamilyRank b = msLimit(t.base());
        out = b;
      } else {
        // The inner family itself varies with the outer index.
        FamilyRank lam = famLambdaLimit(f);
        if (!t.base().closed())
          throw UnsupportedFamily("variable family and variable base: " + t.str());
        MsPair b = msOf(t.base());
        if (b.alpha.isZero()) {
          out = lam;
        } else if (b.alpha.isFinite()) {
          // A finite shift is absorbed below a limit sup.
          out = lam.attainedIO ? FamilyRank{add(lam.sup, b.alpha), true}
                               : FamilyRank{lam.sup, false};
        } else if (lam.attainedIO) {
          out = FamilyRank{add(lam.sup, b.alpha), true};
        } else if (lam.sup <= Ordinal::omegaPow(b.alpha.leadExponent())) {
          // Every boost is swallowed by the base rank: Lambda(v)+rho = rho.
          out = FamilyRank{b.alpha, true};
        } else {
          throw UnsupportedFamily("unattained boost onto an infinite base: " + t.str());
        }
      }
      int heads = familyHeadLength(f);
      for (int k = 0; k < heads; ++k) {
        Signature m = f.member(k);
        if (!sigHasEnds(m)) continue;
        FamilyRank h = msLimit(m);
        int c = cmp(h.sup, out.sup);
        if (c > 0) out = h;
        else if (c == 0) out.attainedIO = out.attainedIO || h.attainedIO;
      }
      return out;
    }
  }
  throw std::logic_error("msLimit: unreachable");
}

}  // namespace

FamilyRank familyRank(const FamilyExpr& f) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const:
      return {msOf(f.constSig()).alpha, true};
    case K::Param:
      return msLimit(f.paramTemplate());
    case K::Accum: {
      // Earlier members persist inside later ones.
      Ordinal persistent;
      bool any = false;
      int h = familyHeadLength(f.child()) + 2;
      for (int k = 0; k < h; ++k) {
        Signature m = f.child().member(k);
        if (!sigHasEnds(m)) continue;
        Ordinal a = msOf(m).alpha;
        if (!any || a > persistent) persistent = a;
        any = true;
      }
      if (!familyEndsInfinitelyOften(f.child())) {
        if (!any) throw EmptyEndSpace();
        return {persistent, true};
      }
      FamilyRank g = familyRank(f.child());
      if (any && persistent >= g.sup) return {persistent, true};
      return g;
    }
    case K::Stride:
      return familyRank(f.child());
    case K::WedgeFam: {
      bool aIO = familyEndsInfinitelyOften(f.child(0));
      bool bIO = familyEndsInfinitelyOften(f.child(1));
      if (!aIO && !bIO) throw EmptyEndSpace();
      if (!aIO) return familyRank(f.child(1));
      if (!bIO) return familyRank(f.child(0));
      FamilyRank a = familyRank(f.child(0));
      FamilyRank b = familyRank(f.child(1));
      int c = cmp(a.sup, b.sup);
      if (c > 0) return a;
      if (c < 0) return b;
      return {a.sup, a.attainedIO || b.attainedIO};
    }
    case K::Prefix:
      return familyRank(f.child());
  }
  throw std::logic_error("familyRank: unreachable");
}

MsPair msForm(const Signature& sig) {
  if (!sigCountable(sig)) throw UncountableInput();
  if (!sigHasEnds(sig)) throw EmptyEndSpace();
  return msOf(sig);
}

CharPairSummary charPair(const Signature& sig) {
  CharPairSummary out;
  out.genus = genusOf(sig);
  EndStructure e = structureOf(sig);
  out.countable = e.countable;
  out.hasIsolatedPlainEnd = e.isoPlain;
  out.hasIsolatedGenusEnd = e.isoGenus;
  out.perfect = e.anyEnds && e.perfect();
  if (!e.anyGenus)
    out.genusSupport = GenusSupport::None;
  else if (!e.anyPlain)
    out.genusSupport = GenusSupport::All;
  else
    out.genusSupport = GenusSupport::Mixed;
  if (e.countable && e.anyEnds) out.msForm = msOf(sig);
  return out;
}

}  // namespace endgraph
