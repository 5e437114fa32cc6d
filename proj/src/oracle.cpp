#include "endgraph/oracle.hpp"

#include <algorithm>
#include <cstdlib>

namespace endgraph::oracle {

int ocmp(const OrdVal& a, const OrdVal& b) {
  std::size_t n = std::min(a.t.size(), b.t.size());
  for (std::size_t i = 0; i < n; ++i) {
    int e = ocmp(a.t[i].exp, b.t[i].exp);
    if (e != 0) return e;
    if (a.t[i].coeff != b.t[i].coeff) return a.t[i].coeff < b.t[i].coeff ? -1 : 1;
  }
  if (a.t.size() != b.t.size()) return a.t.size() < b.t.size() ? -1 : 1;
  return 0;
}

OrdVal onat(std::uint64_t n) {
  OrdVal v;
  if (n) v.t.push_back({OrdVal{}, n});
  return v;
}

OrdVal opowOmega(const OrdVal& e, std::uint64_t c) {
  OrdVal v;
  if (c) v.t.push_back({e, c});
  return v;
}

OrdVal oadd(const OrdVal& a, const OrdVal& b) {
  if (b.zero()) return a;
  OrdVal out;
  for (std::size_t i = 0; i < a.t.size(); ++i) {
    int c = ocmp(a.t[i].exp, b.t[0].exp);
    if (c > 0) {
      out.t.push_back(a.t[i]);
    } else if (c == 0) {
      out.t.push_back({a.t[i].exp, a.t[i].coeff + b.t[0].coeff});
      out.t.insert(out.t.end(), b.t.begin() + 1, b.t.end());
      return out;
    } else {
      break;
    }
  }
  out.t.insert(out.t.end(), b.t.begin(), b.t.end());
  return out;
}

OrdVal omul(const OrdVal& a, const OrdVal& b) {
  if (a.zero() || b.zero()) return OrdVal{};
  OrdVal out;
  for (const auto& tb : b.t) {
    if (tb.exp.zero()) {
      // a * m: the lead coefficient multiplies, the tail is kept once.
      OrdVal am = a;
      am.t[0].coeff *= tb.coeff;
      out = oadd(out, am);
    } else {
      // a * w^d * e = w^(lead(a) + d) * e for d >= 1.
      OrdVal exp = oadd(a.t[0].exp, tb.exp);
      out = oadd(out, opowOmega(exp, tb.coeff));
    }
  }
  return out;
}

OrdVal oleftSub(const OrdVal& a, const OrdVal& b) {
  if (ocmp(a, b) >= 0) return OrdVal{};
  for (std::size_t i = 0; i < b.t.size(); ++i) {
    if (i >= a.t.size()) {
      OrdVal g;
      g.t.assign(b.t.begin() + i, b.t.end());
      return g;
    }
    int e = ocmp(a.t[i].exp, b.t[i].exp);
    if (e == 0 && a.t[i].coeff == b.t[i].coeff) continue;
    OrdVal g;
    if (e == 0 && a.t[i].coeff < b.t[i].coeff) {
      g.t.push_back({b.t[i].exp, b.t[i].coeff - a.t[i].coeff});
      g.t.insert(g.t.end(), b.t.begin() + i + 1, b.t.end());
    } else {
      g.t.assign(b.t.begin() + i, b.t.end());
    }
    return g;
  }
  return OrdVal{};
}

std::string OrdVal::str() const {
  if (t.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += "+";
    if (t[i].exp.zero()) {
      out += std::to_string(t[i].coeff);
      continue;
    }
    out += "w^{" + t[i].exp.str() + "}";
    if (t[i].coeff != 1) out += "*" + std::to_string(t[i].coeff);
  }
  return out;
}

OrdVal fromOrdinal(const Ordinal& o) {
  OrdVal v;
  for (const auto& t : o.terms()) v.t.push_back({fromOrdinal(t.exponent), t.coefficient});
  return v;
}

Ordinal toOrdinal(const OrdVal& v) {
  Ordinal o;
  for (const auto& t : v.t) o = add(o, Ordinal::omegaPow(toOrdinal(t.exp), t.coeff));
  return o;
}

int depthCap() {
  if (const char* s = std::getenv("ENDSPACE_DEPTH_CAP")) {
    int v = std::atoi(s);
    if (v > 0) return v;
  }
  return 24;
}

namespace {

bool hasCantorLeaf(const Signature& s);
bool famHasCantorLeaf(const FamilyExpr& f) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const: return hasCantorLeaf(f.constSig());
    case K::Param: return hasCantorLeaf(f.paramTemplate());
    case K::Prefix:
      for (const auto& h : f.prefixHead())
        if (hasCantorLeaf(h)) return true;
      return famHasCantorLeaf(f.child());
    case K::Accum:
    case K::Stride:
      return famHasCantorLeaf(f.child());
    case K::WedgeFam:
      return famHasCantorLeaf(f.child(0)) || famHasCantorLeaf(f.child(1));
  }
  return false;
}
bool hasCantorLeaf(const Signature& s) {
  switch (s.kind()) {
    case SigKind::Cantor: return true;
    case SigKind::Conv:
      return famHasCantorLeaf(s.family()) || hasCantorLeaf(s.base());
    default:
      for (const auto& p : s.parts())
        if (hasCantorLeaf(p)) return true;
      return false;
  }
}

bool hasEndLeaf(const Signature& s);
bool famEverEnds(const FamilyExpr& f) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const: return hasEndLeaf(f.constSig());
    case K::Param: return hasEndLeaf(f.paramTemplate());
    case K::Prefix:
      for (const auto& h : f.prefixHead())
        if (hasEndLeaf(h)) return true;
      return famEverEnds(f.child());
    case K::Accum:
    case K::Stride:
      return famEverEnds(f.child());
    case K::WedgeFam:
      return famEverEnds(f.child(0)) || famEverEnds(f.child(1));
  }
  return false;
}
bool hasEndLeaf(const Signature& s) {
  switch (s.kind()) {
    case SigKind::Rose: return false;
    case SigKind::Cantor:
    case SigKind::Ord: return true;
    case SigKind::Conv: return hasEndLeaf(s.base()) || famEverEnds(s.family());
    default:
      for (const auto& p : s.parts())
        if (hasEndLeaf(p)) return true;
      return false;
  }
}

// Do infinitely many family members contribute ends?
bool famEndsInfinitelyOften(const FamilyExpr& f) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const: return hasEndLeaf(f.constSig());
    case K::Param: return hasEndLeaf(f.paramTemplate());
    case K::Accum: return famEverEnds(f.child());
    case K::Stride: return famEndsInfinitelyOften(f.child());
    case K::WedgeFam:
      return famEndsInfinitelyOften(f.child(0)) || famEndsInfinitelyOften(f.child(1));
    case K::Prefix: return famEndsInfinitelyOften(f.child());
  }
  return false;
}

struct TailProfile {
  OrdVal leadSup;           // sup of member lead exponents over the tail
  bool attainedIO = false;  // lead sup reached by infinitely many members
};

OrdVal endSpace(const Signature& sig);  // forward
TailProfile famTail(const FamilyExpr& f);
int famPrefixLen(const FamilyExpr& f);
TailProfile leadLimit(const Signature& t);

// Limit over the free outer variable of a variable family's boost.
TailProfile famLambdaLimit(const FamilyExpr& f) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const: {
      TailProfile inner = leadLimit(f.constSig());
      if (inner.attainedIO) return {oadd(inner.leadSup, onat(1)), true};
      return {inner.leadSup, false};
    }
    case K::Param: {
      TailProfile r = famTail(f);
      return {r.attainedIO ? oadd(r.leadSup, onat(1)) : r.leadSup, true};
    }
    case K::Prefix:
    case K::Stride:
      return famLambdaLimit(f.child());
    case K::Accum: {
      std::vector<std::string> vs;
      f.child().freeVars(vs);
      if (vs.empty()) {
        TailProfile r = famTail(f);
        return {r.attainedIO ? oadd(r.leadSup, onat(1)) : r.leadSup, true};
      }
      throw std::invalid_argument("oracle: cumulative family with variable generator");
    }
    case K::WedgeFam: {
      TailProfile a = famLambdaLimit(f.child(0));
      TailProfile b = famLambdaLimit(f.child(1));
      int c = ocmp(a.leadSup, b.leadSup);
      if (c > 0) return a;
      if (c < 0) return b;
      return {a.leadSup, a.attainedIO || b.attainedIO};
    }
  }
  throw std::invalid_argument("oracle: famLambdaLimit unreachable");
}

OrdVal memberXi(const FamilyExpr& f, std::uint64_t n) {
  Signature m = f.member(n);
  if (!hasEndLeaf(m)) return OrdVal{};
  return endSpace(m);
}

// Limit of the lead exponent of the member space of an open template as the
// index grows.  attained <=> the lead is eventually constant.
TailProfile leadLimit(const Signature& t) {
  switch (t.kind()) {
    case SigKind::Rose:
      return {OrdVal{}, true};  // callers skip end-free parts
    case SigKind::Cantor:
      throw UncountableError();
    case SigKind::Ord: {
      if (t.ordExpr().closed()) return {fromOrdinal(t.ordExpr().value()), true};
      auto sp = t.ordExpr().sup();
      return {fromOrdinal(sp.bound), sp.attained};
    }
    case SigKind::Genus:
      return leadLimit(t.inner());
    case SigKind::VeeUpTo:
      // The bounded wedge accumulates body(1..m); the limit over the body's
      // own variable is also the limit of the wedge's lead.
      return leadLimit(t.body());
    case SigKind::Wedge: {
      TailProfile out;
      bool first = true;
      for (const auto& p : t.parts()) {
        if (!hasEndLeaf(p)) continue;
        TailProfile q = leadLimit(p);
        if (first) {
          out = q;
          first = false;
          continue;
        }
        int c = ocmp(q.leadSup, out.leadSup);
        if (c > 0) out = q;
        else if (c == 0) out.attainedIO = out.attainedIO || q.attainedIO;
      }
      return out;
    }
    case SigKind::Conv: {
      // lead(member) = Lambda(family) + lead(base), and ordinal addition
      // is continuous on the right.  Finitely-occurring family heads can
      // also carry the lead.
      const FamilyExpr& fam = t.family();
      bool famEnds = famEndsInfinitelyOften(fam);
      std::vector<std::string> famVars;
      fam.freeVars(famVars);
      TailProfile out;
      if (!hasEndLeaf(t.base())) {
        if (!famEverEnds(fam)) return {OrdVal{}, true};
        out = leadLimit(fam.member(0));
      } else if (famVars.empty() || !famEnds) {
        OrdVal lambda;
        if (famEnds) {
          TailProfile inner = famTail(fam);
          lambda = inner.attainedIO ? oadd(inner.leadSup, onat(1)) : inner.leadSup;
        }
        TailProfile baseL = leadLimit(t.base());
        out = {oadd(lambda, baseL.leadSup), baseL.attainedIO};
      } else {
        // The inner family varies with the outer index.
        TailProfile lam = famLambdaLimit(fam);
        if (!t.base().closed())
          throw std::invalid_argument("oracle: variable family and base");
        OrdVal rho = endSpace(t.base()).t[0].exp;
        if (rho.zero()) {
          out = lam;
        } else if (rho.finite()) {
          out = lam.attainedIO ? TailProfile{oadd(lam.leadSup, rho), true}
                               : TailProfile{lam.leadSup, false};
        } else if (lam.attainedIO) {
          out = TailProfile{oadd(lam.leadSup, rho), true};
        } else if (ocmp(lam.leadSup, opowOmega(rho.t[0].exp)) <= 0) {
          // Boosts absorbed by the base rank.
          out = TailProfile{rho, true};
        } else {
          throw std::invalid_argument("oracle: unattained boost onto infinite base");
        }
      }
      int heads = famPrefixLen(fam);
      for (int k = 0; k < heads; ++k) {
        Signature mk = fam.member(k);
        if (!hasEndLeaf(mk)) continue;
        TailProfile hk = leadLimit(mk);
        int c = ocmp(hk.leadSup, out.leadSup);
        if (c > 0) out = hk;
        else if (c == 0) out.attainedIO = out.attainedIO || hk.attainedIO;
      }
      return out;
    }
  }
  return {};
}

// Lead-rank profile of a family's infinite tail.
TailProfile famTail(const FamilyExpr& f) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const: {
      OrdVal xi = endSpace(f.constSig());
      return {xi.t.empty() ? OrdVal{} : xi.t[0].exp, true};
    }
    case K::Param:
      return leadLimit(f.paramTemplate());
    case K::Accum: {
      // Every earlier member persists inside later ones.
      OrdVal persistent;
      bool any = false;
      int cap = std::min(depthCap(), 12);
      for (int n = 0; n < cap; ++n) {
        OrdVal xi = memberXi(f.child(), n);
        if (xi.zero()) continue;
        if (!any || ocmp(xi.t[0].exp, persistent) > 0) persistent = xi.t[0].exp;
        any = true;
      }
      if (!famEndsInfinitelyOften(f.child())) return {persistent, true};
      TailProfile g = famTail(f.child());
      if (any && ocmp(persistent, g.leadSup) >= 0) return {persistent, true};
      return g;
    }
    case K::Stride:
      return famTail(f.child());
    case K::WedgeFam: {
      bool aEnds = famEndsInfinitelyOften(f.child(0));
      bool bEnds = famEndsInfinitelyOften(f.child(1));
      if (!aEnds && !bEnds) return {};
      if (!aEnds) return famTail(f.child(1));
      if (!bEnds) return famTail(f.child(0));
      TailProfile a = famTail(f.child(0));
      TailProfile b = famTail(f.child(1));
      int c = ocmp(a.leadSup, b.leadSup);
      if (c > 0) return a;
      if (c < 0) return b;
      return {a.leadSup, a.attainedIO || b.attainedIO};
    }
    case K::Prefix:
      return famTail(f.child());
  }
  return {};
}

// How many initial members must be summed concretely so that everything
// beyond is covered by the symbolic tail.
int famPrefixLen(const FamilyExpr& f) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const:
    case K::Param:
      return 2;
    case K::Accum:
    case K::Stride:
      return famPrefixLen(f.child()) + 1;
    case K::WedgeFam:
      return std::max(famPrefixLen(f.child(0)), famPrefixLen(f.child(1)));
    case K::Prefix:
      return static_cast<int>(f.prefixHead().size()) + famPrefixLen(f.child());
  }
  return 2;
}

// Real (order-type) space of a formal xi.
OrdVal realSpace(const OrdVal& xi) {
  if (xi.finite()) return xi;
  return oadd(xi, onat(1));
}

// Canonical-model level widths, computed on the oracle ordinal type.  The
// tree for w^g+1 is a spine with the fundamental-sequence branch at each
// level; the Cantor tree doubles per level.
OrdVal ofundamental(const OrdVal& g, std::uint64_t k) {
  OrdVal head;
  for (std::size_t i = 0; i + 1 < g.t.size(); ++i)
    head = oadd(head, opowOmega(g.t[i].exp, g.t[i].coeff));
  const auto& last = g.t.back();
  OrdVal lastLess = opowOmega(last.exp, last.coeff - 1);
  if (last.exp.finite()) {
    OrdVal em1 = onat(last.exp.finiteValue() - 1);
    return oadd(oadd(head, lastLess), omul(opowOmega(em1), onat(k ? k : 1)));
  }
  if (last.exp.t.back().exp.zero()) {
    // successor exponent: strip one
    OrdVal em1 = last.exp;
    if (--em1.t.back().coeff == 0) em1.t.pop_back();
    return oadd(oadd(head, lastLess), omul(opowOmega(em1), onat(k ? k : 1)));
  }
  return oadd(oadd(head, lastLess), opowOmega(ofundamental(last.exp, k)));
}

std::uint64_t otreeWidth(const OrdVal& g, std::uint64_t n) {
  if (n == 0 || g.zero()) return 1;
  std::uint64_t total = 1;
  for (std::uint64_t k = 0; k < n; ++k) {
    OrdVal branch;
    if (g.t.back().exp.zero()) {
      branch = g;
      if (--branch.t.back().coeff == 0) branch.t.pop_back();
    } else {
      branch = ofundamental(g, k);
    }
    total += otreeWidth(branch, n - k - 1);
  }
  return total;
}

std::uint64_t owidthAt(const Signature& base, std::uint64_t n) {
  switch (base.kind()) {
    case SigKind::Rose:
      return n == 0 ? 1 : 0;
    case SigKind::Cantor:
      return n == 0 ? 1 : (1ull << std::min<std::uint64_t>(n, 40));
    case SigKind::Ord:
      return otreeWidth(fromOrdinal(base.ordExpr().value()), n);
    case SigKind::Genus:
      return owidthAt(base.inner(), n);
    case SigKind::Wedge: {
      if (n == 0) return 1;
      std::uint64_t s = 0;
      for (const auto& p : base.parts()) s += owidthAt(p, n);
      return s;
    }
    default:
      return 1;
  }
}

// Strip the trailing +1 from a real compact space to get the formal xi.
OrdVal realToFormal(const OrdVal& real) {
  if (real.finite()) return real;
  OrdVal out = real;
  auto& last = out.t.back();
  if (last.exp.zero()) {
    if (--last.coeff == 0) out.t.pop_back();
  }
  return out;
}

OrdVal endSpace(const Signature& sig) {
  switch (sig.kind()) {
    case SigKind::Rose:
      throw EmptyEndSpaceError();
    case SigKind::Cantor:
      throw UncountableError();
    case SigKind::Ord: {
      if (!sig.ordExpr().closed())
        throw std::invalid_argument("endSpaceOrdinal: open signature");
      return opowOmega(fromOrdinal(sig.ordExpr().value()));
    }
    case SigKind::Genus:
      return endSpace(sig.inner());
    case SigKind::VeeUpTo:
      throw std::invalid_argument("endSpaceOrdinal: open signature");
    case SigKind::Wedge: {
      // Disjoint union: ascending ordinal sum absorbs dominated parts.
      std::vector<OrdVal> xs;
      for (const auto& p : sig.parts()) {
        if (!hasEndLeaf(p)) continue;
        xs.push_back(endSpace(p));
      }
      if (xs.empty()) throw EmptyEndSpaceError();
      std::sort(xs.begin(), xs.end(), [](const OrdVal& a, const OrdVal& b) {
        return ocmp(a, b) < 0;
      });
      OrdVal acc;
      for (const auto& x : xs) acc = oadd(acc, x);
      return acc;
    }
    case SigKind::Conv: {
      const FamilyExpr& f = sig.family();
      if (famHasCantorLeaf(f)) throw UncountableError();
      bool baseEnds = hasEndLeaf(sig.base());
      OrdVal baseXi = baseEnds ? endSpace(sig.base()) : OrdVal{};
      if (!famEverEnds(f)) {
        if (!baseEnds) throw EmptyEndSpaceError();
        return baseXi;  // loop decorations only
      }
      if (!baseEnds) {
        // Degenerate base (a rose): the family lands on one vertex.
        OrdVal xi0 = memberXi(f, 0);
        if (xi0.zero()) throw EmptyEndSpaceError();
        return xi0;
      }
      // One-time prefix junk sits near the root, one copy per vertex of
      // its level; only the family tail recurs cofinally along branches.
      int cap = std::min(std::max(famPrefixLen(f), 2), depthCap());
      OrdVal headSum;
      for (int n = 0; n < cap; ++n) {
        OrdVal m = realSpace(memberXi(f, n));
        if (m.zero()) continue;
        headSum =
            oadd(headSum, omul(m, onat(owidthAt(sig.base(), static_cast<std::uint64_t>(n)))));
      }
      OrdVal tailPow;  // w^Lambda, or 0 when the tail has no ends
      if (famEndsInfinitelyOften(f)) {
        TailProfile tail = famTail(f);
        OrdVal lambda = tail.leadSup;
        if (tail.attainedIO) lambda = oadd(lambda, onat(1));
        tailPow = opowOmega(lambda);
      }
      OrdVal real =
          oadd(headSum, omul(oadd(tailPow, onat(1)), realSpace(baseXi)));
      return realToFormal(real);
    }
  }
  throw std::logic_error("endSpace: unreachable");
}

}  // namespace

OrdVal endSpaceOrdinal(const Signature& sig) {
  if (hasCantorLeaf(sig)) throw UncountableError();
  return endSpace(sig);
}

OrdinalSpace cbDerivative(const OrdinalSpace& s) {
  // Isolated points vanish; each term divides by omega on the right:
  // w^b*c -> w^(b-1)*c for finite successor b, unchanged for infinite b.
  OrdVal out;
  for (const auto& t : s.xi.t) {
    if (t.exp.zero()) continue;
    if (t.exp.finite()) {
      out = oadd(out, opowOmega(onat(t.exp.finiteValue() - 1), t.coeff));
    } else {
      out = oadd(out, opowOmega(t.exp, t.coeff));
    }
  }
  return OrdinalSpace{out};
}

CbRank cbRankOfSpace(const OrdinalSpace& s) {
  OrdVal xi = s.xi;
  OrdVal rank;
  if (xi.zero()) throw EmptyEndSpaceError();
  while (!xi.finite()) {
    OrdVal step = cbDerivative(OrdinalSpace{xi}).xi;
    if (ocmp(step, xi) != 0) {
      xi = step;
      rank = oadd(rank, onat(1));
      continue;
    }
    // Stalled: all surviving exponents are infinite.  Jump by the least
    // exponent lambda; terms at lambda become finite.
    OrdVal lambda = xi.t.back().exp;
    for (const auto& t : xi.t)
      if (ocmp(t.exp, lambda) < 0) lambda = t.exp;
    OrdVal next;
    for (const auto& t : xi.t) {
      if (ocmp(t.exp, lambda) < 0) continue;
      next = oadd(next, opowOmega(oleftSub(lambda, t.exp), t.coeff));
    }
    xi = next;
    rank = oadd(rank, lambda);
  }
  return CbRank{rank, xi.finiteValue()};
}

bool typeRankCheck(const Signature& sig, const Ordinal& beta) {
  OrdVal xi = endSpaceOrdinal(sig);
  CbRank r = cbRankOfSpace(OrdinalSpace{xi});
  return ocmp(fromOrdinal(beta), r.alpha) <= 0;
}

namespace {

struct Census {
  bool uncountable = false;
  bool isolatedPlain = false;
  bool isolatedGenus = false;
  bool cantorPlain = false;   // Cantor-type ends not accumulated by genus
  bool cantorGenus = false;
  bool anyGenusEnds = false;
  bool anyPlainEnds = false;
  OrdVal plainRank;  // sup of observed countable plain ranks (lower bound)
};

void censusWalk(const Signature& s, bool underGenus, int depth, Census& c) {
  switch (s.kind()) {
    case SigKind::Rose:
      return;
    case SigKind::Cantor:
      c.uncountable = true;
      (underGenus ? c.cantorGenus : c.cantorPlain) = true;
      (underGenus ? c.anyGenusEnds : c.anyPlainEnds) = true;
      return;
    case SigKind::Ord: {
      (underGenus ? c.isolatedGenus : c.isolatedPlain) = true;
      (underGenus ? c.anyGenusEnds : c.anyPlainEnds) = true;
      if (!underGenus && s.ordExpr().closed()) {
        OrdVal r = fromOrdinal(s.ordExpr().value());
        if (ocmp(r, c.plainRank) > 0) c.plainRank = r;
      }
      return;
    }
    case SigKind::Genus:
      censusWalk(s.inner(), true, depth, c);
      return;
    case SigKind::Wedge:
    case SigKind::VeeUpTo:
      for (const auto& p : s.parts()) censusWalk(p, underGenus, depth, c);
      return;
    case SigKind::Conv: {
      censusWalk(s.base(), underGenus, depth - 1, c);
      if (depth <= 0) return;
      for (int n = 0; n < 4; ++n)
        censusWalk(s.family().member(n), underGenus, depth - 1, c);
      return;
    }
  }
}

}  // namespace

Tri smallEmbedCheck(const Signature& a, const Signature& b, int depth) {
  if (a == b) return Tri::Yes;
  Census ca, cb;
  censusWalk(a, false, depth, ca);
  censusWalk(b, false, depth, cb);
  if (ca.uncountable && !cb.uncountable) return Tri::No;
  if (ca.isolatedPlain && !cb.isolatedPlain && !cb.uncountable) return Tri::No;
  if (ca.anyGenusEnds && !cb.anyGenusEnds) return Tri::No;
  if (ca.cantorGenus && !cb.cantorGenus) return Tri::No;
  if (!ca.uncountable && !cb.uncountable) {
    // Exact on the genus-free countable fragment via MS ranks.
    if (!ca.anyGenusEnds && !cb.anyGenusEnds) {
      try {
        CbRank ra = cbRankOfSpace(OrdinalSpace{endSpaceOrdinal(a)});
        CbRank rb = cbRankOfSpace(OrdinalSpace{endSpaceOrdinal(b)});
        int c = ocmp(ra.alpha, rb.alpha);
        if (c > 0) return Tri::No;
        if (c < 0) return Tri::Yes;
        return ra.count <= rb.count ? Tri::Yes : Tri::No;
      } catch (const std::exception&) {
        return Tri::Unknown;
      }
    }
  }
  if (!ca.uncountable && cb.uncountable && !ca.anyGenusEnds) {
    // A countable tree embeds below any Cantor part only if its rank fits
    // inside observed countable content; stay conservative.
    return Tri::Unknown;
  }
  return Tri::Unknown;
}

}  // namespace endgraph::oracle
