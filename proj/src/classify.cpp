#include "endgraph/classify.hpp"

#include <algorithm>
#include <set>

#include "endgraph/canonical.hpp"
#include "endgraph/semantics.hpp"

namespace endgraph {

const char* theoremTagName(TheoremTag t) {
  switch (t) {
    case TheoremTag::FiniteTree: return "FiniteTree";
    case TheoremTag::FiniteGenus: return "FiniteGenus";
    case TheoremTag::FiniteEndType: return "FiniteEndType";
    case TheoremTag::UniqueMaxEnd: return "UniqueMaxEnd";
    case TheoremTag::CantorTree: return "CantorTree";
    case TheoremTag::SelfSimilarNo: return "SelfSimilarNo";
    case TheoremTag::Babel1: return "Babel1";
    case TheoremTag::Babel2: return "Babel2";
    case TheoremTag::GcdFlux: return "GcdFlux";
    case TheoremTag::GeneralFlux: return "GeneralFlux";
    case TheoremTag::TreeCantorFactor: return "TreeCantorFactor";
    case TheoremTag::UnknownCategory1: return "UnknownCategory1";
    case TheoremTag::UnknownCategory2: return "UnknownCategory2";
    case TheoremTag::UnknownCategory3: return "UnknownCategory3";
  }
  return "?";
}

namespace {

Signature ord0() { return Signature::ord(Ordinal()); }

std::vector<Signature> topComponents(const Signature& sig) {
  Signature n = normalizeSig(sig);
  std::vector<Signature> out;
  if (n.kind() == SigKind::Wedge) {
    for (const auto& p : n.parts())
      if (hasEnds(p)) out.push_back(p);
  } else if (hasEnds(n)) {
    out.push_back(n);
  }
  return out;
}

bool cantorShell(const Signature& comp) {
  MaxShellKind k = maxShell(comp);
  return k == MaxShellKind::CantorMany || k == MaxShellKind::GenusCantor;
}

bool genusShell(const Signature& comp) {
  MaxShellKind k = maxShell(comp);
  return k == MaxShellKind::GenusOne || k == MaxShellKind::GenusCantor;
}

// lambda-type occurs strictly inside the component (not as its top).
Tri strictlyBelowTop(const Signature& comp, const Signature& lambda) {
  if (isomorphic(lambda, comp).answer == Tri::Yes) return Tri::No;
  return hasEndOfType(comp, lambda);
}

// Candidate gcd lambdas: the four minimal structures, ordinal types read
// off the per-component censuses, and structured member types.
std::vector<Signature> lambdaPool(const std::vector<Signature>& comps) {
  std::vector<Signature> pool;
  auto push = [&pool](const Signature& s) {
    for (const auto& p : pool)
      if (p == s) return;
    pool.push_back(s);
  };
  push(ord0());
  push(Signature::genus(ord0()));
  for (const auto& comp : comps) {
    TypeCensus c = typeCensus(comp);
    auto addRanks = [&](const std::vector<RankRange>& rs, bool genus) {
      for (const auto& r : rs) {
        std::vector<Ordinal> cands;
        if (r.hiIncl) cands.push_back(r.hi);
        if (r.hi.isSuccessor() || (r.hi.isFinite() && !r.hi.isZero())) {
          // one step below the bound
          auto ts = r.hi.terms();
          Ordinal pred;
          for (std::size_t i = 0; i + 1 < ts.size(); ++i)
            pred = add(pred, Ordinal::omegaPow(ts[i].exponent, ts[i].coefficient));
          if (ts.back().coefficient > 1)
            pred = add(pred, Ordinal::natural(ts.back().coefficient - 1));
          cands.push_back(pred);
        }
        for (auto& a : cands)
          push(genus ? Signature::genus(Signature::ord(a)) : Signature::ord(a));
      }
    };
    addRanks(c.plain, false);
    addRanks(c.genus, true);
    for (const auto& s : c.structured) {
      try {
        if (!cantorShell(s)) push(s);
      } catch (const std::exception&) {
      }
    }
    for (const auto& t : c.templates) {
      for (std::uint64_t j = 0; j < 3; ++j) {
        try {
          Signature m = normalizeSig(t.templ.substFree(t.var, t.k * j + t.r));
          if (hasEnds(m) && m.kind() != SigKind::Wedge && !cantorShell(m)) push(m);
        } catch (const std::exception&) {
        }
      }
    }
  }
  return pool;
}

// Is some non-maximal type strictly above lambda present in >= 2 of the
// given components (or, for sided checks, on both sides)?
struct AboveLambda {
  // component indices where some strict-upper type occurs
  std::set<std::size_t> ordRoute;                 // via ordinal ranks
  std::vector<std::pair<Signature, std::set<std::size_t>>> structuredRoute;
  bool unknown = false;
};

bool lambdaIsGenus(const Signature& lambda) {
  return lambda.kind() == SigKind::Genus;
}

AboveLambda typesStrictlyAbove(const std::vector<Signature>& comps,
                               const Signature& lambda) {
  AboveLambda out;
  bool genusKind = lambdaIsGenus(lambda);
  Ordinal beta;
  bool ordKind = false;
  if (lambda.kind() == SigKind::Ord) {
    ordKind = true;
    beta = lambda.ordExpr().value();
  } else if (genusKind && lambda.inner().kind() == SigKind::Ord) {
    ordKind = true;
    beta = lambda.inner().ordExpr().value();
  }
  for (std::size_t i = 0; i < comps.size(); ++i) {
    TypeCensus c = typeCensus(comps[i]);
    if (c.incomplete) out.unknown = true;
    if (ordKind) {
      // Non-maximal ordinal ranks above beta, by downward closure.
      Ordinal gamma = beta.succ();
      const auto& ranges = genusKind ? c.genus : c.plain;
      bool covered = false;
      for (const auto& r : ranges) {
        int cc = cmp(gamma, r.hi);
        if (cc < 0) covered = true;
        if (cc == 0 && r.hiIncl) {
          // gamma equals the bound: maximal only if the component top is
          // exactly that ordinal tree.
          Signature top = genusKind ? Signature::genus(Signature::ord(gamma))
                                    : Signature::ord(gamma);
          if (isomorphic(top, comps[i]).answer != Tri::Yes) covered = true;
        }
      }
      if (covered) out.ordRoute.insert(i);
    }
    // Structured types above lambda.
    for (const auto& s : c.structured) {
      if (isomorphic(s, comps[i]).answer == Tri::Yes) continue;  // the top
      Tri above = strictlyBelowTop(s, lambda);
      if (above == Tri::Unknown) out.unknown = true;
      if (above != Tri::Yes) continue;
      bool found = false;
      for (auto& [sig, where] : out.structuredRoute) {
        if (isomorphic(sig, s).answer == Tri::Yes) {
          where.insert(i);
          found = true;
          break;
        }
      }
      if (!found) out.structuredRoute.push_back({s, {i}});
    }
    if (!c.templates.empty()) {
      // Sampled template members above lambda count toward this component.
      for (const auto& t : c.templates) {
        for (std::uint64_t j = 0; j < 4; ++j) {
          try {
            Signature m = normalizeSig(t.templ.substFree(t.var, t.k * j + t.r));
            if (!hasEnds(m) || m.kind() == SigKind::Wedge) continue;
            if (isomorphic(m, comps[i]).answer == Tri::Yes) continue;
            Tri above = strictlyBelowTop(m, lambda);
            if (above == Tri::Unknown) out.unknown = true;
            if (above != Tri::Yes) continue;
            bool found = false;
            for (auto& [sig, where] : out.structuredRoute) {
              if (isomorphic(sig, m).answer == Tri::Yes) {
                where.insert(i);
                found = true;
                break;
              }
            }
            if (!found) out.structuredRoute.push_back({m, {i}});
          } catch (const std::exception&) {
            out.unknown = true;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

namespace {
FamilyExpr stripGenusFam(const FamilyExpr& f) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const: return FamilyExpr::constant(stripGenus(f.constSig()));
    case K::Param: return FamilyExpr::param(f.paramVar(), stripGenus(f.paramTemplate()));
    case K::Accum: return FamilyExpr::accum(stripGenusFam(f.child()));
    case K::Stride:
      return FamilyExpr::stride(f.strideK(), f.strideR(), stripGenusFam(f.child()));
    case K::WedgeFam:
      return FamilyExpr::wedgeFam(stripGenusFam(f.child(0)), stripGenusFam(f.child(1)));
    case K::Prefix: {
      std::vector<Signature> head;
      for (const auto& h : f.prefixHead()) head.push_back(stripGenus(h));
      return FamilyExpr::prefix(std::move(head), stripGenusFam(f.child()));
    }
  }
  return f;
}
}  // namespace

Signature stripGenus(const Signature& sig) {
  switch (sig.kind()) {
    case SigKind::Rose:
      return Signature::rose(0);
    case SigKind::Cantor:
    case SigKind::Ord:
      return sig;
    case SigKind::Genus:
      return stripGenus(sig.inner());
    case SigKind::Wedge:
    case SigKind::VeeUpTo: {
      std::vector<Signature> ps;
      for (const auto& p : sig.parts()) ps.push_back(stripGenus(p));
      if (sig.kind() == SigKind::VeeUpTo)
        return Signature::veeUpTo(sig.veeVar(), sig.veeUpper(), std::move(ps[0]));
      return Signature::wedge(std::move(ps));
    }
    case SigKind::Conv:
      return Signature::conv(stripGenusFam(sig.family()), stripGenus(sig.base()));
  }
  return sig;
}

std::optional<BabelKind> babelCheck(const Signature& sig) {
  std::vector<Signature> comps = topComponents(sig);
  if (comps.empty()) return std::nullopt;
  bool any1 = false, all1 = true, any2 = false, all2 = true;
  for (const auto& comp : comps) {
    bool cant = cantorShell(comp);
    Tri dom1 = hasEndOfType(comp, ord0());
    if (dom1 == Tri::Yes) {
      any1 = true;
      if (!cant) all1 = false;
    } else if (dom1 == Tri::Unknown) {
      all1 = false;  // stay sound
    }
    if (genusShell(comp)) {
      any2 = true;
      if (!cant) all2 = false;
    }
  }
  if (any1 && all1) return BabelKind::Babel1;
  if (any2 && all2) return BabelKind::Babel2;
  return std::nullopt;
}

std::optional<GcdWitness> gcdWitnessSearch(const Signature& sig) {
  if (isStable(sig).value == Stability::Unstable) return std::nullopt;
  std::vector<Signature> comps = topComponents(sig);
  if (comps.size() < 2) return std::nullopt;

  // Loop-marker gcd: two genus-marked maxima, loops nowhere else, and no
  // non-maximal genus type shared between the two sides.
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      if (!genusShell(comps[i]) || !genusShell(comps[j])) continue;
      bool othersPlain = true;
      for (std::size_t k = 0; k < comps.size(); ++k) {
        if (k == i || k == j) continue;
        if (endStructure(comps[k]).anyGenus) othersPlain = false;
      }
      if (!othersPlain) continue;
      // Non-maximal genus types must not straddle the two components.
      AboveLambda above = typesStrictlyAbove({comps[i], comps[j]},
                                             Signature::genus(ord0()));
      bool straddle = above.unknown;
      if (above.ordRoute.size() > 1) straddle = true;
      for (const auto& [s, where] : above.structuredRoute)
        if (where.size() > 1) straddle = true;
      // The minimal genus type itself must also be one-sided unless it is
      // the maxima themselves.
      Tri gi = strictlyBelowTop(comps[i], Signature::genus(ord0()));
      Tri gj = strictlyBelowTop(comps[j], Signature::genus(ord0()));
      if (gi == Tri::Yes && gj == Tri::Yes) straddle = true;
      if (gi == Tri::Unknown || gj == Tri::Unknown) straddle = true;
      if (straddle) continue;
      GcdWitness w;
      w.mu1 = comps[i];
      w.mu2 = comps[j];
      w.loopMark = true;
      w.lambda = Signature::rose(1);
      w.sideCheck = "loops answer to exactly one of the two genus maxima";
      return w;
    }
  }

  std::vector<Signature> pool = lambdaPool(comps);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      for (const auto& lambda : pool) {
        if (strictlyBelowTop(comps[i], lambda) != Tri::Yes) continue;
        if (strictlyBelowTop(comps[j], lambda) != Tri::Yes) continue;
        // lambda must answer to at most the chosen pair.
        bool leak = false;
        for (std::size_t k = 0; k < comps.size() && !leak; ++k) {
          if (k == i || k == j) continue;
          if (hasEndOfType(comps[k], lambda) != Tri::No) leak = true;
        }
        if (leak) continue;
        // Every non-maximal type strictly above lambda answers to exactly
        // one of the two.
        AboveLambda above = typesStrictlyAbove(comps, lambda);
        if (above.unknown) continue;
        if (above.ordRoute.size() > 1) continue;
        bool shared = false;
        for (const auto& [s, where] : above.structuredRoute)
          if (where.size() > 1) shared = true;
        if (shared) continue;
        GcdWitness w;
        w.mu1 = comps[i];
        w.mu2 = comps[j];
        w.lambda = lambda;
        w.sideCheck = "types above " + lambda.str() + " answer to one maximum only";
        return w;
      }
    }
  }

  // Two equivalent ends inside one Cantor-type cluster also form a pair:
  // then everything at or above lambda may answer only to that cluster.
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (!cantorShell(comps[i])) continue;
    for (const auto& lambda : pool) {
      if (strictlyBelowTop(comps[i], lambda) != Tri::Yes) continue;
      bool leak = false;
      for (std::size_t k = 0; k < comps.size() && !leak; ++k) {
        if (k == i) continue;
        if (hasEndOfType(comps[k], lambda) != Tri::No) leak = true;
      }
      if (leak) continue;
      AboveLambda above = typesStrictlyAbove(comps, lambda);
      if (above.unknown) continue;
      bool outside = false;
      for (std::size_t k : above.ordRoute)
        if (k != i) outside = true;
      for (const auto& [s, where] : above.structuredRoute)
        for (std::size_t k : where)
          if (k != i) outside = true;
      if (outside) continue;
      GcdWitness w;
      w.mu1 = comps[i];
      w.mu2 = comps[i];
      w.lambda = lambda;
      w.sideCheck =
          "within the Cantor-type cluster: everything above " + lambda.str() +
          " answers to that cluster alone";
      return w;
    }
  }
  return std::nullopt;
}

std::optional<FluxSplit> fluxSplittingSearch(const Signature& sig) {
  if (isStable(sig).value != Stability::Stable) return std::nullopt;
  std::vector<Signature> comps = topComponents(sig);
  if (comps.size() < 2 || comps.size() > 10) return std::nullopt;
  std::vector<std::size_t> singletons;
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (!cantorShell(comps[i])) singletons.push_back(i);

  std::vector<Signature> pool = lambdaPool(comps);
  for (std::size_t a = 0; a < singletons.size(); ++a) {
    for (std::size_t b = a + 1; b < singletons.size(); ++b) {
      std::size_t i = singletons[a], j = singletons[b];
      for (const auto& lambda : pool) {
        if (strictlyBelowTop(comps[i], lambda) != Tri::Yes) continue;
        if (strictlyBelowTop(comps[j], lambda) != Tri::Yes) continue;
        AboveLambda above = typesStrictlyAbove(comps, lambda);
        if (above.unknown) continue;
        // Try the bipartitions of the remaining components.
        std::vector<std::size_t> rest;
        for (std::size_t k = 0; k < comps.size(); ++k)
          if (k != i && k != j) rest.push_back(k);
        std::uint64_t picks = 1ull << rest.size();
        for (std::uint64_t mask = 0; mask < picks; ++mask) {
          std::set<std::size_t> side1{i}, side2{j};
          for (std::size_t r = 0; r < rest.size(); ++r)
            (mask >> r & 1 ? side1 : side2).insert(rest[r]);
          auto oneSided = [&](const std::set<std::size_t>& where) {
            bool in1 = false, in2 = false;
            for (std::size_t w : where) {
              if (side1.count(w)) in1 = true;
              if (side2.count(w)) in2 = true;
            }
            return !(in1 && in2);
          };
          bool ok = oneSided(above.ordRoute);
          for (const auto& [s, where] : above.structuredRoute)
            if (!oneSided(where)) ok = false;
          // Maximal types (including Cantor components) stay whole sides
          // by construction of the component split.
          if (!ok) continue;
          FluxSplit out;
          out.nu1 = comps[i];
          out.nu2 = comps[j];
          out.lambda = lambda;
          for (std::size_t s1 : side1) out.side1.push_back(comps[s1]);
          for (std::size_t s2 : side2) out.side2.push_back(comps[s2]);
          return out;
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

Verdict unknownVerdict(const Signature& sig, Stability st) {
  Verdict v;
  v.answer = Tri::Unknown;
  if (st != Stability::Stable) {
    v.tag = TheoremTag::UnknownCategory3;
    v.witness.emplace_back("category", "unstable or unresolved stability");
    return v;
  }
  // Category 2 when an end type sits below two distinct maxima; else 1.
  std::vector<Signature> comps = topComponents(sig);
  std::vector<Signature> pool = lambdaPool(comps);
  for (const auto& lambda : pool) {
    int below = 0;
    for (const auto& comp : comps)
      if (strictlyBelowTop(comp, lambda) == Tri::Yes) ++below;
    if (below >= 2) {
      v.tag = TheoremTag::UnknownCategory2;
      v.witness.emplace_back("category", "ascending chains below two maxima");
      v.witness.emplace_back("commonType", lambda.str());
      return v;
    }
  }
  v.tag = TheoremTag::UnknownCategory1;
  v.witness.emplace_back("category", "no end or loop dominated by two maxima");
  return v;
}

}  // namespace

namespace {
Verdict classifyMapsImpl(const Signature& sig);
}  // namespace

Verdict classifyMapsDCC(const Signature& sig) {
  try {
    return classifyMapsImpl(sig);
  } catch (const UnsupportedFamily& e) {
    Verdict v;
    v.answer = Tri::Unknown;
    v.tag = TheoremTag::UnknownCategory3;
    v.witness.emplace_back("category", "family schema outside the rank calculus");
    v.witness.emplace_back("detail", e.what());
    return v;
  }
}

namespace {
Verdict classifyMapsImpl(const Signature& sig) {
  Verdict v;
  Signature n = normalizeSig(sig);
  v.trace.push_back("normal form: " + n.str());

  // (1) finite graphs: only trees have trivial (hence dense) dynamics.
  if (!hasEnds(n)) {
    if (n.kind() == SigKind::Rose && n.roseLoops() > 0) {
      v.answer = Tri::No;
      v.tag = TheoremTag::FiniteGenus;
      v.witness.emplace_back("genus", std::to_string(n.roseLoops()));
      return v;
    }
    v.answer = Tri::Yes;
    v.tag = TheoremTag::FiniteTree;
    return v;
  }

  // (2) finite positive genus.
  GenusValue g = genusClass(n);
  if (!g.infinite && g.count > 0) {
    v.answer = Tri::No;
    v.tag = TheoremTag::FiniteGenus;
    v.witness.emplace_back("genus", std::to_string(g.count));
    return v;
  }

  StabilityResult st = isStable(n);
  if (st.value != Stability::Stable) {
    Verdict u = unknownVerdict(n, st.value);
    if (st.witness) u.witness.emplace_back("unstableAt", st.witness->path);
    u.trace = v.trace;
    return u;
  }

  // (3) a maximal end type of finite size > 1.
  EndTypeReport types = maximalEndTypes(n);
  for (const auto& [t, m] : types.types) {
    if (!m.cantorMany && m.count >= 2) {
      v.answer = Tri::No;
      v.tag = TheoremTag::FiniteEndType;
      v.witness.emplace_back("endType", t.sig.str());
      v.witness.emplace_back("size", std::to_string(m.count));
      return v;
    }
  }

  // (4) self-similar classification.
  SelfSimilarVerdict ss = isSelfSimilar(n);
  if (ss.answer == Tri::Yes) {
    if (n == Signature::cantor()) {
      v.answer = Tri::Yes;
      v.tag = TheoremTag::CantorTree;
      return v;
    }
    MaxShellKind shell = maxShell(n);
    if (shell == MaxShellKind::One || shell == MaxShellKind::GenusOne) {
      v.answer = Tri::Yes;
      v.tag = TheoremTag::UniqueMaxEnd;
      return v;
    }
    v.answer = Tri::No;
    if (auto b = babelCheck(n)) {
      v.tag = b == BabelKind::Babel1 ? TheoremTag::Babel1 : TheoremTag::Babel2;
      v.witness.emplace_back("maximalShell", maxShellName(shell));
    } else {
      v.tag = TheoremTag::SelfSimilarNo;
    }
    return v;
  }

  // (5) a Cantor factor of a tree splits off as a direct factor.
  if (g.zero()) {
    std::vector<Signature> comps = topComponents(n);
    std::vector<Signature> rest;
    bool sawCantor = false;
    for (const auto& comp : comps) {
      if (comp == Signature::cantor() && !sawCantor) {
        sawCantor = true;
        continue;
      }
      rest.push_back(comp);
    }
    if (sawCantor && !rest.empty()) {
      bool cantorFree = true;
      for (const auto& comp : rest)
        if (hasEndOfType(comp, Signature::cantor()) != Tri::No) cantorFree = false;
      if (cantorFree) {
        Verdict inner = classifyMapsDCC(Signature::wedge(rest));
        inner.trace.insert(inner.trace.begin(),
                           "Cantor factor split off; classifying " +
                               Signature::wedge(rest).str());
        if (inner.answer == Tri::Yes) {
          inner.witness.emplace_back("via", "TreeCantorFactor");
          inner.tag = TheoremTag::TreeCantorFactor;
        }
        return inner;
      }
    }
  }

  // (6) a gcd of two maximal ends which is not of Cantor type.
  if (auto w = gcdWitnessSearch(n)) {
    v.answer = Tri::No;
    v.tag = TheoremTag::GcdFlux;
    v.witness.emplace_back("mu1", w->mu1.str());
    v.witness.emplace_back("mu2", w->mu2.str());
    v.witness.emplace_back("lambda", w->loopMark ? "R1" : w->lambda.str());
    v.witness.emplace_back("sideCheck", w->sideCheck);
    return v;
  }

  // (7) every maximal end over the minimal plain (or genus) type is of
  // Cantor type.
  if (auto b = babelCheck(n)) {
    v.answer = Tri::No;
    v.tag = b == BabelKind::Babel1 ? TheoremTag::Babel1 : TheoremTag::Babel2;
    return v;
  }

  // (8) generalized flux splitting.
  if (auto s = fluxSplittingSearch(n)) {
    v.answer = Tri::No;
    v.tag = TheoremTag::GeneralFlux;
    v.witness.emplace_back("nu1", s->nu1.str());
    v.witness.emplace_back("nu2", s->nu2.str());
    v.witness.emplace_back("lambda", s->loopMark ? "R1" : s->lambda.str());
    std::string s1, s2;
    for (const auto& c : s->side1) s1 += (s1.empty() ? "" : " | ") + c.str();
    for (const auto& c : s->side2) s2 += (s2.empty() ? "" : " | ") + c.str();
    v.witness.emplace_back("side1", s1);
    v.witness.emplace_back("side2", s2);
    return v;
  }

  // (9) open.
  Verdict u = unknownVerdict(n, Stability::Stable);
  u.trace = v.trace;
  return u;
}
}  // namespace

Verdict classifyHomeoDCC(const Signature& sig) try {
  Verdict v;
  Signature n = normalizeSig(sig);
  GenusValue g = genusClass(n);
  if (!g.infinite) {
    // Finite genus: the homeomorphism group is the mapping class group of
    // a spanning tree.
    Verdict inner = classifyMapsDCC(stripGenus(n));
    inner.trace.insert(inner.trace.begin(), "finite genus: spanning tree " +
                                                normalizeSig(stripGenus(n)).str());
    return inner;
  }
  EndStructure es = endStructure(n);
  if (es.anyEnds && !es.anyPlain) {
    // Every end is accumulated by genus: homeomorphisms of the pair are
    // exactly the homeomorphisms of the underlying tree's end space.
    Verdict inner = classifyMapsDCC(stripGenus(n));
    inner.trace.insert(inner.trace.begin(),
                       "all ends genus-marked: reduces to " +
                           normalizeSig(stripGenus(n)).str());
    return inner;
  }
  Verdict maps = classifyMapsDCC(n);
  if (maps.answer == Tri::Yes) {
    maps.trace.insert(maps.trace.begin(), "pushforward of a dense class");
    return maps;
  }
  if (maps.answer == Tri::Unknown) {
    maps.trace.insert(maps.trace.begin(), "open for the mapping class group too");
    return maps;
  }
  if (maps.answer == Tri::No) {
    bool endBased =
        maps.tag == TheoremTag::FiniteEndType || maps.tag == TheoremTag::Babel1 ||
        (maps.tag == TheoremTag::GcdFlux && [&] {
          for (const auto& [k, val] : maps.witness)
            if (k == "lambda") return val != "R1";
          return false;
        }());
    if (endBased) {
      maps.trace.insert(maps.trace.begin(), "end-based obstruction survives");
      return maps;
    }
  }
  v.answer = Tri::Unknown;
  v.tag = TheoremTag::UnknownCategory1;
  v.witness.emplace_back("category",
                         "no end-based obstruction and no pushforward applies");
  return v;
} catch (const UnsupportedFamily& e) {
  Verdict v;
  v.answer = Tri::Unknown;
  v.tag = TheoremTag::UnknownCategory3;
  v.witness.emplace_back("category", "family schema outside the rank calculus");
  v.witness.emplace_back("detail", e.what());
  return v;
}

}  // namespace endgraph
