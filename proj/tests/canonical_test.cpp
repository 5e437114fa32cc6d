#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "endgraph/canonical.hpp"
#include "endgraph/parser.hpp"
#include "endgraph/poset.hpp"
#include "gen.hpp"

using namespace endgraph;

namespace {
Signature S(const std::string& t) { return parseSignature(t); }
Signature N(const std::string& t) { return normalizeSig(S(t)); }
}  // namespace

TEST_CASE("ordinal tree collapses") {
  CHECK(N("(1) -> 1") == S("w+1"));
  CHECK(N("(w+1) -> 1") == S("w^2+1"));
  CHECK(N("(w^2+1) -> 1") == S("w^3+1"));
  CHECK(N("(w^w+1) -> 1") == S("w^(w+1)+1"));
  CHECK(N("{w^n+1} -> 1") == S("w^w+1"));
  CHECK(N("(w+1) v (w^2+1)") == S("w^2+1"));
  CHECK(N("(w^2+1) v (w^2+1)") == S("w^2+1 v w^2+1"));
}

TEST_CASE("cantor collapses") {
  CHECK(N("C -> 1") == S("C"));
  CHECK(N("C -> C") == S("C"));
  CHECK(N("(1 -> C) -> 1") == S("1 -> C"));
  CHECK(N("{C} -> C") == S("C"));
  CHECK(N("o(C) -> o(1)") == S("o(C)"));
}

TEST_CASE("genus rules") {
  CHECK(N("R1 -> 1") == S("o(1)"));
  CHECK(N("R1 -> C") == S("o(C)"));
  CHECK(N("R1 -> (w^2+1)") == S("o(w^2+1)"));
  CHECK(N("R1 -> o(1)") == S("o(1)"));
  CHECK(N("R1 -> (1 v C)") == S("o(1) v o(C)"));
  CHECK(N("o(o(1))") == S("o(1)"));
  CHECK(N("o(R2)") == S("R3"));
  CHECK(N("o(1 v C)") == S("o(1) v o(C)"));
  CHECK(N("o((w+1) -> 1)") == S("o(w^2+1)"));
  CHECK(N("{o(w^n+1)} -> 1") == S("o(w^w+1)"));
}

TEST_CASE("wedge ordering and units") {
  CHECK(N("o(1) v 1") == S("1 v o(1)"));
  CHECK(N("C v (w+1) v o(1)") == S("(w+1) v C v o(1)"));
  CHECK(N("R0 v 1") == S("1"));
  CHECK(N("R0 v R0") == S("R0"));
  CHECK(N("R2 v R3") == S("R5"));
  CHECK(N("C v C") == S("C"));
  CHECK(N("(1 -> C) v (1 -> C)") == S("1 -> C"));
}

TEST_CASE("absorption keeps isolated rays out of Cantor components") {
  // 1 v C is NOT a single Cantor component: the isolated end survives.
  Signature n = N("1 v C");
  REQUIRE(n.kind() == SigKind::Wedge);
  CHECK(n.parts().size() == 2);
  // But a countable tree absorbs into a component whose members carry it.
  CHECK(N("(w^2+1) v ((w^3+1) -> C)") == S("(w^3+1) -> C"));
  CHECK(N("1 v (1 -> C)") == S("1 -> C"));
}

TEST_CASE("degenerate conv bases") {
  CHECK(N("1 -> R0") == S("1"));
  CHECK(N("1 -> R2") == S("R2 v 1"));
  CHECK(N("{w^n+1} -> R0") == S("1"));  // member 0 only
}

TEST_CASE("stability verdicts") {
  CHECK(isStable(S("w^(w^2)+1")).value == Stability::Stable);
  CHECK(isStable(S("C")).value == Stability::Stable);
  CHECK(isStable(S("o(w+1)")).value == Stability::Stable);
  CHECK(isStable(S("1 -> C")).value == Stability::Stable);
  CHECK(isStable(S("{w^n+1} -> (1 v C)")).value == Stability::Stable);
  CHECK(isStable(S("{accum((w^n+1) -> o(1))} -> 1")).value == Stability::Stable);

  StabilityResult st = isStable(S("{(w^n+1) -> o(1)} -> o(1)"));
  CHECK(st.value == Stability::Unstable);
  REQUIRE(st.witness.has_value());
  CHECK(st.witness->reason == "InfinitelyManyIncomparableMaxTypes");
  CHECK(st.witness->incomparablePairs.size() >= 3);

  CHECK(isStable(S("{(w^n+1) -> C} -> 1")).value == Stability::Unstable);
}

TEST_CASE("the stress signature is stable") {
  const std::string text =
      "{{o(w^n+1)} -> Vee_{i=1..m}((1->C)->(w^(w^i)+1))} -> (1 v C)";
  CHECK(isStable(S(text)).value == Stability::Stable);
}

TEST_CASE("keystone halves are unstable") {
  // Even-indexed members appear once each; the odd side accumulates.
  const std::string half =
      "{stride(2,2,(w^n+1) -> o(1)) v accum(stride(2,1,(w^n+1) -> o(1)))} -> 1";
  StabilityResult st = isStable(S(half));
  CHECK(st.value == Stability::Unstable);
  const std::string otherHalf =
      "{stride(2,1,(w^n+1) -> o(1)) v accum(stride(2,2,(w^n+1) -> o(1)))} -> 1";
  CHECK(isStable(S(otherHalf)).value == Stability::Unstable);
}

TEST_CASE("wedge decomposition") {
  auto comps = wedgeDecomposition(S("(w^5+1) v C"));
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == S("w^5+1"));
  CHECK(comps[1] == S("C"));

  comps = wedgeDecomposition(S("C"));
  REQUIRE(comps.size() == 1);

  comps = wedgeDecomposition(S("1 v C v o(1)"));
  CHECK(comps.size() == 3);

  comps = wedgeDecomposition(S("(w+1) v (w^2+1)"));
  REQUIRE(comps.size() == 1);
  CHECK(comps[0] == S("w^2+1"));

  CHECK_THROWS_AS(wedgeDecomposition(S("{(w^n+1) -> o(1)} -> o(1)")),
                  UnstableInputError);
}

TEST_CASE("self-similarity") {
  CHECK(isSelfSimilar(S("C")).answer == Tri::Yes);
  CHECK(isSelfSimilar(S("1 v 1")).answer == Tri::No);
  CHECK(isSelfSimilar(S("1 v C")).answer == Tri::No);
  CHECK(isSelfSimilar(S("1 -> C")).answer == Tri::Yes);
  CHECK(isSelfSimilar(S("o(1)")).answer == Tri::Yes);
  CHECK(isSelfSimilar(S("w^w+1")).answer == Tri::Yes);
  CHECK(isSelfSimilar(S("R3")).answer == Tri::No);
}

TEST_CASE("max shells") {
  CHECK(maxShell(S("1 -> C")) == MaxShellKind::CantorMany);
  CHECK(maxShell(S("o(1)")) == MaxShellKind::GenusOne);
  CHECK(maxShell(S("w^w+1")) == MaxShellKind::One);
  CHECK(maxShell(S("o(C)")) == MaxShellKind::GenusCantor);
  CHECK(maxShell(S("(w^2+1) -> o(1)")) == MaxShellKind::GenusOne);
  CHECK(maxShell(S("{o(w^n+1)} -> C")) == MaxShellKind::GenusCantor);
}

TEST_CASE("isomorphism") {
  CHECK(isomorphic(S("(w+1) -> 1"), S("w^2+1")).answer == Tri::Yes);
  auto r = isomorphic(S("C"), S("1 v C"));
  CHECK(r.answer == Tri::No);
  r = isomorphic(S("o(1)"), S("1"));
  CHECK(r.answer == Tri::No);
  CHECK(isomorphic(S("(w^2+1) -> o(1)"), S("(w^3+1) -> o(1)")).answer == Tri::No);
  CHECK(isomorphic(S("(w^2+1) -> C"), S("(w^3+1) -> C")).answer == Tri::No);
  CHECK(isomorphic(S("o(1 v C)"), S("o(1) v o(C)")).answer == Tri::Yes);
}

TEST_CASE("cantor-max idempotence up to isomorphism") {
  for (const char* t : {"C", "1 -> C", "o(C)", "(w^2+1) -> C"}) {
    Signature w = S(t);
    CHECK(isomorphic(w, Signature::wedge({w, w})).answer == Tri::Yes);
  }
}

TEST_CASE("normalization is idempotent and permutation-invariant") {
  std::mt19937 rng(3301);
  for (int i = 0; i < 400; ++i) {
    Signature s = testgen::randomSignature(rng, 5, testgen::GenOpts{});
    Signature n = normalizeSig(s);
    CHECK(normalizeSig(n) == n);
    if (s.kind() == SigKind::Wedge) {
      auto parts = s.parts();
      std::shuffle(parts.begin(), parts.end(), rng);
      CHECK(normalizeSig(Signature::wedge(parts)) == n);
    }
  }
}

TEST_CASE("normalization terminates within a linear rewrite budget") {
  std::mt19937 rng(7212);
  for (int i = 0; i < 10000; ++i) {
    Signature s = testgen::randomSignature(rng, 4, testgen::GenOpts{});
    std::vector<RewriteStep> steps;
    Signature n = normalizeSig(s, &steps);
    CHECK(steps.size() <= 20 * s.size() + 50);
    CHECK(normalizeSig(n) == n);
  }
}

TEST_CASE("decomposition components are self-similar local structures") {
  std::mt19937 rng(2024);
  int sampled = 0;
  for (int i = 0; i < 60 && sampled < 30; ++i) {
    Signature s = testgen::randomStableSignature(rng, 3);
    if (!hasEnds(s)) continue;
    ++sampled;
    auto comps = wedgeDecomposition(s);
    for (const auto& comp : comps) {
      if (!hasEnds(comp)) continue;  // a rose bundle
      CHECK(isSelfSimilar(comp).answer == Tri::Yes);
    }
    // Pairwise distinct unless both carry a Cantor-type maximum (those
    // were merged already, so distinct survivors must not be isomorphic).
    for (std::size_t a = 0; a < comps.size(); ++a)
      for (std::size_t b = a + 1; b < comps.size(); ++b) {
        if (!hasEnds(comps[a]) || !hasEnds(comps[b])) continue;
        if (comps[a] == comps[b]) continue;  // equal singleton-max copies
        CHECK(isomorphic(comps[a], comps[b]).answer != Tri::Yes);
      }
  }
  CHECK(sampled >= 20);
}

TEST_CASE("isomorphic signatures share every computable invariant") {
  std::mt19937 rng(515);
  testgen::GenOpts opts;
  opts.countableOnly = true;
  opts.wantEnds = true;
  for (int i = 0; i < 150; ++i) {
    Signature a = testgen::randomSignature(rng, 3, opts);
    Signature b = testgen::randomSignature(rng, 3, opts);
    if (isomorphic(a, b).answer != Tri::Yes) continue;
    CHECK(genusClass(a) == genusClass(b));
    if (hasEnds(a)) CHECK(msForm(a) == msForm(b));
  }
}

TEST_CASE("normalization joins hand-rewritten variants") {
  std::mt19937 rng(97);
  int joined = 0;
  for (int i = 0; i < 300; ++i) {
    Signature s = testgen::randomSignature(rng, 4, testgen::GenOpts{});
    Signature n = normalizeSig(s);
    // Variant 1: expand a successor ordinal-tree leaf to a convergence.
    if (n.kind() == SigKind::Ord && n.ordExpr().value().isSuccessor()) {
      Ordinal a = n.ordExpr().value();
      auto terms = a.terms();
      Ordinal pred;
      for (std::size_t k = 0; k + 1 < terms.size(); ++k)
        pred = add(pred, Ordinal::omegaPow(terms[k].exponent, terms[k].coefficient));
      if (terms.back().coefficient > 1)
        pred = add(pred, Ordinal::natural(terms.back().coefficient - 1));
      Signature variant = Signature::conv(FamilyExpr::constant(Signature::ord(pred)),
                                          Signature::ord(Ordinal()));
      CHECK(normalizeSig(variant) == n);
      ++joined;
    }
    // Variant 2: duplicate the whole when its maximal type is Cantor.
    if (hasEnds(n) && n.kind() != SigKind::Wedge) {
      try {
        MaxShellKind k = maxShell(n);
        if (k == MaxShellKind::CantorMany || k == MaxShellKind::GenusCantor) {
          CHECK(normalizeSig(Signature::wedge({n, n})) == n);
          ++joined;
        }
      } catch (const std::exception&) {
      }
    }
    // Variant 3: genus wrapped outside vs distributed by hand.
    {
      Signature outside = Signature::genus(s);
      Signature inside =
          s.kind() == SigKind::Wedge
              ? Signature::wedge([&] {
                  std::vector<Signature> ps;
                  for (const auto& p : s.parts()) ps.push_back(Signature::genus(p));
                  return ps;
                }())
              : Signature::genus(s);
      CHECK(normalizeSig(outside) == normalizeSig(inside));
      ++joined;
    }
    // Variant 4: a convergence split by hand over a wedge base.
    if (s.kind() == SigKind::Conv && s.base().kind() == SigKind::Wedge &&
        s.base().parts().size() == 2) {
      FamilyExpr shifted = FamilyExpr::stride(1, 1, s.family());
      Signature split = Signature::wedge(
          {Signature::conv(s.family(), s.base().parts()[0]),
           Signature::conv(shifted, s.base().parts()[1])});
      CHECK(normalizeSig(split) == n);
      ++joined;
    }
  }
  CHECK(joined > 20);
}

namespace {
// Replace one successor ordinal-tree leaf by its convergence expansion.
bool expandOneOrd(Signature& s, std::mt19937& rng, int& budget) {
  if (budget <= 0) return false;
  switch (s.kind()) {
    case SigKind::Ord: {
      if (!s.ordExpr().closed()) return false;
      Ordinal a = s.ordExpr().value();
      if (!a.isSuccessor()) return false;
      if (std::uniform_int_distribution<int>(0, 2)(rng)) return false;
      auto ts = a.terms();
      Ordinal pred;
      for (std::size_t i = 0; i + 1 < ts.size(); ++i)
        pred = add(pred, Ordinal::omegaPow(ts[i].exponent, ts[i].coefficient));
      if (ts.back().coefficient > 1)
        pred = add(pred, Ordinal::natural(ts.back().coefficient - 1));
      s = Signature::conv(FamilyExpr::constant(Signature::ord(pred)),
                          Signature::ord(Ordinal()));
      --budget;
      return true;
    }
    case SigKind::Genus: {
      Signature inner = s.inner();
      if (expandOneOrd(inner, rng, budget)) {
        s = Signature::genus(inner);
        return true;
      }
      return false;
    }
    case SigKind::Wedge: {
      auto parts = s.parts();
      for (auto& p : parts) {
        if (expandOneOrd(p, rng, budget)) {
          s = Signature::wedge(parts);
          return true;
        }
      }
      return false;
    }
    case SigKind::Conv: {
      Signature base = s.base();
      if (expandOneOrd(base, rng, budget)) {
        s = Signature::conv(s.family(), base);
        return true;
      }
      return false;
    }
    default:
      return false;
  }
}
}  // namespace

TEST_CASE("leaf expansions rejoin the same normal form") {
  std::mt19937 rng(60221023);
  int joined = 0;
  for (int i = 0; i < 1200; ++i) {
    Signature s = testgen::randomSignature(rng, 4, testgen::GenOpts{});
    Signature n = normalizeSig(s);
    Signature variant = s;
    int budget = 3;
    bool changed = false;
    for (int r = 0; r < 4; ++r) changed = expandOneOrd(variant, rng, budget) || changed;
    if (!changed) continue;
    ++joined;
    CHECK(normalizeSig(variant) == n);
  }
  CHECK(joined > 100);
}

TEST_CASE("normalization preserves the characteristic data") {
  std::mt19937 rng(555);
  testgen::GenOpts opts;
  opts.countableOnly = true;
  opts.wantEnds = true;
  for (int i = 0; i < 500; ++i) {
    Signature s = testgen::randomSignature(rng, 4, opts);
    Signature n = normalizeSig(s);
    CHECK(genusClass(n) == genusClass(s));
    CHECK(isCountable(n) == isCountable(s));
    if (hasEnds(s)) {
      REQUIRE(hasEnds(n));
      CHECK(msForm(n) == msForm(s));
      EndStructure a = endStructure(s), b = endStructure(n);
      CHECK(a.isoPlain == b.isoPlain);
      CHECK(a.isoGenus == b.isoGenus);
      CHECK(a.anyGenus == b.anyGenus);
      CHECK(a.anyPlain == b.anyPlain);
    }
  }
}

TEST_CASE("ordered certificates") {
  CHECK(normalize(S("1 -> C")).orderedCertificate);
  CHECK(normalize(S("C")).orderedCertificate);
  CHECK(normalize(S("{w^n+1} -> (1 v C)")).orderedCertificate);
  CHECK(!normalize(S("{(w^n+1) -> o(1)} -> o(1)")).orderedCertificate);
}
