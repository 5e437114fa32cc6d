#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "endgraph/ordinal.hpp"
#include "endgraph/parser.hpp"

using namespace endgraph;

namespace {

Ordinal O(const std::string& s) { return parseOrdinal(s); }

// Random CNF ordinal with exponent depth bounded by d.
Ordinal randomOrdinal(std::mt19937& rng, int d) {
  std::uniform_int_distribution<int> nterms(0, 3);
  std::uniform_int_distribution<int> coeff(1, 4);
  int k = nterms(rng);
  if (d == 0 || k == 0) return Ordinal::natural(std::uniform_int_distribution<int>(0, 9)(rng));
  std::vector<Ordinal> exps;
  for (int i = 0; i < k; ++i) exps.push_back(randomOrdinal(rng, d - 1));
  std::sort(exps.begin(), exps.end(), [](const Ordinal& a, const Ordinal& b) { return b < a; });
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
  Ordinal acc;
  for (const auto& e : exps) acc = add(acc, Ordinal::omegaPow(e, coeff(rng)));
  return acc;
}

}  // namespace

TEST_CASE("cmp basics") {
  CHECK(cmp(O("1"), O("w")) == -1);
  CHECK(cmp(O("w"), O("1")) == 1);
  Ordinal a = O("w^2*3+w*7+4");
  CHECK(cmp(a, a) == 0);
  CHECK(cmp(O("w^w"), O("w^2*5+w*3")) == 1);
  CHECK(cmp(O("0"), O("1")) == -1);
}

TEST_CASE("add basics") {
  CHECK(add(O("1"), O("w")) == O("w"));
  CHECK(add(O("w"), O("1")) == O("w+1"));
  CHECK(add(O("w^2"), O("w^2")) == O("w^2*2"));
  CHECK(add(O("w^2+w*3"), O("w*2+5")) == O("w^2+w*5+5"));
  CHECK(add(O("w+3"), O("w^2")) == O("w^2"));
}

TEST_CASE("printing is canonical and parseable") {
  CHECK(O("w^2*3+w*7+4").str() == "w^2*3+w*7+4");
  CHECK(O("w^(w^2+1)+1").str() == "w^(w^2+1)+1");
  CHECK(O("0").str() == "0");
  CHECK(O("w^w").str() == "w^w");
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    Ordinal x = randomOrdinal(rng, 3);
    CHECK(parseOrdinal(x.str()) == x);
  }
}

TEST_CASE("succ / isLimit") {
  CHECK(O("w*2").isLimit());
  CHECK(!O("w+1").isLimit());
  CHECK(O("w").succ() == O("w+1"));
  CHECK(O("0").succ() == O("1"));
  CHECK(!Ordinal().isLimit());
  CHECK(!Ordinal().isSuccessor());
}

TEST_CASE("msNormal returns the leading CNF term") {
  MsPair p = msNormal(O("w^2*3+w*7+4"));
  CHECK(p.alpha == O("2"));
  CHECK(p.count == 3);
  p = msNormal(O("5"));
  CHECK(p.alpha == O("0"));
  CHECK(p.count == 5);
  p = msNormal(O("w^w"));
  CHECK(p.alpha == O("w"));
  CHECK(p.count == 1);
  CHECK_THROWS(msNormal(Ordinal()));
}

TEST_CASE("cmp is a total order on random pairs") {
  std::mt19937 rng(11);
  std::vector<Ordinal> xs;
  for (int i = 0; i < 60; ++i) xs.push_back(randomOrdinal(rng, 3));
  // antisymmetry + trichotomy
  for (const auto& a : xs)
    for (const auto& b : xs) {
      int ab = cmp(a, b), ba = cmp(b, a);
      CHECK(ab == -ba);
    }
  // transitivity on sampled triples
  std::uniform_int_distribution<std::size_t> pick(0, xs.size() - 1);
  for (int i = 0; i < 10000; ++i) {
    const Ordinal &a = xs[pick(rng)], &b = xs[pick(rng)], &c = xs[pick(rng)];
    if (cmp(a, b) <= 0 && cmp(b, c) <= 0) CHECK(cmp(a, c) <= 0);
  }
}

TEST_CASE("add properties") {
  std::mt19937 rng(13);
  for (int i = 0; i < 2000; ++i) {
    Ordinal a = randomOrdinal(rng, 2), b = randomOrdinal(rng, 2), c = randomOrdinal(rng, 2);
    CHECK(add(add(a, b), c) == add(a, add(b, c)));
    CHECK(add(a, Ordinal()) == a);
    CHECK(a <= add(a, b));
    if (b <= c) CHECK(add(a, b) <= add(a, c));
  }
}

TEST_CASE("timesNat") {
  CHECK(O("w^2+w*3").timesNat(4) == O("w^2*4+w*3"));
  CHECK(O("5").timesNat(3) == O("15"));
  CHECK(O("w").timesNat(0) == O("0"));
}

TEST_CASE("ordinal expressions: subst, monotone, sup") {
  OrdinalExpr t = parseOrdinalExpr("n");
  CHECK(t.monotone());
  auto s = t.sup();
  CHECK(s.bound == O("w"));
  CHECK(!s.attained);

  t = parseOrdinalExpr("3");
  s = t.sup();
  CHECK(s.bound == O("3"));
  CHECK(s.attained);

  t = parseOrdinalExpr("w^n");
  CHECK(t.eval(2) == O("w^2"));
  s = t.sup();
  CHECK(s.bound == O("w^w"));
  CHECK(!s.attained);

  t = parseOrdinalExpr("w^2+n");
  CHECK(t.monotone());
  s = t.sup();
  CHECK(s.bound == O("w^2+w"));
  CHECK(!s.attained);

  t = parseOrdinalExpr("w*n");
  CHECK(t.monotone());
  s = t.sup();
  CHECK(s.bound == O("w^2"));
  CHECK(!s.attained);

  t = parseOrdinalExpr("w^(w^n)");
  CHECK(t.eval(1) == O("w^w"));
  s = t.sup();
  CHECK(s.bound == Ordinal::omegaPow(O("w^w")));

  // n in a non-final addend of an infinite sum is rejected.
  t = parseOrdinalExpr("n+w");
  CHECK(!t.monotone());
  CHECK_THROWS(t.sup());

  // ...but purely finite sums with the variable anywhere are fine.
  t = parseOrdinalExpr("n+5");
  CHECK(t.monotone());
  CHECK(t.eval(3) == O("8"));
  s = t.sup();
  CHECK(s.bound == O("w"));
  CHECK(!s.attained);
}

TEST_CASE("sup dominates sampled members; nothing in between at samples") {
  std::vector<std::string> exprs = {"n", "w^n", "w^2+n", "w*n", "w^(w^n)", "w^n*3", "7"};
  std::mt19937 rng(2025);
  std::vector<Ordinal> universe;
  for (int i = 0; i < 300; ++i) universe.push_back(randomOrdinal(rng, 3));
  for (const auto& se : exprs) {
    OrdinalExpr t = parseOrdinalExpr(se);
    auto s = t.sup();
    bool hit = false;
    for (std::uint64_t k = 0; k <= 100; ++k) {
      Ordinal v = t.eval(k);
      CHECK(v <= s.bound);
      if (v == s.bound) hit = true;
    }
    CHECK(hit == s.attained);
    // No ordinal in the test universe lies strictly between every member
    // and the returned sup.
    for (const auto& cand : universe) {
      if (!(cand < s.bound)) continue;
      bool aboveAll = true;
      for (std::uint64_t k = 0; k <= 100 && aboveAll; ++k)
        if (!(t.eval(k) < cand)) aboveAll = false;
      CHECK(!aboveAll);
    }
  }
}
