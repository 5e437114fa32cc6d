#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "endgraph/parser.hpp"
#include "gen.hpp"

using namespace endgraph;

TEST_CASE("atoms") {
  CHECK(parseSignature("R0") == Signature::rose(0));
  CHECK(parseSignature("R3") == Signature::rose(3));
  CHECK(parseSignature("C") == Signature::cantor());
  CHECK(parseSignature("1") == Signature::ord(Ordinal()));
  CHECK(parseSignature("w+1") == Signature::ord(Ordinal::natural(1)));
  CHECK(parseSignature("w^2+1") == Signature::ord(Ordinal::natural(2)));
  CHECK(parseSignature("w^(w^2+1)+1") ==
        Signature::ord(add(Ordinal::omegaPow(Ordinal::natural(2)), Ordinal::natural(1))));
}

TEST_CASE("figure examples") {
  Signature s = parseSignature("1 v o(1)");
  REQUIRE(s.kind() == SigKind::Wedge);
  CHECK(s.parts()[0] == Signature::ord(Ordinal()));
  CHECK(s.parts()[1] == Signature::genus(Signature::ord(Ordinal())));

  s = parseSignature("{w^n+1} -> (1 v C)");
  REQUIRE(s.kind() == SigKind::Conv);
  CHECK(s.family().kind() == FamilyExpr::Kind::Param);
  CHECK(s.family().member(3) == Signature::ord(Ordinal::natural(3)));
  CHECK(s.base() == Signature::wedge({Signature::ord(Ordinal()), Signature::cantor()}));

  s = parseSignature("1 -> C");
  REQUIRE(s.kind() == SigKind::Conv);
  CHECK(s.family().kind() == FamilyExpr::Kind::Const);
  CHECK(s.base() == Signature::cantor());

  s = parseSignature("(w+1) v C v o(1)");
  REQUIRE(s.kind() == SigKind::Wedge);
  CHECK(s.parts().size() == 3);
}

TEST_CASE("unicode aliases") {
  CHECK(parseSignature("1 \xE2\x88\xA8 o(1)") == parseSignature("1 v o(1)"));
  CHECK(parseSignature("1 \xE2\x86\x92 C") == parseSignature("1 -> C"));
  CHECK(parseSignature("\xCF\x89^2+1") == parseSignature("w^2+1"));
  CHECK(parseSignature("{\xCF\x89^n+1} \xE2\x86\x92 (1 \xE2\x88\xA8 C)") ==
        parseSignature("{w^n+1} -> (1 v C)"));
}

TEST_CASE("family combinators") {
  Signature s = parseSignature("{accum(w^n+1)} -> 1");
  const FamilyExpr& f = s.family();
  REQUIRE(f.kind() == FamilyExpr::Kind::Accum);
  CHECK(f.member(2) == Signature::wedge({Signature::ord(Ordinal()),
                                         Signature::ord(Ordinal::natural(1)),
                                         Signature::ord(Ordinal::natural(2))}));

  s = parseSignature("{stride(2,1,w^n+1)} -> 1");
  CHECK(s.family().member(3) == Signature::ord(Ordinal::natural(7)));

  s = parseSignature("{[C; 1]} -> 1");
  CHECK(s.family().member(0) == Signature::cantor());
  CHECK(s.family().member(1) == Signature::ord(Ordinal()));
  CHECK(s.family().member(5) == Signature::ord(Ordinal()));

  s = parseSignature("{C v w^n+1} -> 1");
  CHECK(s.family().member(2) ==
        Signature::wedge({Signature::cantor(), Signature::ord(Ordinal::natural(2))}));
}

TEST_CASE("the stress signature parses") {
  const std::string text =
      "{{o(w^n+1)} -> Vee_{i=1..m}((1->C)->(w^(w^i)+1))} -> (1 v C)";
  Signature s = parseSignature(text);
  REQUIRE(s.kind() == SigKind::Conv);
  REQUIRE(s.family().kind() == FamilyExpr::Kind::Param);
  // Member 2 expands the bounded wedge to two factors.
  Signature m2 = s.family().member(2);
  REQUIRE(m2.kind() == SigKind::Conv);
  REQUIRE(m2.base().kind() == SigKind::Wedge);
  CHECK(m2.base().parts().size() == 2);
  CHECK(m2.closed());
  // Member 1 collapses the singleton wedge.
  Signature m1 = s.family().member(1);
  REQUIRE(m1.base().kind() == SigKind::Conv);
}

TEST_CASE("diagnostics carry byte offsets") {
  CHECK_THROWS_AS(parseSignature("o()"), ParseError);
  CHECK_THROWS_AS(parseSignature("w^2"), ParseError);
  CHECK_THROWS_AS(parseSignature("1 v"), ParseError);
  CHECK_THROWS_AS(parseSignature("{w^n+1} 1"), ParseError);
  CHECK_THROWS_AS(parseSignature("w^n+1"), ParseError);  // open at top level
  CHECK_THROWS_AS(parseSignature("{w^(n+m)+1} -> 1"), ParseError);  // two vars in one member
  try {
    parseSignature("1 v @");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("print/parse round trip on fixed strings") {
  for (const char* t : {
           "R0", "R3", "C", "1", "w+1", "w^2+1", "w^w+1", "w^(w^2+1)+1",
           "1 v o(1)", "(w+1) v C v o(1)", "1 -> C", "C -> 1",
           "{w^n+1} -> (1 v C)", "(1 -> C) -> 1", "o(1 v C)",
           "{accum((w^n+1) -> o(1))} -> 1", "{stride(2,0,w^n+1)} -> C",
           "{[C, o(1); w^n+1]} -> 1", "(w^2+1) v (1 -> C) v (1 -> o(1))",
       }) {
    Signature s = parseSignature(t);
    Signature t2 = parseSignature(s.str());
    CHECK(t2 == s);
  }
}

TEST_CASE("print/parse round trip on generated signatures") {
  std::mt19937 rng(23);
  for (int i = 0; i < 800; ++i) {
    Signature s = testgen::randomSignature(rng, 5, testgen::GenOpts{});
    Signature back = parseSignature(s.str());
    CHECK(back == s);
  }
}

TEST_CASE("byte soup either parses cleanly or fails with a sane offset") {
  std::mt19937 rng(123);
  const std::string alphabet = "RC1wovn(){}[]->+*^ ;,.0123456789accumstride";
  std::uniform_int_distribution<std::size_t> pickc(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> len(1, 40);
  for (int i = 0; i < 5000; ++i) {
    std::string t;
    for (int k = len(rng); k > 0; --k) t += alphabet[pickc(rng)];
    try {
      Signature s = parseSignature(t);
      CHECK(parseSignature(s.str()) == s);
    } catch (const ParseError& e) {
      CHECK(e.offset() <= t.size());
    }
  }
}

TEST_CASE("subterms and depth") {
  Signature s = parseSignature("(1 v C) -> 1");
  CHECK(s.depth() >= 2);
  CHECK(!s.subterms().empty());
  CHECK(s.subterms()[0] == s);
}
