#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "endgraph/oracle.hpp"
#include "endgraph/parser.hpp"

using namespace endgraph;
using namespace endgraph::oracle;

namespace {
OrdVal X(const std::string& sig) { return endSpaceOrdinal(parseSignature(sig)); }
OrdVal V(const std::string& ord) { return fromOrdinal(parseOrdinal(ord)); }
}  // namespace

TEST_CASE("oracle ordinal arithmetic") {
  CHECK(ocmp(V("w"), V("w+1")) == -1);
  CHECK(ocmp(oadd(V("w^2"), V("w^2")), V("w^2*2")) == 0);
  CHECK(ocmp(omul(V("w+1"), V("w")), V("w^2")) == 0);
  CHECK(ocmp(omul(V("w^2+1"), V("3")), V("w^2*3+1")) == 0);
  CHECK(ocmp(omul(V("w+2"), V("w")), V("w^2")) == 0);
  CHECK(ocmp(oleftSub(V("w"), V("w^2")), V("w^2")) == 0);
  CHECK(ocmp(oleftSub(V("w^2"), V("w^2*3+5")), V("w^2*2+5")) == 0);
  CHECK(oleftSub(V("5"), V("5")).zero());
  // a + (b - a) == b on samples
  for (const char* a : {"0", "3", "w", "w*2+1", "w^2", "w^w"})
    for (const char* b : {"w^2", "w^2*3+5", "w^w", "w^w+w*2"})
      if (ocmp(V(a), V(b)) <= 0)
        CHECK(ocmp(oadd(V(a), oleftSub(V(a), V(b))), V(b)) == 0);
}

TEST_CASE("end space ordinals") {
  CHECK(ocmp(X("1"), V("1")) == 0);
  CHECK(ocmp(X("w^2+1 v w^2+1"), V("w^2*2")) == 0);
  CHECK(ocmp(X("(w+1) -> 1"), V("w^2")) == 0);
  CHECK(ocmp(X("(1) -> 1"), V("w")) == 0);
  CHECK(ocmp(X("{w^n+1} -> 1"), V("w^w")) == 0);
  CHECK(ocmp(X("w+1 v w^2+1"), V("w^2")) == 0);
  CHECK(ocmp(X("o(1)"), V("1")) == 0);  // genus marks are ignored
  CHECK(ocmp(X("(w^5+1) v 1 v 1"), V("w^5")) == 0);
  CHECK_THROWS_AS(X("C"), UncountableError);
  CHECK_THROWS_AS(X("R3"), EmptyEndSpaceError);
}

TEST_CASE("structured conv bases") {
  // Members grafted onto every vertex of a deeper base boost all its ranks;
  // sub-lead junk is homeomorphically irrelevant, so compare MS leads.
  CHECK(ocmp(X("(w^2+1) -> (1 v 1)"), V("w^3*2")) == 0);
  CbRank r = cbRankOfSpace(OrdinalSpace{X("(w^2+1) -> (w+1)")});
  CHECK(ocmp(r.alpha, V("4")) == 0);
  CHECK(r.count == 1);
  r = cbRankOfSpace(OrdinalSpace{X("{w^n+1} -> (w+1)")});
  CHECK(ocmp(r.alpha, V("w+1")) == 0);
  CHECK(r.count == 1);
}

TEST_CASE("cb derivative basics") {
  // One derivative of w+1 leaves a single point.
  OrdinalSpace s{V("w")};
  CHECK(ocmp(cbDerivative(s).xi, V("1")) == 0);
  // Finite spaces derive to nothing.
  CHECK(cbDerivative(OrdinalSpace{V("5")}).xi.zero());
  // w^(w+1) stalls under single derivatives (infinite exponent).
  OrdinalSpace t{V("w^(w+1)")};
  CHECK(ocmp(cbDerivative(t).xi, t.xi) == 0);
}

TEST_CASE("cb rank of space") {
  CbRank r = cbRankOfSpace(OrdinalSpace{V("w^2*3")});
  CHECK(ocmp(r.alpha, V("2")) == 0);
  CHECK(r.count == 3);
  r = cbRankOfSpace(OrdinalSpace{V("w^2*3+w*7+4")});
  CHECK(ocmp(r.alpha, V("2")) == 0);
  CHECK(r.count == 3);
  r = cbRankOfSpace(OrdinalSpace{V("w^w")});
  CHECK(ocmp(r.alpha, V("w")) == 0);
  CHECK(r.count == 1);
  r = cbRankOfSpace(OrdinalSpace{V("w^(w^2)+w^(w+1)*2+w^3")});
  CHECK(ocmp(r.alpha, V("w^2")) == 0);
  CHECK(r.count == 1);
  r = cbRankOfSpace(OrdinalSpace{V("7")});
  CHECK(r.alpha.zero());
  CHECK(r.count == 7);
}

TEST_CASE("type rank checks") {
  CHECK(typeRankCheck(parseSignature("w^w+1"), parseOrdinal("3")));
  CHECK(typeRankCheck(parseSignature("w^w+1"), parseOrdinal("w")));
  CHECK(!typeRankCheck(parseSignature("w^2+1"), parseOrdinal("3")));
}

TEST_CASE("small embed checks") {
  CHECK(smallEmbedCheck(parseSignature("C"), parseSignature("w^w+1"), 4) == Tri::No);
  CHECK(smallEmbedCheck(parseSignature("w^2+1"), parseSignature("w^2+1"), 4) == Tri::Yes);
  CHECK(smallEmbedCheck(parseSignature("w^2+1"), parseSignature("w^w+1"), 4) == Tri::Yes);
  CHECK(smallEmbedCheck(parseSignature("w^w+1"), parseSignature("w^2+1"), 4) == Tri::No);
  CHECK(smallEmbedCheck(parseSignature("o(1)"), parseSignature("w^5+1"), 4) == Tri::No);
}
