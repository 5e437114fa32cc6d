#pragma once

// Independent brute-force verification engines.  Everything here re-derives
// results along a different computational route from the main modules, on a
// separate ordinal representation, so the two sides can check each other.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "endgraph/signature.hpp"

namespace endgraph::oracle {

/// Oracle-local ordinal value (CNF as nested term lists).  Deliberately not
/// endgraph::Ordinal; the arithmetic is reimplemented.
struct OrdVal {
  struct Term;
  std::vector<Term> t;

  bool zero() const { return t.empty(); }
  bool finite() const;
  std::uint64_t finiteValue() const;
  std::string str() const;
};

struct OrdVal::Term {
  OrdVal exp;
  std::uint64_t coeff = 1;
};

inline bool OrdVal::finite() const {
  return t.empty() || (t.size() == 1 && t[0].exp.zero());
}
inline std::uint64_t OrdVal::finiteValue() const { return t.empty() ? 0 : t[0].coeff; }

int ocmp(const OrdVal& a, const OrdVal& b);
OrdVal oadd(const OrdVal& a, const OrdVal& b);
OrdVal onat(std::uint64_t n);
OrdVal opowOmega(const OrdVal& e, std::uint64_t c = 1);
/// Ordinal product a*b via the classical CNF rules.
OrdVal omul(const OrdVal& a, const OrdVal& b);
/// Left subtraction: the unique g with a + g = b; pre: a <= b.
OrdVal oleftSub(const OrdVal& a, const OrdVal& b);

/// Bridge from the main representation (used only to ingest inputs).
OrdVal fromOrdinal(const Ordinal& o);
Ordinal toOrdinal(const OrdVal& v);

struct UncountableError : std::runtime_error {
  UncountableError() : std::runtime_error("uncountable end space") {}
};
struct EmptyEndSpaceError : std::runtime_error {
  EmptyEndSpaceError() : std::runtime_error("empty end space") {}
};

/// The end space of a countable signature as a formal ordinal xi: the space
/// is xi+1 with the order topology when xi is infinite, and xi isolated
/// points when xi is finite (the w^0+1 = 1 convention).  Genus marks are
/// ignored.  Wedges become ascending ordinal sums; convergence becomes an
/// omega-indexed sum plus limit structure, grafted onto the base by ordinal
/// multiplication.
OrdVal endSpaceOrdinal(const Signature& sig);

/// A countable compact space presented as the formal ordinal above.
struct OrdinalSpace {
  OrdVal xi;
};

/// One Cantor-Bendixson derivative: isolated points removed.
OrdinalSpace cbDerivative(const OrdinalSpace& s);

/// Transfinite iteration of the derivative until a finite set remains:
/// single steps chip finite exponent tails, and stalls jump by the least
/// infinite exponent.  Returns (alpha, n) with the space homeomorphic to
/// w^alpha*n+1.
struct CbRank {
  OrdVal alpha;
  std::uint64_t count = 0;
};
CbRank cbRankOfSpace(const OrdinalSpace& s);

/// Rank-arithmetic check that sig (countable, genus-free) has an end of
/// type w^beta+1.  Independent of poset.hasEndOfType.
bool typeRankCheck(const Signature& sig, const Ordinal& beta);

/// Depth-bounded comparison of end-space censuses: does a copy of the end
/// space of `a` plausibly clopen-embed into that of `b`?  Yes/No answers
/// are sound; anything uncertain is Inconclusive (Tri::Unknown).
Tri smallEmbedCheck(const Signature& a, const Signature& b, int depth);

/// Expansion cap used by member sampling; reads ENDSPACE_DEPTH_CAP.
int depthCap();

}  // namespace endgraph::oracle
