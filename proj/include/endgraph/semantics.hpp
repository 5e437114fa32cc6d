#pragma once

#include <optional>
#include <stdexcept>

#include "endgraph/signature.hpp"

namespace endgraph {

struct UncountableInput : std::runtime_error {
  UncountableInput() : std::runtime_error("msForm: uncountable end space") {}
};
struct EmptyEndSpace : std::runtime_error {
  EmptyEndSpace() : std::runtime_error("msForm: empty end space") {}
};
struct UnsupportedFamily : std::runtime_error {
  explicit UnsupportedFamily(const std::string& what)
      : std::runtime_error("unsupported family schema: " + what) {}
};

/// Rank of the fundamental group, collapsed to {0, k, infinity}.
struct GenusValue {
  bool infinite = false;
  std::uint64_t count = 0;  // meaningful when !infinite
  bool zero() const { return !infinite && count == 0; }
  bool operator==(const GenusValue& o) const {
    return infinite == o.infinite && (infinite || count == o.count);
  }
  std::string str() const {
    return infinite ? "infinite" : std::to_string(count);
  }
};

enum class GenusSupport { None, All, Mixed };

/// Structural end-space flags; meaningful for open templates as well
/// (the flags do not depend on the index value).
struct EndStructure {
  bool anyEnds = false;
  bool countable = true;
  bool isoPlain = false;     // isolated ends not accumulated by genus
  bool isoGenus = false;     // isolated ends accumulated by genus
  bool anyPlain = false;
  bool anyGenus = false;
  bool cantorPlain = false;  // Cantor-type clusters not accumulated by genus
  bool cantorGenus = false;
  bool perfect() const { return !isoPlain && !isoGenus; }
};

struct CharPairSummary {
  GenusValue genus;
  bool countable = true;
  std::optional<MsPair> msForm;
  bool hasIsolatedPlainEnd = false;
  bool hasIsolatedGenusEnd = false;
  bool perfect = false;
  GenusSupport genusSupport = GenusSupport::None;
};

bool isCountable(const Signature& sig);
bool hasEnds(const Signature& sig);

EndStructure endStructure(const Signature& sig);

GenusValue genusClass(const Signature& sig);

/// Mazurkiewicz-Sierpinski normal form of the end space: the unique
/// (alpha, n) with the space homeomorphic to w^alpha*n+1.  Requires a
/// countable, non-empty end space.
MsPair msForm(const Signature& sig);

CharPairSummary charPair(const Signature& sig);

/// Rank-limit data for the members of a family: the sup of member MS
/// alphas over the infinite tail, and whether it is attained infinitely
/// often.  Pre: the family has ends infinitely often and is countable.
struct FamilyRank {
  Ordinal sup;
  bool attainedIO = false;
};
FamilyRank familyRank(const FamilyExpr& f);

/// Do infinitely many members of the family contribute ends / genus?
bool familyEndsInfinitelyOften(const FamilyExpr& f);
bool familyEverEnds(const FamilyExpr& f);
bool familyGenusInfinitelyOften(const FamilyExpr& f);
/// Indices that must be inspected one by one (finite prefix junk).
int familyHeadLength(const FamilyExpr& f);

}  // namespace endgraph
