#pragma once

#include <optional>
#include <vector>

#include "endgraph/canonical.hpp"
#include "endgraph/signature.hpp"

namespace endgraph {

/// A canonical self-similar signature viewed as an element of the
/// local-structure poset.
struct LocalStructure {
  Signature sig;       // normalized
  MaxShellKind shell;  // maxShell(sig)
  bool cantorMany() const {
    return shell == MaxShellKind::CantorMany || shell == MaxShellKind::GenusCantor;
  }
  bool genusMark() const {
    return shell == MaxShellKind::GenusOne || shell == MaxShellKind::GenusCantor;
  }
};

struct Multiplicity {
  bool cantorMany = false;
  std::uint64_t count = 1;  // meaningful when !cantorMany
};

struct EndTypeReport {
  std::vector<std::pair<LocalStructure, Multiplicity>> types;
};

/// Countable ordinal-type ranks present in an end space, as a union of
/// initial intervals [0, hi] / [0, hi).
struct RankRange {
  Ordinal hi;
  bool hiIncl = true;
};

/// Parametrized structured type site: members templ[var := k*n + r].
struct TemplateSite {
  Signature templ;
  std::string var;
  std::uint64_t k = 1, r = 0;
};

struct TypeCensus {
  std::vector<RankRange> plain;   // types of w^b+1, no genus
  std::vector<RankRange> genus;   // types of o(w^b+1)
  std::vector<Signature> structured;     // normalized local structures
  std::vector<TemplateSite> templates;   // parametrized sites
  bool incomplete = false;  // some region could not be represented

  Tri hasPlainRank(const Ordinal& beta) const;
  Tri hasGenusRank(const Ordinal& beta) const;
  /// Strict upper bound on plain ranks, when representable.
  std::optional<Ordinal> plainRankBound() const;
  std::optional<Ordinal> genusRankBound() const;
};

/// Census of the end types represented in sig (normalizes internally).
TypeCensus typeCensus(const Signature& sig);

/// Is there an end of type z in sig?  z is normalized internally; sound
/// three-valued answer.
Tri hasEndOfType(const Signature& sig, const Signature& z);

/// Local structure poset: z <= z2 iff a clopen copy of the end space of z
/// sits inside that of z2, i.e. z2 has an end of type z.
Tri leq(const Signature& z, const Signature& z2);

/// The four minimal local structures: 1, o(1), C, o(C).
std::vector<Signature> minimalLocalStructures();

/// Finite list of maximal end types with multiplicities.  Throws
/// UnstableInputError when the input is provably unstable.
EndTypeReport maximalEndTypes(const Signature& sig);

/// A local structure incomparable to x: C for countable x, else the
/// ordinal tree just above every ordinal type occurring in x.
Signature incomparableTo(const Signature& x);

/// Z^1 = (x v incomparableTo(x)) -> 1 and Z^C = (...) -> C.
Signature immediateSuccessor(const Signature& x, bool cantorKind);

/// Minimal upper bound of >= 2 local structures.
Signature minimalUpperBound(const std::vector<Signature>& zs, bool cantorKind);

/// Does the end space of a embed as a clopen subset of that of b?
/// pre: a stable.
Tri clopenEmbeds(const Signature& a, const Signature& b);

}  // namespace endgraph
