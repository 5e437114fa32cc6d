#pragma once

#include <optional>
#include <string>
#include <vector>

#include "endgraph/poset.hpp"
#include "endgraph/signature.hpp"

namespace endgraph {

enum class TheoremTag {
  FiniteTree,
  FiniteGenus,
  FiniteEndType,
  UniqueMaxEnd,
  CantorTree,
  SelfSimilarNo,
  Babel1,
  Babel2,
  GcdFlux,
  GeneralFlux,
  TreeCantorFactor,
  UnknownCategory1,
  UnknownCategory2,
  UnknownCategory3,
};
const char* theoremTagName(TheoremTag t);

/// Three-valued classification verdict with the justifying theorem and a
/// re-checkable witness payload.
struct Verdict {
  Tri answer = Tri::Unknown;
  TheoremTag tag = TheoremTag::UnknownCategory1;
  std::vector<std::pair<std::string, std::string>> witness;
  std::vector<std::string> trace;
};

/// Greatest common divisor witness for a pair of maximal ends: an end (or
/// the loop marker R1) below both, such that everything above it answers
/// to only one of the two.
struct GcdWitness {
  Signature mu1, mu2;
  bool loopMark = false;     // R1 instead of an end type
  Signature lambda;          // meaningful when !loopMark
  std::string sideCheck;     // evidence description
};

std::optional<GcdWitness> gcdWitnessSearch(const Signature& sig);

enum class BabelKind { Babel1, Babel2 };
std::optional<BabelKind> babelCheck(const Signature& sig);

/// Generalized flux splitting: a bipartition of the wedge components with
/// a non-Cantor lambda whose strict upper types stay on one side.
struct FluxSplit {
  Signature nu1, nu2;
  bool loopMark = false;
  Signature lambda;
  std::vector<Signature> side1, side2;
};
std::optional<FluxSplit> fluxSplittingSearch(const Signature& sig);

/// Rose(k) -> Rose(0) and o(X) -> X, recursively.
Signature stripGenus(const Signature& sig);

/// Does Maps(X) have a dense conjugacy class?
Verdict classifyMapsDCC(const Signature& sig);

/// Does Homeo(end space, genus-marked ends) have a dense conjugacy class?
Verdict classifyHomeoDCC(const Signature& sig);

}  // namespace endgraph
