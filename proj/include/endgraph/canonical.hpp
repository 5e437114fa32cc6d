#pragma once

#include <optional>
#include <string>
#include <vector>

#include "endgraph/semantics.hpp"
#include "endgraph/signature.hpp"

namespace endgraph {

enum class Stability { Stable, Unstable, Unknown };

inline const char* stabilityName(Stability s) {
  switch (s) {
    case Stability::Stable: return "Stable";
    case Stability::Unstable: return "Unstable";
    default: return "Unknown";
  }
}

struct UnstableWitness {
  std::string path;    // subterm locator (printed conv)
  std::string reason;  // InfinitelyManyIncomparableMaxTypes | FailedClopenChain
  // Pairwise-incomparable concrete members backing the verdict (>= 3 pairs).
  std::vector<std::pair<std::string, std::string>> incomparablePairs;
};

struct StabilityResult {
  Stability value = Stability::Unknown;
  std::optional<UnstableWitness> witness;
};

struct RewriteStep {
  std::string rule;
  std::string before;
  std::string after;
};

/// Rewrite to the canonical normal form.  Deterministic and always
/// terminating: recursion is structural except at convergence nodes,
/// where the rebuild chain fires each rule at most once (genus alignment
/// leaves an all-genus base, base splitting leaves non-wedge bases, the
/// collapse rules eliminate the node, and materializing a family member
/// peels one family layer).  The rewrite count is O(size); the tests pin
/// a concrete linear budget.
Signature normalizeSig(const Signature& sig, std::vector<RewriteStep>* trace = nullptr);

StabilityResult isStable(const Signature& sig);

struct CanonicalSignature {
  Signature sig;
  StabilityResult stability;
  bool orderedCertificate = false;  // Def-ordered-signature clauses verified
};
CanonicalSignature normalize(const Signature& sig,
                             std::vector<RewriteStep>* trace = nullptr);

struct UnstableInputError : std::runtime_error {
  explicit UnstableInputError(const std::string& m)
      : std::runtime_error("operation requires stable input: " + m) {}
};

/// Canonical wedge decomposition into self-similar components.  A finite
/// positive genus contributes the rose bundle as a distinguished extra
/// component.  Throws UnstableInputError unless stability is Stable.
std::vector<Signature> wedgeDecomposition(const Signature& sig);

struct SelfSimilarVerdict {
  Tri answer = Tri::Unknown;
  std::vector<Signature> decomposition;  // witness when No
};
SelfSimilarVerdict isSelfSimilar(const Signature& sig);

/// The minimal structure carrying the maximal ends of a local structure.
enum class MaxShellKind { One, GenusOne, CantorMany, GenusCantor };
const char* maxShellName(MaxShellKind k);
Signature maxShellSignature(MaxShellKind k);
/// pre: sig is a self-similar canonical signature.
MaxShellKind maxShell(const Signature& sig);

struct IsoResult {
  Tri answer = Tri::Unknown;
  std::string separating;  // invariant that differs, when No
};
IsoResult isomorphic(const Signature& a, const Signature& b);

}  // namespace endgraph
