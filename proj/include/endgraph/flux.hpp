#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace endgraph::flux {

/// Two-sided decorated spine: position p carries d_p lambda-objects
/// (ends or loops).  Negative positions are the Y1 side of x0, positive
/// ones the Y2 side.  Beyond the window the counts repeat periodically.
struct SpineModel {
  enum class Kind { End, Loop };
  Kind kind = Kind::End;
  std::map<std::int64_t, std::uint64_t> decorations;
  std::int64_t window = -1;  // -1: every position uses the tail
  std::uint64_t tailPeriod = 1;
  std::vector<std::uint64_t> tailCounts{1};

  std::uint64_t countAt(std::int64_t p) const;

  static SpineModel unitDensity(Kind k = Kind::End);
  /// The worked sample whose corks are 2, 3 and 5.
  static SpineModel figXn();
};

struct Slot {
  std::int64_t pos = 0;
  std::uint64_t idx = 0;
  bool operator<(const Slot& o) const {
    return pos != o.pos ? pos < o.pos : idx < o.idx;
  }
  bool operator==(const Slot& o) const { return pos == o.pos && idx == o.idx; }
};

/// Eventually-translation bijection of the slots: slot (p, j) goes to
/// (p + shift, j) outside a finitely supported exception map.
struct EndAction {
  std::int64_t shift = 0;
  std::map<Slot, Slot> except;

  Slot apply(const Slot& s) const;
  Slot applyInverse(const Slot& s) const;

  static EndAction shiftBy(std::int64_t s);
  /// Swap two slots on top of a shift (targets named in slot space).
  EndAction withSwap(const Slot& a, const Slot& b) const;
};

struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& m) : std::runtime_error(m) {}
};

/// Consistency of counts under shift + finite exceptions: the action must
/// biject the slots of the model.
void validateAction(const SpineModel& model, const EndAction& f);

/// The subgraph X_n holds the slots at positions <= n.
struct SubgraphXn {
  std::int64_t n = 0;
  std::optional<EndAction> image;  // f(X_n) when present
};

/// cork(a, b) = |slots(a) \ slots(b)|.
std::uint64_t cork(const SpineModel& model, const SubgraphXn& a, const SubgraphXn& b);

/// (m, n) is admissible for f when slots(X_n) and f(slots(X_n)) both sit
/// inside slots(X_m).
bool isAdmissible(const SpineModel& model, const EndAction& f, std::int64_t m,
                  std::int64_t n);

/// phi_{m,n}(f) = cork(X_m, X_n) - cork(X_m, f(X_n)).
std::int64_t phi(const SpineModel& model, const EndAction& f, std::int64_t m,
                 std::int64_t n);

/// The flux homomorphism: phi over a minimal admissible pair.  The value
/// is independent of the admissible pair chosen.
std::int64_t fluxValue(const SpineModel& model, const EndAction& f);

EndAction compose(const EndAction& f, const EndAction& g);  // f after g
EndAction inverse(const EndAction& f);

/// Action spec text: "shift:<k>[;swap:p1.j1,p2.j2]*".
EndAction parseAction(const std::string& text);

}  // namespace endgraph::flux
