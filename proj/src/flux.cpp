#include "endgraph/flux.hpp"

#include <algorithm>
#include <set>

namespace endgraph::flux {

std::uint64_t SpineModel::countAt(std::int64_t p) const {
  auto it = decorations.find(p);
  if (it != decorations.end()) return it->second;
  std::int64_t a = p < 0 ? -p : p;
  if (a > window) {
    std::uint64_t off = static_cast<std::uint64_t>(a - window - 1);
    return tailCounts[off % tailPeriod];
  }
  return 0;
}

SpineModel SpineModel::unitDensity(Kind k) {
  SpineModel m;
  m.kind = k;
  m.window = -1;
  m.tailPeriod = 1;
  m.tailCounts = {1};
  return m;
}

SpineModel SpineModel::figXn() {
  SpineModel m;
  m.kind = Kind::End;
  m.decorations = {{-1, 1}, {0, 1}, {1, 1}, {2, 2}};
  m.window = 2;
  m.tailPeriod = 1;
  m.tailCounts = {0};
  return m;
}

Slot EndAction::apply(const Slot& s) const {
  auto it = except.find(s);
  if (it != except.end()) return it->second;
  return Slot{s.pos + shift, s.idx};
}

Slot EndAction::applyInverse(const Slot& s) const {
  for (const auto& [src, dst] : except)
    if (dst == s) return src;
  Slot pre{s.pos - shift, s.idx};
  if (except.count(pre)) {
    // pre maps elsewhere; s has no preimage through the plain shift.
    throw ModelError("applyInverse: slot outside the action image");
  }
  return pre;
}

EndAction EndAction::shiftBy(std::int64_t s) {
  EndAction a;
  a.shift = s;
  return a;
}

EndAction EndAction::withSwap(const Slot& a, const Slot& b) const {
  // Post-compose with the transposition (a b).
  EndAction out = *this;
  auto retarget = [&](const Slot& t) {
    if (t == a) return b;
    if (t == b) return a;
    return t;
  };
  // Sources that currently hit a or b.
  Slot preA{a.pos - shift, a.idx}, preB{b.pos - shift, b.idx};
  std::set<Slot> sources{preA, preB};
  for (const auto& [src, dst] : except)
    if (dst == a || dst == b) sources.insert(src);
  for (const auto& src : sources) {
    Slot cur = apply(src);
    Slot next = retarget(cur);
    if (next == Slot{src.pos + shift, src.idx})
      out.except.erase(src);
    else
      out.except[src] = next;
  }
  return out;
}

void validateAction(const SpineModel& model, const EndAction& f) {
  // Tail compatibility: shifting within the periodic tail must preserve
  // counts.
  std::uint64_t period = model.tailPeriod;
  for (std::uint64_t i = 0; i < period; ++i) {
    std::uint64_t j = (i + static_cast<std::uint64_t>(
                               ((f.shift % static_cast<std::int64_t>(period)) +
                                static_cast<std::int64_t>(period)) %
                               static_cast<std::int64_t>(period))) %
                      period;
    if (model.tailCounts[i] != model.tailCounts[j])
      throw ModelError("shift is incompatible with the periodic tail");
  }
  // Exceptions must name real slots.
  std::set<Slot> targets;
  std::int64_t lo = -(model.window + 2), hi = model.window + 2;
  for (const auto& [src, dst] : f.except) {
    if (src.idx >= model.countAt(src.pos)) throw ModelError("exception source missing");
    if (dst.idx >= model.countAt(dst.pos)) throw ModelError("exception target missing");
    if (!targets.insert(dst).second) throw ModelError("exception targets collide");
    lo = std::min({lo, src.pos, dst.pos});
    hi = std::max({hi, src.pos, dst.pos});
  }
  lo -= std::abs(f.shift) + static_cast<std::int64_t>(period);
  hi += std::abs(f.shift) + static_cast<std::int64_t>(period);
  // Local bijection over the affected window.
  std::map<Slot, std::uint64_t> hitCount;
  for (std::int64_t p = lo; p <= hi; ++p) {
    std::uint64_t d = model.countAt(p);
    for (std::uint64_t j = 0; j < d; ++j) {
      Slot t = f.apply(Slot{p, j});
      if (t.idx >= model.countAt(t.pos)) throw ModelError("action leaves the model");
      if (t.pos >= lo && t.pos <= hi) ++hitCount[t];
    }
  }
  std::int64_t margin = std::abs(f.shift) + static_cast<std::int64_t>(period);
  for (std::int64_t p = lo + margin; p <= hi - margin; ++p) {
    std::uint64_t d = model.countAt(p);
    for (std::uint64_t j = 0; j < d; ++j) {
      auto it = hitCount.find(Slot{p, j});
      if (it == hitCount.end() || it->second != 1)
        throw ModelError("counts are inconsistent under the action");
    }
  }
}

namespace {

bool inSet(const SpineModel&, const SubgraphXn& s, const Slot& slot) {
  if (!s.image) return slot.pos <= s.n;
  Slot pre = s.image->applyInverse(slot);
  return pre.pos <= s.n;
}

// Positions outside this span cannot contribute to |a \ b|.
std::pair<std::int64_t, std::int64_t> diffSpan(const SubgraphXn& a, const SubgraphXn& b) {
  std::int64_t hi = a.n;
  if (a.image) hi = std::max(hi, a.n + a.image->shift);
  std::int64_t lo = b.n;
  if (b.image) lo = std::min(lo, b.n + b.image->shift);
  lo = std::min(lo, hi);
  auto widen = [&](const SubgraphXn& s) {
    if (!s.image) return;
    for (const auto& [src, dst] : s.image->except) {
      hi = std::max({hi, src.pos, dst.pos});
      lo = std::min({lo, src.pos, dst.pos});
    }
  };
  widen(a);
  widen(b);
  return {lo - 1, hi};
}

}  // namespace

std::uint64_t cork(const SpineModel& model, const SubgraphXn& a, const SubgraphXn& b) {
  auto [lo, hi] = diffSpan(a, b);
  std::uint64_t out = 0;
  for (std::int64_t p = lo; p <= hi; ++p) {
    std::uint64_t d = model.countAt(p);
    for (std::uint64_t j = 0; j < d; ++j) {
      Slot s{p, j};
      if (inSet(model, a, s) && !inSet(model, b, s)) ++out;
    }
  }
  // Positions below the span are in both sets (or in b) by construction.
  return out;
}

bool isAdmissible(const SpineModel& model, const EndAction& f, std::int64_t m,
                  std::int64_t n) {
  if (n > m) return false;
  // The image of X_n reaches p + shift for slot-bearing positions p <= n,
  // plus the targets of exceptions rooted in X_n.
  std::int64_t top = n;
  std::int64_t scan = model.window + static_cast<std::int64_t>(model.tailPeriod) + 1;
  for (std::int64_t p = n; p >= n - scan; --p) {
    if (model.countAt(p) > 0) {
      top = std::max(top, p + f.shift);
      break;
    }
  }
  for (const auto& [src, dst] : f.except)
    if (src.pos <= n && model.countAt(src.pos) > src.idx) top = std::max(top, dst.pos);
  return top <= m;
}

std::int64_t phi(const SpineModel& model, const EndAction& f, std::int64_t m,
                 std::int64_t n) {
  SubgraphXn xm{m, std::nullopt};
  SubgraphXn xn{n, std::nullopt};
  SubgraphXn fxn{n, f};
  std::int64_t a = static_cast<std::int64_t>(cork(model, xm, xn));
  std::int64_t b = static_cast<std::int64_t>(cork(model, xm, fxn));
  return a - b;
}

std::int64_t fluxValue(const SpineModel& model, const EndAction& f) {
  validateAction(model, f);
  std::int64_t n = 0;
  std::int64_t m = n;
  while (!isAdmissible(model, f, m, n)) ++m;
  return phi(model, f, m, n);
}

EndAction compose(const EndAction& f, const EndAction& g) {
  EndAction out;
  out.shift = f.shift + g.shift;
  std::set<Slot> sources;
  for (const auto& [src, dst] : g.except) sources.insert(src);
  for (const auto& [src, dst] : f.except)
    sources.insert(Slot{src.pos - g.shift, src.idx});
  for (const auto& src : sources) {
    Slot t = f.apply(g.apply(src));
    if (!(t == Slot{src.pos + out.shift, src.idx})) out.except[src] = t;
  }
  return out;
}

EndAction inverse(const EndAction& f) {
  EndAction out;
  out.shift = -f.shift;
  for (const auto& [src, dst] : f.except) out.except[dst] = src;
  return out;
}

EndAction parseAction(const std::string& text) {
  EndAction out;
  std::size_t pos = 0;
  auto expect = [&](const std::string& t) {
    if (text.compare(pos, t.size(), t) != 0)
      throw ModelError("bad action spec near offset " + std::to_string(pos));
    pos += t.size();
  };
  auto integer = [&]() {
    std::size_t used = 0;
    long long v = std::stoll(text.substr(pos), &used);
    pos += used;
    return v;
  };
  expect("shift:");
  out.shift = integer();
  while (pos < text.size()) {
    expect(";swap:");
    Slot a, b;
    a.pos = integer();
    expect(".");
    a.idx = static_cast<std::uint64_t>(integer());
    expect(",");
    b.pos = integer();
    expect(".");
    b.idx = static_cast<std::uint64_t>(integer());
    out = out.withSwap(a, b);
  }
  return out;
}

}  // namespace endgraph::flux
