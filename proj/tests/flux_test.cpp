#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "endgraph/flux.hpp"

using namespace endgraph::flux;

TEST_CASE("fig-xn cork values") {
  SpineModel m = SpineModel::figXn();
  auto X = [](std::int64_t n) { return SubgraphXn{n, std::nullopt}; };
  CHECK(cork(m, X(0), X(-2)) == 2);
  CHECK(cork(m, X(2), X(0)) == 3);
  CHECK(cork(m, X(2), X(-2)) == 5);
  for (int n = -3; n <= 3; ++n)
    for (int k = n + 1; k <= 4; ++k) CHECK(cork(m, X(n), X(k)) == 0);
}

TEST_CASE("cork additivity") {
  SpineModel m = SpineModel::figXn();
  auto X = [](std::int64_t n) { return SubgraphXn{n, std::nullopt}; };
  for (int a = -4; a <= 4; ++a)
    for (int b = a; b <= 4; ++b)
      for (int c = b; c <= 4; ++c)
        CHECK(cork(m, X(c), X(a)) == cork(m, X(c), X(b)) + cork(m, X(b), X(a)));
}

TEST_CASE("admissible pairs") {
  SpineModel m = SpineModel::unitDensity();
  EndAction id;
  for (int n = -2; n <= 2; ++n) CHECK(isAdmissible(m, id, n, n));
  EndAction s1 = EndAction::shiftBy(1);
  CHECK(isAdmissible(m, s1, 3, 2));
  CHECK(!isAdmissible(m, s1, 1, 2));
}

TEST_CASE("basic flux values") {
  SpineModel m = SpineModel::unitDensity();
  CHECK(fluxValue(m, EndAction::shiftBy(1)) == 1);
  CHECK(fluxValue(m, EndAction::shiftBy(-1)) == -1);
  CHECK(fluxValue(m, EndAction::shiftBy(-2)) == -2);
  CHECK(fluxValue(m, EndAction{}) == 0);
  // Finitely supported permutations have flux zero.
  EndAction swap = EndAction{}.withSwap(Slot{0, 0}, Slot{3, 0});
  CHECK(fluxValue(m, swap) == 0);
}

TEST_CASE("loop-kind model reuses the engine") {
  SpineModel m = SpineModel::unitDensity(SpineModel::Kind::Loop);
  CHECK(fluxValue(m, EndAction::shiftBy(1)) == 1);
}

TEST_CASE("pair independence") {
  SpineModel m = SpineModel::unitDensity();
  std::vector<EndAction> actions = {
      EndAction::shiftBy(1), EndAction::shiftBy(-2),
      EndAction::shiftBy(2).withSwap(Slot{1, 0}, Slot{4, 0}), EndAction{}};
  for (const auto& f : actions) {
    std::int64_t expected = fluxValue(m, f);
    for (std::int64_t n = -4; n <= 4; ++n) {
      for (std::int64_t mm = n; mm <= 10; ++mm) {
        if (!isAdmissible(m, f, mm, n)) continue;
        CHECK(phi(m, f, mm, n) == expected);
      }
    }
  }
}

TEST_CASE("action parsing") {
  EndAction a = parseAction("shift:2;swap:0.0,3.0");
  CHECK(a.shift == 2);
  CHECK(!a.except.empty());
  CHECK_THROWS_AS(parseAction("nope"), ModelError);
}

namespace {
EndAction randomAction(std::mt19937& rng) {
  std::uniform_int_distribution<int> shift(-3, 3);
  std::uniform_int_distribution<int> nswaps(0, 3);
  std::uniform_int_distribution<int> pos(-6, 6);
  EndAction a = EndAction::shiftBy(shift(rng));
  for (int i = nswaps(rng); i > 0; --i) {
    Slot s1{pos(rng), 0}, s2{pos(rng), 0};
    if (s1 == s2) continue;
    a = a.withSwap(s1, s2);
  }
  return a;
}
}  // namespace

TEST_CASE("flux is a homomorphism") {
  SpineModel m = SpineModel::unitDensity();
  std::mt19937 rng(20240);
  for (int i = 0; i < 1000; ++i) {
    EndAction f = randomAction(rng), g = randomAction(rng);
    EndAction fg = compose(f, g);
    validateAction(m, fg);
    CHECK(fluxValue(m, fg) == fluxValue(m, f) + fluxValue(m, g));
  }
}

TEST_CASE("inverse negates the flux") {
  SpineModel m = SpineModel::unitDensity();
  std::mt19937 rng(555);
  for (int i = 0; i < 200; ++i) {
    EndAction f = randomAction(rng);
    CHECK(fluxValue(m, inverse(f)) == -fluxValue(m, f));
    EndAction round = compose(f, inverse(f));
    CHECK(fluxValue(m, round) == 0);
    CHECK(round.shift == 0);
  }
}

TEST_CASE("composition is associative on the slot level") {
  SpineModel m = SpineModel::unitDensity();
  std::mt19937 rng(99);
  for (int i = 0; i < 200; ++i) {
    EndAction f = randomAction(rng), g = randomAction(rng), h = randomAction(rng);
    EndAction l = compose(compose(f, g), h);
    EndAction r = compose(f, compose(g, h));
    for (std::int64_t p = -10; p <= 10; ++p)
      CHECK(l.apply(Slot{p, 0}) == r.apply(Slot{p, 0}));
  }
}

TEST_CASE("invalid actions are rejected") {
  SpineModel fig = SpineModel::figXn();
  // Shifting the fig model moves slots onto empty positions.
  CHECK_THROWS_AS(fluxValue(fig, EndAction::shiftBy(1)), ModelError);
  SpineModel m = SpineModel::unitDensity();
  EndAction bad;
  bad.except[Slot{0, 5}] = Slot{1, 0};  // no such source slot
  CHECK_THROWS_AS(validateAction(m, bad), ModelError);
}
