#include <doctest.h>

#include "condnorm/measures.hpp"
#include "condnorm/normalize.hpp"

using namespace condnorm;

namespace {

Expr at(const char* name) { return Expr::atom(name); }
Expr If(Expr x, Expr y, Expr z) { return Expr::ifNode(std::move(x), std::move(y), std::move(z)); }

// Direct transliteration of the recurrence, plain recursion.
Measure naiveM(const Expr& e) {
  if (e.isAtom()) return 1;
  const Measure x = naiveM(e.test());
  return x + x * naiveM(e.thenBranch()) + x * naiveM(e.elseBranch());
}

std::uint64_t naiveTested(const Expr& e) {
  if (e.isAtom()) return 0;
  return (e.test().isIf() ? 1 : 0) + naiveTested(e.test()) + naiveTested(e.thenBranch()) +
         naiveTested(e.elseBranch());
}

const std::vector<Expr>& universe3() {
  static const std::vector<Expr> all = enumerate({3, parseAlphabet("a,b")});
  return all;
}

}  // namespace

TEST_CASE("m on the reference expressions") {
  CHECK(shostakMeasure(at("a")) == 1);
  CHECK(shostakMeasure(If(at("a"), at("b"), at("c"))) == 3);
  const Expr tested = If(If(at("a"), at("b"), at("c")), at("y"), at("z"));
  const Expr successor = If(at("a"), If(at("b"), at("y"), at("z")), If(at("c"), at("y"), at("z")));
  CHECK(shostakMeasure(tested) == 9);
  CHECK(shostakMeasure(successor) == 7);
}

TEST_CASE("m agrees with the naive recurrence and is exact beyond 64 bits") {
  for (const auto& e : universe3()) REQUIRE(shostakMeasure(e) == naiveM(e));
  // Left spine of depth 8 over itself: m squares at every level.
  Expr e = at("a");
  for (int i = 0; i < 8; ++i) e = If(e, e, e);
  const Measure m = shostakMeasure(e);
  CHECK(m == naiveM(e));
  CHECK(m > Measure(std::numeric_limits<std::uint64_t>::max()));
  CHECK(saturateToU64(m) == std::numeric_limits<std::uint64_t>::max());
  CHECK(saturateToU64(Measure(17)) == 17);
}

TEST_CASE("m is positive and decreases in both norm cases") {
  const auto& all = universe3();
  for (const auto& e : all) REQUIRE(shostakMeasure(e) >= 1);
  // If-At: m(y), m(z) < m(If(At a, y, z)).
  for (const auto& y : all) {
    for (const auto& z : enumerate({1, parseAlphabet("a,b")})) {
      const Measure whole = shostakMeasure(If(at("a"), y, z));
      REQUIRE(shostakMeasure(y) < whole);
      REQUIRE(shostakMeasure(z) < whole);
    }
  }
  // If-If: drop is exactly m(u)m(y) + m(u)m(z).
  const std::vector<Expr> small = enumerate({1, parseAlphabet("a,b")});
  for (const auto& u : small)
    for (const auto& v : small)
      for (const auto& w : small)
        for (const auto& y : small)
          for (const auto& z : small) {
            const Measure before = shostakMeasure(If(If(u, v, w), y, z));
            const Measure after = shostakMeasure(If(u, If(v, y, z), If(w, y, z)));
            const Measure mu = shostakMeasure(u);
            REQUIRE(before - after == mu * shostakMeasure(y) + mu * shostakMeasure(z));
            REQUIRE(after < before);
          }
}

TEST_CASE("tested-If count") {
  CHECK(testedIfCount(at("a")) == 0);
  CHECK(testedIfCount(If(at("a"), at("b"), at("c"))) == 0);
  CHECK(testedIfCount(If(If(at("u"), at("v"), at("w")), at("y"), at("z"))) == 1);
  CHECK(testedIfCount(If(If(If(at("a"), at("a"), at("a")), at("v"), at("w")), at("y"), at("z"))) == 2);
  for (const auto& e : universe3()) {
    REQUIRE(testedIfCount(e) == naiveTested(e));
    REQUIRE((testedIfCount(e) == 0) == isNormal(e));
  }
}

TEST_CASE("IF.DEPTH along the test spine") {
  CHECK(ifDepth(at("a")) == 0);
  CHECK(ifDepth(If(at("a"), at("b"), at("c"))) == 1);
  CHECK(ifDepth(If(If(at("u"), at("v"), at("w")), at("y"), at("z"))) == 2);
  CHECK(ifDepth(If(at("a"), If(If(at("u"), at("v"), at("w")), at("y"), at("z")), at("c"))) == 1);
}

TEST_CASE("lexicographic norm2 measure") {
  CHECK(lexNorm2Measure(at("a")) == LexMeasure{0, 1});
  CHECK(lexNorm2Measure(If(If(at("u"), at("v"), at("w")), at("y"), at("z"))) == LexMeasure{1, 7});
  CHECK(lexNorm2Measure(If(at("u"), at("p"), at("q"))) == LexMeasure{0, 4});
  CHECK(LexMeasure{0, 100} < LexMeasure{1, 0});
  CHECK(LexMeasure{1, 4} < LexMeasure{1, 5});
  CHECK_FALSE(LexMeasure{1, 5} < LexMeasure{1, 5});
}

TEST_CASE("inverse image of <") {
  const Relation<Expr> byM = inverseImage<Expr>([](const Expr& e) { return shostakMeasure(e); });
  const Relation<Expr> bySize = inverseImage<Expr>([](const Expr& e) { return size(e); });
  CHECK(byM(at("a"), If(at("a"), at("b"), at("c"))));
  CHECK_FALSE(bySize(If(at("a"), at("b"), at("c")), at("a")));
  for (const auto& e : enumerate({2, parseAlphabet("a,b")})) {
    REQUIRE_FALSE(byM(e, e));
    REQUIRE_FALSE(bySize(e, e));
  }
}

TEST_CASE("lexicographic combination") {
  const Relation<int> lt = [](int a, int b) { return a < b; };
  const auto lex = lexCombine<int, int>(lt, lt);
  CHECK(lex({0, 5}, {1, 0}));
  CHECK(lex({1, 0}, {1, 5}));
  CHECK_FALSE(lex({1, 5}, {1, 5}));
  // Irreflexive, and on naturals it coincides with the pair ordering.
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      REQUIRE_FALSE(lex({a, b}, {a, b}));
      for (int c = 0; c < 6; ++c)
        for (int d = 0; d < 6; ++d) REQUIRE(lex({a, b}, {c, d}) == (std::pair{a, b} < std::pair{c, d}));
    }
  // Combining two measure relations matches LexMeasure ordering.
  const Relation<std::uint64_t> nat = [](std::uint64_t a, std::uint64_t b) { return a < b; };
  const auto lexU = lexCombine<std::uint64_t, std::uint64_t>(nat, nat);
  const auto all = enumerate({2, parseAlphabet("a")});
  for (const auto& x : all)
    for (const auto& y : all) {
      const LexMeasure lx = lexNorm2Measure(x), ly = lexNorm2Measure(y);
      REQUIRE(lexU({lx.testedIfs, lx.sizeVal}, {ly.testedIfs, ly.sizeVal}) == (lx < ly));
    }
}
