#include <doctest.h>

#include <json.hpp>

#include "condnorm/measures.hpp"
#include "condnorm/normalize.hpp"
#include "condnorm/recursion_relation.hpp"

using namespace condnorm;

namespace {

Expr at(const char* name) { return Expr::atom(name); }
Expr If(Expr x, Expr y, Expr z) { return Expr::ifNode(std::move(x), std::move(y), std::move(z)); }

// Longest descending chain by exhaustive recursion without memoization.
std::uint64_t bruteLongest(const Expr& y) {
  std::uint64_t best = 0;
  for (const auto& x : predsNorm(y)) best = std::max(best, 1 + bruteLongest(x));
  return best;
}

const Expr kParent = If(If(at("u"), at("v"), at("w")), at("y"), at("z"));

}  // namespace

TEST_CASE("predsNorm clauses") {
  CHECK(predsNorm(at("a")).empty());
  CHECK(predsNorm(If(at("a"), at("y"), at("z"))) == std::vector<Expr>{at("y"), at("z")});
  CHECK(predsNorm(kParent) ==
        std::vector<Expr>{If(at("u"), If(at("v"), at("y"), at("z")), If(at("w"), at("y"), at("z")))});
}

TEST_CASE("precNorm") {
  CHECK(precNorm(at("y"), If(at("a"), at("y"), at("z"))));
  CHECK(precNorm(at("z"), If(at("a"), at("y"), at("z"))));
  CHECK_FALSE(precNorm(at("a"), at("a")));
  CHECK_FALSE(precNorm(If(at("a"), at("y"), at("z")), at("a")));
  CHECK_FALSE(precNorm(If(at("a"), at("y"), at("z")), If(at("a"), at("y"), at("z"))));
  CHECK(precNorm(predsNorm(kParent).front(), kParent));
  CHECK_FALSE(precNorm(If(at("u"), at("v"), at("w")), kParent));
}

TEST_CASE("precNorm agrees with predsNorm on every pair of a small universe") {
  const auto all = enumerate({2, parseAlphabet("a,b")});
  for (const auto& y : all) {
    const auto preds = predsNorm(y);
    for (const auto& p : preds) REQUIRE(precNorm(p, y));
    for (const auto& x : all) {
      const bool listed = std::find(preds.begin(), preds.end(), x) != preds.end();
      REQUIRE(precNorm(x, y) == listed);
    }
  }
}

TEST_CASE("precNorm2") {
  CHECK(precNorm2(If(at("v"), at("y"), at("z")), kParent));
  CHECK(precNorm2(If(at("w"), at("y"), at("z")), kParent));
  CHECK(precNorm2(If(at("u"), at("p"), at("q")), kParent));
  CHECK_FALSE(precNorm2(If(at("u"), If(If(at("a"), at("b"), at("c")), at("d"), at("e")), at("q")), kParent));
  CHECK_FALSE(precNorm2(If(at("x"), at("p"), at("q")), kParent));
  CHECK_FALSE(precNorm2(at("u"), kParent));
  CHECK_FALSE(precNorm2(at("y"), at("y")));
  CHECK(precNorm2(at("y"), If(at("a"), at("y"), at("z"))));
  // Every norm edge's successor has a normal-branch form only after normalization,
  // so precNorm does not imply precNorm2 in general.
  const Expr deep = If(If(at("u"), If(If(at("a"), at("b"), at("c")), at("d"), at("e")), at("w")), at("y"), at("z"));
  CHECK_FALSE(precNorm2(predsNorm(deep).front(), deep));
}

TEST_CASE("predsNorm2 with a candidate pool") {
  const std::vector<Expr> pool = enumerate({1, parseAlphabet("p")});  // p, (if p p p)
  const auto preds = predsNorm2(kParent, pool);
  CHECK(preds.size() == 2 + 4);
  for (const auto& x : preds) CHECK(precNorm2(x, kParent));
  CHECK(predsNorm2(If(at("a"), at("y"), at("z")), pool) == std::vector<Expr>{at("y"), at("z")});
}

TEST_CASE("longestChain for norm's relation") {
  ChainReport r = longestChain(RelationKind::PrecNorm, at("a"), 10);
  CHECK(r.longest == 0);
  CHECK(r.witnessChain == std::vector<Expr>{at("a")});

  r = longestChain(RelationKind::PrecNorm, If(at("a"), at("y"), at("z")), 100);
  CHECK(r.longest == 1);
  CHECK_FALSE(r.budgetHit);

  const Expr tested = If(If(at("a"), at("b"), at("c")), at("y"), at("z"));
  r = longestChain(RelationKind::PrecNorm, tested, 1000);
  CHECK_FALSE(r.budgetHit);
  CHECK_FALSE(r.cycleDetected);
  CHECK(r.longest == bruteLongest(tested));
  CHECK(r.longest == 3);
  REQUIRE(r.witnessChain.size() == r.longest + 1);
  CHECK(r.witnessChain.front() == tested);
  for (std::size_t i = 0; i + 1 < r.witnessChain.size(); ++i)
    CHECK(precNorm(r.witnessChain[i + 1], r.witnessChain[i]));
}

TEST_CASE("longestChain matches brute force and is bounded by m") {
  for (const auto& e : enumerate({3, parseAlphabet("a,b")})) {
    const ChainReport r = longestChain(RelationKind::PrecNorm, e, 100000);
    REQUIRE_FALSE(r.budgetHit);
    REQUIRE(r.longest == bruteLongest(e));
    REQUIRE(Measure(r.longest) < shostakMeasure(e));
  }
}

TEST_CASE("longestChain reports budget exhaustion") {
  Expr e = at("a");
  for (int i = 0; i < 6; ++i) e = If(e, at("b"), at("c"));
  const ChainReport r = longestChain(RelationKind::PrecNorm, e, 3);
  CHECK(r.budgetHit);
  CHECK(r.witnessChain.front() == e);
  for (std::size_t i = 0; i + 1 < r.witnessChain.size(); ++i)
    CHECK(precNorm(r.witnessChain[i + 1], r.witnessChain[i]));
}

TEST_CASE("longestChain for norm2's relation uses the normal pool") {
  const std::vector<Expr> pool = enumerate({1, parseAlphabet("a")});
  const ChainReport r = longestChain(RelationKind::PrecNorm2, kParent, 100000, pool);
  CHECK(r.poolSize == 2);
  CHECK_FALSE(r.budgetHit);
  CHECK_FALSE(r.cycleDetected);
  // kParent -> If(u, (if a a a), (if a a a)) -> (if a a a) -> a
  CHECK(r.longest == 3);
  for (std::size_t i = 0; i + 1 < r.witnessChain.size(); ++i) {
    CHECK(precNorm2(r.witnessChain[i + 1], r.witnessChain[i]));
    CHECK(lexNorm2Measure(r.witnessChain[i + 1]) < lexNorm2Measure(r.witnessChain[i]));
  }
}

TEST_CASE("measure witnesses over the two-letter universe") {
  const ExprUniverse u{3, parseAlphabet("a,b")};
  const WitnessReport rn = verifyMeasureWitness(RelationKind::PrecNorm, u);
  CHECK(rn.ok());
  CHECK(rn.edgesChecked > 0);
  const WitnessReport r2 = verifyMeasureWitness(RelationKind::PrecNorm2, u);
  CHECK(r2.ok());
  CHECK(r2.edgesChecked > rn.edgesChecked / 100);

  WitnessOptions par;
  par.parallelism = 3;
  CHECK(verifyMeasureWitness(RelationKind::PrecNorm, u, par).edgesChecked == rn.edgesChecked);
}

TEST_CASE("a single If-At edge is witnessed by m") {
  const WitnessReport r =
      verifyMeasureWitness(RelationKind::PrecNorm, std::vector<Expr>{If(at("a"), at("y"), at("z"))}, {});
  CHECK(r.edgesChecked == 2);
  CHECK(r.ok());
  CHECK(shostakMeasure(at("y")) < shostakMeasure(If(at("a"), at("y"), at("z"))));
}

TEST_CASE("witness reports catch a bad measure-free pair and serialize") {
  WitnessReport r{RelationKind::PrecNorm2};
  r.edgesChecked = 4;
  r.counterexamples.push_back({"a", "(if a a a)", ""});
  const auto j = nlohmann::json::parse(r.toJson());
  CHECK(r.toJson() == R"json({"kind":"PREC_NORM2","edgesChecked":4,"counterexamples":[{"x":"a","y":"(if a a a)"}]})json");
  CHECK(j["counterexamples"].size() == 1);
  CHECK_FALSE(r.ok());
}
