#include <doctest.h>

#include <json.hpp>

#include "condnorm/normalize.hpp"
#include "condnorm/suites.hpp"

using namespace condnorm;

namespace {

VerifySuiteConfig config(unsigned maxIfs, const char* alphabet, std::vector<Suite> suites) {
  VerifySuiteConfig cfg;
  cfg.maxIfNodes = maxIfs;
  cfg.alphabet = parseAlphabet(alphabet);
  cfg.suites = std::move(suites);
  return cfg;
}

}  // namespace

TEST_CASE("suite names round-trip") {
  for (Suite s : allSuites()) CHECK(suiteFromName(suiteName(s)) == s);
  CHECK(allSuites().size() == 9);
  CHECK_FALSE(suiteFromName("everything"));
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(config(5, "a", {Suite::Equivalence}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(config(1, "a", {}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(config(1, "a,a", {Suite::Isn}).validate(), std::invalid_argument);
  VerifySuiteConfig zeroFuel = config(1, "a", {Suite::Isn});
  zeroFuel.fuelOverride = 0;
  CHECK_THROWS_AS(zeroFuel.validate(), std::invalid_argument);
  VerifySuiteConfig noRoom = config(1, "a", {Suite::Isn});
  noRoom.randomMaxNormalSize = 0;
  CHECK_THROWS_AS(noRoom.validate(), std::invalid_argument);
  CHECK_NOTHROW(config(4, "a", {Suite::Isn}).validate());
}

TEST_CASE("random members respect the normal-form size bound") {
  VerifySuiteConfig cfg = config(0, "a,b", {Suite::Equivalence});
  cfg.randomSamples = 500;
  cfg.randomMaxNormalSize = 64;
  const std::vector<Expr> members = verificationMembers(cfg);
  REQUIRE(members.size() == 2 + 500);
  for (const auto& e : members) CHECK(size(norm1(e)) <= 64);
  std::vector<Expr> expected;
  for (std::uint64_t seed = cfg.seed; expected.size() < 500; ++seed) {
    Expr e = randomExpr(seed, cfg.randomDepth, cfg.alphabet);
    if (size(norm1(e)) <= 64) expected.push_back(e);
  }
  CHECK(std::equal(expected.begin(), expected.end(), members.begin() + 2));
}

TEST_CASE("equivalence over the one-letter two-If universe checks five expressions") {
  const VerifyReport r = runVerify(config(2, "a", {Suite::Equivalence}));
  REQUIRE(r.suites.size() == 1);
  CHECK(r.passed());
  CHECK(r.universeSize == 5);
  CHECK(r.suites[0].expressionsChecked() == 5);
}

TEST_CASE("measure decrease on a single atom has no edges") {
  const VerifyReport r = runVerify(config(0, "a", {Suite::MeasureDecrease}));
  CHECK(r.passed());
  CHECK(r.suites[0].edgesChecked() == 0);
}

TEST_CASE("every suite passes on a small universe with random samples") {
  VerifySuiteConfig cfg = config(1, "a,b,c", allSuites());
  cfg.randomSamples = 50;
  cfg.randomDepth = 4;
  const VerifyReport r = runVerify(cfg);
  for (const auto& s : r.suites) {
    CAPTURE(suiteName(s.suite));
    CHECK(s.passed());
    CHECK(s.expressionsChecked() > 0);
  }
}

TEST_CASE("too little fuel is reported as counterexamples") {
  VerifySuiteConfig cfg = config(2, "a", {Suite::Equivalence});
  cfg.fuelOverride = 2;
  const VerifyReport r = runVerify(cfg);
  CHECK_FALSE(r.passed());
  const CheckResult& c = r.suites[0].checks[0];
  CHECK(c.failures > 0);
  CHECK(std::is_sorted(c.counterexamples.begin(), c.counterexamples.end(),
                       [](const auto& a, const auto& b) { return a.expr < b.expr; }));
}

TEST_CASE("reports do not depend on parallelism") {
  VerifySuiteConfig cfg = config(1, "a,b,c", allSuites());
  cfg.randomSamples = 20;
  const std::string serial = runVerify(cfg).toJson();
  cfg.parallelism = 3;
  const std::string parallel = runVerify(cfg).toJson();
  // Config echo differs only in parallelism, which is not serialized.
  CHECK(serial == parallel);
  const auto j = nlohmann::json::parse(serial);
  CHECK(j["passed"] == true);
  CHECK(j["suites"].size() == 9);
  CHECK(j["suites"][0]["suite"] == "measure-decrease");
}

TEST_CASE("counterexample lists are capped and stable under sharding") {
  VerifySuiteConfig cfg = config(3, "a,b", {Suite::MeasureDecrease});
  cfg.fuelOverride = 1;
  cfg.maxCounterexamples = 5;
  const VerifyReport one = runVerify(cfg);
  cfg.parallelism = 4;
  const VerifyReport four = runVerify(cfg);
  const CheckResult& a = one.suites[0].checks[0];
  const CheckResult& b = four.suites[0].checks[0];
  CHECK(a.counterexamples.size() == 5);
  CHECK(a.failures == b.failures);
  for (std::size_t i = 0; i < 5; ++i) CHECK(a.counterexamples[i].expr == b.counterexamples[i].expr);
}
