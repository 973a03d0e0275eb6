#pragma once
// Recursion relations of norm and norm2 as decision procedures, predecessor
// enumeration, and empirical well-foundedness evidence (bounded chain search
// and measure witnesses).

#include <cstdint>
#include <string>
#include <vector>

#include "condnorm/expr.hpp"

namespace condnorm {

enum class RelationKind { PrecNorm, PrecNorm2 };

std::string_view relationName(RelationKind kind);  // "PREC_NORM" / "PREC_NORM2"

// x such that evaluating norm(y) calls norm(x) directly.
std::vector<Expr> predsNorm(const Expr& y);

bool precNorm(const Expr& x, const Expr& y);

// The If-If clause also admits If(u, v', w') for any normal v', w', decided by
// destructuring x.
bool precNorm2(const Expr& x, const Expr& y);

// Predecessors under PrecNorm2 with the existential clause instantiated from
// the normal members of `pool`.
std::vector<Expr> predsNorm2(const Expr& y, const std::vector<Expr>& pool);

struct ChainReport {
  Expr start;
  // Number of descending steps in witnessChain.
  std::uint64_t longest = 0;
  // The search stopped early; says nothing about infinite chains.
  bool budgetHit = false;
  // A predecessor cycle was found, i.e. an infinite descending chain.
  bool cycleDetected = false;
  // Candidate pool size used for the existential clause (PrecNorm2 only).
  std::size_t poolSize = 0;
  // Strictly descending; witnessChain[0] == start.
  std::vector<Expr> witnessChain;
};

// Longest descending chain from `start`, by memoized depth-first search over
// predecessors. `budget` bounds the number of distinct nodes expanded.
ChainReport longestChain(RelationKind kind, const Expr& start, std::uint64_t budget,
                         const std::vector<Expr>& pool = {});

struct WitnessCounterexample {
  std::string x;
  std::string y;
  std::string detail;
};

struct WitnessReport {
  RelationKind kind;
  std::uint64_t edgesChecked = 0;
  // Sorted by (x, y).
  std::vector<WitnessCounterexample> counterexamples;

  bool ok() const noexcept { return counterexamples.empty(); }
  // {"kind", "edgesChecked", "counterexamples": [{"x","y"}]}
  std::string toJson(int indent = -1) const;
};

struct WitnessOptions {
  // Existential-clause instances use normal members of the universe with at
  // most this many If nodes.
  unsigned existentialPoolMaxIfs = 1;
  unsigned parallelism = 1;
  std::size_t maxCounterexamples = 50;
};

// PrecNorm: m(x) < m(y) over all predecessor pairs reachable from the universe.
// PrecNorm2: lexNorm2Measure(x) < lexNorm2Measure(y) over norm2 trace edges
// and the syntactic predecessor clauses of each universe member.
WitnessReport verifyMeasureWitness(RelationKind kind, const ExprUniverse& universe,
                                   const WitnessOptions& opts = {});
WitnessReport verifyMeasureWitness(RelationKind kind, const std::vector<Expr>& members,
                                   const std::vector<Expr>& existentialPool,
                                   const WitnessOptions& opts = {});

}  // namespace condnorm
