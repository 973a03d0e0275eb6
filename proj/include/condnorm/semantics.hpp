#pragma once
// Boolean meaning of expressions: direct evaluation, bit-sliced truth tables,
// semantic equivalence and a tautology checker that walks normal forms.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "condnorm/expr.hpp"
#include "condnorm/simd/truth_table_kernels.hpp"

namespace condnorm {

using Assignment = std::map<Symbol, bool>;

class UnboundAtomError : public std::invalid_argument {
 public:
  explicit UnboundAtomError(const Symbol& s)
      : std::invalid_argument("atom '" + s.name() + "' has no binding") {}
};

class AtomLimitError : public std::length_error {
 public:
  AtomLimitError(std::size_t atoms, std::size_t limit)
      : std::length_error(std::to_string(atoms) + " atoms exceed the truth-table limit of " +
                          std::to_string(limit)) {}
};

inline constexpr std::size_t kDefaultAtomLimit = 20;

// Throws UnboundAtomError if some atom of e is not bound by rho.
bool eval(const Expr& e, const Assignment& rho);

// Values of an expression under all 2^k assignments to `vars`.
class TruthTable {
 public:
  TruthTable(const Expr& e, std::vector<Symbol> vars,
             const simd::KernelTable& kernels = simd::activeKernels());

  const std::vector<Symbol>& vars() const noexcept { return vars_; }
  std::size_t assignmentCount() const noexcept { return std::size_t{1} << vars_.size(); }
  bool value(std::size_t assignmentIndex) const;
  Assignment assignment(std::size_t assignmentIndex) const;

  // First assignment index where the expression is false.
  std::optional<std::size_t> firstFalse(const simd::KernelTable& kernels = simd::activeKernels()) const;

  // Raw words; bits past assignmentCount() are zero.
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const TruthTable& a, const TruthTable& b) {
    return a.vars_ == b.vars_ && a.words_ == b.words_;
  }

 private:
  std::vector<Symbol> vars_;
  std::vector<std::uint64_t> words_;
};

bool semanticallyEqual(const Expr& e1, const Expr& e2, std::size_t atomLimit = kDefaultAtomLimit);

// Truth-table route: a falsifying assignment over atomsOf(e), if one exists.
std::optional<Assignment> truthTableCounterexample(const Expr& e,
                                                   std::size_t atomLimit = kDefaultAtomLimit);

struct TautologyVerdict {
  bool tautology = false;
  // Over atomsOf(e); unconstrained atoms are false.
  std::optional<Assignment> counterexample;
};

// Normalizes with norm1 and walks the normal form under assumption contexts.
TautologyVerdict checkTautology(const Expr& e);
bool isTautology(const Expr& e);

// `name=0|1` pairs, comma-separated, in the order of `order` (or map order).
std::string formatAssignment(const Assignment& rho, const std::vector<Symbol>& order = {});
Assignment parseAssignment(std::string_view text);

}  // namespace condnorm
