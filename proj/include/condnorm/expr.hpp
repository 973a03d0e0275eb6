#pragma once
// Conditional expressions: atoms and three-way If nodes.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace condnorm {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : std::runtime_error("syntax error at " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A propositional letter. Nonempty, [A-Za-z_][A-Za-z0-9_]*, never `if`.
class Symbol {
 public:
  explicit Symbol(std::string name);

  static bool isValidName(std::string_view name) noexcept;

  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;

 private:
  std::string name_;
};

// Immutable expression tree with value semantics. Copies share structure.
class Expr {
 public:
  static Expr atom(Symbol sym);
  static Expr atom(std::string name) { return atom(Symbol(std::move(name))); }
  static Expr ifNode(Expr test, Expr thenB, Expr elseB);

  bool isAtom() const noexcept;
  bool isIf() const noexcept { return !isAtom(); }

  // Precondition: isAtom().
  const Symbol& symbol() const;
  // Preconditions: isIf().
  const Expr& test() const;
  const Expr& thenBranch() const;
  const Expr& elseBranch() const;

  // Total node count (atoms and If nodes each count one). Cached.
  std::uint64_t size() const noexcept;
  std::size_t hash() const noexcept;
  // Shared subtrees have the same identity.
  const void* identity() const noexcept { return node_.get(); }

  friend bool operator==(const Expr& a, const Expr& b) noexcept;

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Expr::Node {
  std::optional<Symbol> sym;
  // Empty for atoms.
  std::vector<Expr> kids;
  std::uint64_t size = 1;
  std::size_t hash = 0;

  ~Node();
};

// Post-order fold with an explicit work stack, so tree depth is bounded by
// heap memory rather than the call stack.
template <class R, class AtomFn, class IfFn>
R foldExpr(const Expr& root, AtomFn onAtom, IfFn onIf) {
  struct Item {
    const Expr* e;
    bool expanded;
  };
  std::vector<Item> work{{&root, false}};
  std::vector<R> values;
  while (!work.empty()) {
    Item item = work.back();
    work.pop_back();
    const Expr& e = *item.e;
    if (e.isAtom()) {
      values.push_back(onAtom(e));
    } else if (!item.expanded) {
      work.push_back({item.e, true});
      work.push_back({&e.elseBranch(), false});
      work.push_back({&e.thenBranch(), false});
      work.push_back({&e.test(), false});
    } else {
      R z = std::move(values.back());
      values.pop_back();
      R y = std::move(values.back());
      values.pop_back();
      R x = std::move(values.back());
      values.pop_back();
      values.push_back(onIf(e, std::move(x), std::move(y), std::move(z)));
    }
  }
  return std::move(values.back());
}

// Like foldExpr, but evaluates each shared subtree once.
template <class R, class AtomFn, class IfFn>
R foldExprShared(const Expr& root, AtomFn onAtom, IfFn onIf) {
  std::unordered_map<const void*, R> memo;
  std::vector<const Expr*> work{&root};
  while (!work.empty()) {
    const Expr& e = *work.back();
    if (memo.contains(e.identity())) {
      work.pop_back();
      continue;
    }
    if (e.isAtom()) {
      memo.emplace(e.identity(), onAtom(e));
      work.pop_back();
      continue;
    }
    const std::size_t before = work.size();
    for (const Expr* kid : {&e.elseBranch(), &e.thenBranch(), &e.test()})
      if (!memo.contains(kid->identity())) work.push_back(kid);
    if (work.size() != before) continue;
    memo.emplace(e.identity(), onIf(e, memo.at(e.test().identity()), memo.at(e.thenBranch().identity()),
                                    memo.at(e.elseBranch().identity())));
    work.pop_back();
  }
  return std::move(memo.at(root.identity()));
}

Expr parse(std::string_view text);
std::string print(const Expr& e);

std::uint64_t size(const Expr& e) noexcept;
// Length of the longest root-to-leaf path counted in If nodes.
std::uint64_t depth(const Expr& e);
std::uint64_t ifCount(const Expr& e);
// Distinct symbols in first-occurrence (pre-order) order.
std::vector<Symbol> atomsOf(const Expr& e);

struct ExprUniverse {
  unsigned maxIfNodes = 0;
  std::vector<Symbol> alphabet;

  // Throws std::invalid_argument when the alphabet is empty or has duplicates.
  void validate() const;
};

// Every expression with at most maxIfNodes If nodes over the alphabet, each
// exactly once, ordered by If count and then by canonical print.
std::vector<Expr> enumerate(const ExprUniverse& u);
// Closed-form size of enumerate(u): sum over i of C(3i, i) / (2i + 1) * n^(2i+1).
std::uint64_t universeSize(const ExprUniverse& u);

Expr randomExpr(std::uint64_t seed, unsigned maxDepth, const std::vector<Symbol>& alphabet);

std::vector<Symbol> parseAlphabet(std::string_view commaSeparated);

}  // namespace condnorm

template <>
struct std::hash<condnorm::Expr> {
  std::size_t operator()(const condnorm::Expr& e) const noexcept { return e.hash(); }
};
