#include "condnorm/expr.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <unordered_set>

namespace condnorm {

namespace {

constexpr std::size_t kIfSalt = 0x9e3779b97f4a7c15ULL;

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + kIfSalt + (seed << 6) + (seed >> 2));
}

bool isSymbolStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool isSymbolChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

Symbol::Symbol(std::string name) : name_(std::move(name)) {
  if (name_ == "if") throw std::invalid_argument("`if` is reserved and cannot name an atom");
  if (!isValidName(name_)) throw std::invalid_argument("invalid symbol name '" + name_ + "'");
}

bool Symbol::isValidName(std::string_view name) noexcept {
  if (name.empty() || name == "if" || !isSymbolStart(name.front())) return false;
  return std::all_of(name.begin(), name.end(), isSymbolChar);
}

Expr::Node::~Node() {
  // Unlink uniquely owned descendants iteratively.
  std::vector<std::shared_ptr<const Node>> pending;
  for (auto& k : kids) pending.push_back(std::move(k.node_));
  while (!pending.empty()) {
    std::shared_ptr<const Node> p = std::move(pending.back());
    pending.pop_back();
    if (p && p.use_count() == 1) {
      for (auto& k : const_cast<Node&>(*p).kids) pending.push_back(std::move(k.node_));
    }
  }
}

Expr Expr::atom(Symbol sym) {
  auto n = std::make_shared<Node>();
  n->hash = std::hash<std::string>{}(sym.name());
  n->sym = std::move(sym);
  return Expr(std::move(n));
}

Expr Expr::ifNode(Expr test, Expr thenB, Expr elseB) {
  auto n = std::make_shared<Node>();
  n->size = 1 + test.size() + thenB.size() + elseB.size();
  std::size_t h = kIfSalt;
  h = mix(h, test.hash());
  h = mix(h, thenB.hash() * 3);
  h = mix(h, elseB.hash() * 7);
  n->hash = h;
  n->kids.reserve(3);
  n->kids.push_back(std::move(test));
  n->kids.push_back(std::move(thenB));
  n->kids.push_back(std::move(elseB));
  return Expr(std::move(n));
}

bool Expr::isAtom() const noexcept { return node_->kids.empty(); }

const Symbol& Expr::symbol() const {
  if (!isAtom()) throw std::logic_error("symbol() on an If node");
  return *node_->sym;
}

const Expr& Expr::test() const {
  if (isAtom()) throw std::logic_error("test() on an atom");
  return node_->kids[0];
}

const Expr& Expr::thenBranch() const {
  if (isAtom()) throw std::logic_error("thenBranch() on an atom");
  return node_->kids[1];
}

const Expr& Expr::elseBranch() const {
  if (isAtom()) throw std::logic_error("elseBranch() on an atom");
  return node_->kids[2];
}

std::uint64_t Expr::size() const noexcept { return node_->size; }

std::size_t Expr::hash() const noexcept { return node_->hash; }

bool operator==(const Expr& a, const Expr& b) noexcept {
  std::vector<std::pair<const Expr*, const Expr*>> work{{&a, &b}};
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (x->node_ == y->node_) continue;
    if (x->node_->hash != y->node_->hash || x->node_->size != y->node_->size) return false;
    if (x->isAtom() != y->isAtom()) return false;
    if (x->isAtom()) {
      if (x->node_->sym != y->node_->sym) return false;
      continue;
    }
    for (std::size_t i = 0; i < 3; ++i) work.emplace_back(&x->node_->kids[i], &y->node_->kids[i]);
  }
  return true;
}

Expr parse(std::string_view text) {
  struct Open {
    std::size_t position;
    std::vector<Expr> parts;
  };
  std::vector<Open> open;
  std::optional<Expr> done;
  std::size_t i = 0;

  auto skipSpace = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto finish = [&](Expr e, std::size_t at) {
    if (open.empty()) {
      if (done) throw SyntaxError(at, "trailing input after expression");
      done = std::move(e);
      return;
    }
    if (open.back().parts.size() == 3) throw SyntaxError(at, "`if` takes exactly three operands");
    open.back().parts.push_back(std::move(e));
  };

  for (skipSpace(); i < text.size(); skipSpace()) {
    const std::size_t start = i;
    const char c = text[i];
    if (done) throw SyntaxError(start, "trailing input after expression");
    if (c == '(') {
      ++i;
      skipSpace();
      std::size_t kw = i;
      while (i < text.size() && isSymbolChar(text[i])) ++i;
      if (text.substr(kw, i - kw) != "if") throw SyntaxError(kw, "expected `if` after `(`");
      open.push_back({start, {}});
    } else if (c == ')') {
      ++i;
      if (open.empty()) throw SyntaxError(start, "unbalanced `)`");
      if (open.back().parts.size() != 3) throw SyntaxError(start, "`if` takes exactly three operands");
      Open node = std::move(open.back());
      open.pop_back();
      finish(Expr::ifNode(std::move(node.parts[0]), std::move(node.parts[1]), std::move(node.parts[2])),
             start);
    } else if (isSymbolStart(c)) {
      while (i < text.size() && isSymbolChar(text[i])) ++i;
      std::string name(text.substr(start, i - start));
      if (name == "if") throw SyntaxError(start, "reserved word `if` used as an atom");
      finish(Expr::atom(Symbol(std::move(name))), start);
    } else {
      throw SyntaxError(start, std::string("unexpected character '") + c + "'");
    }
  }
  if (!open.empty()) throw SyntaxError(text.size(), "unterminated `(`");
  if (!done) throw SyntaxError(text.size(), "empty input");
  return std::move(*done);
}

std::string print(const Expr& e) {
  std::string out;
  // A null entry closes the most recent If.
  std::vector<const Expr*> work{&e};
  bool needSpace = false;
  while (!work.empty()) {
    const Expr* x = work.back();
    work.pop_back();
    if (x == nullptr) {
      out += ')';
      needSpace = true;
      continue;
    }
    if (needSpace) out += ' ';
    if (x->isAtom()) {
      out += x->symbol().name();
      needSpace = true;
    } else {
      out += "(if";
      needSpace = true;
      work.push_back(nullptr);
      work.push_back(&x->elseBranch());
      work.push_back(&x->thenBranch());
      work.push_back(&x->test());
    }
  }
  return out;
}

std::uint64_t size(const Expr& e) noexcept { return e.size(); }

std::uint64_t depth(const Expr& e) {
  return foldExpr<std::uint64_t>(
      e, [](const Expr&) { return std::uint64_t{0}; },
      [](const Expr&, std::uint64_t x, std::uint64_t y, std::uint64_t z) {
        return 1 + std::max({x, y, z});
      });
}

std::uint64_t ifCount(const Expr& e) { return (e.size() - 1) / 3; }

std::vector<Symbol> atomsOf(const Expr& e) {
  std::vector<Symbol> out;
  std::unordered_set<std::string> seen;
  std::unordered_set<const void*> visited;
  std::vector<const Expr*> work{&e};
  while (!work.empty()) {
    const Expr* x = work.back();
    work.pop_back();
    if (!visited.insert(x->identity()).second) continue;
    if (x->isAtom()) {
      if (seen.insert(x->symbol().name()).second) out.push_back(x->symbol());
    } else {
      work.push_back(&x->elseBranch());
      work.push_back(&x->thenBranch());
      work.push_back(&x->test());
    }
  }
  return out;
}

void ExprUniverse::validate() const {
  if (alphabet.empty()) throw std::invalid_argument("universe alphabet is empty");
  std::unordered_set<std::string> seen;
  for (const auto& s : alphabet) {
    if (!seen.insert(s.name()).second)
      throw std::invalid_argument("duplicate symbol '" + s.name() + "' in alphabet");
  }
}

std::vector<Expr> enumerate(const ExprUniverse& u) {
  u.validate();
  // byIfs[i]: every expression with exactly i If nodes.
  std::vector<std::vector<Expr>> byIfs(u.maxIfNodes + 1);
  for (const auto& s : u.alphabet) byIfs[0].push_back(Expr::atom(s));
  for (unsigned i = 1; i <= u.maxIfNodes; ++i) {
    for (unsigned a = 0; a < i; ++a) {
      for (unsigned b = 0; a + b < i; ++b) {
        const unsigned c = i - 1 - a - b;
        for (const auto& x : byIfs[a])
          for (const auto& y : byIfs[b])
            for (const auto& z : byIfs[c]) byIfs[i].push_back(Expr::ifNode(x, y, z));
      }
    }
  }
  std::vector<Expr> out;
  for (auto& level : byIfs) {
    std::vector<std::pair<std::string, Expr>> keyed;
    keyed.reserve(level.size());
    for (auto& e : level) keyed.emplace_back(print(e), std::move(e));
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    for (auto& [key, e] : keyed) out.push_back(std::move(e));
  }
  return out;
}

std::uint64_t universeSize(const ExprUniverse& u) {
  const std::uint64_t n = u.alphabet.size();
  std::uint64_t total = 0;
  std::uint64_t leaves = n;  // n^(2i+1)
  for (unsigned i = 0; i <= u.maxIfNodes; ++i) {
    // Ternary trees with i internal nodes: C(3i, i) / (2i + 1).
    std::uint64_t binom = 1;
    for (unsigned k = 1; k <= i; ++k) binom = binom * (2 * i + k) / k;
    total += binom / (2 * i + 1) * leaves;
    leaves *= n * n;
  }
  return total;
}

Expr randomExpr(std::uint64_t seed, unsigned maxDepth, const std::vector<Symbol>& alphabet) {
  if (alphabet.empty()) throw std::invalid_argument("randomExpr needs a nonempty alphabet");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::bernoulli_distribution branch(0.5);

  struct Frame {
    unsigned budget;
    std::vector<Expr> parts;
  };
  std::vector<Frame> stack;
  std::optional<Expr> result;
  auto deliver = [&](Expr e) {
    if (stack.empty()) {
      result = std::move(e);
    } else {
      stack.back().parts.push_back(std::move(e));
    }
  };
  auto spawn = [&](unsigned budget) {
    if (budget == 0 || !branch(rng)) {
      deliver(Expr::atom(alphabet[pick(rng)]));
    } else {
      stack.push_back({budget - 1, {}});
    }
  };

  spawn(maxDepth);
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.parts.size() == 3) {
      Expr e = Expr::ifNode(std::move(top.parts[0]), std::move(top.parts[1]), std::move(top.parts[2]));
      stack.pop_back();
      deliver(std::move(e));
    } else {
      spawn(top.budget);
    }
  }
  return std::move(*result);
}

std::vector<Symbol> parseAlphabet(std::string_view commaSeparated) {
  std::vector<Symbol> out;
  std::size_t start = 0;
  while (start <= commaSeparated.size()) {
    std::size_t end = commaSeparated.find(',', start);
    if (end == std::string_view::npos) end = commaSeparated.size();
    std::string_view tok = commaSeparated.substr(start, end - start);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
    out.emplace_back(std::string(tok));
    start = end + 1;
  }
  return out;
}

}  // namespace condnorm
