#include "condnorm/semantics.hpp"

#include <algorithm>
#include <unordered_map>

#include "condnorm/normalize.hpp"

namespace condnorm {

namespace {

// Column of variable i among 64 consecutive assignments (i < 6).
constexpr std::uint64_t kLowColumns[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

std::vector<std::uint64_t> column(std::size_t var, std::size_t varCount) {
  const std::size_t words = varCount <= 6 ? 1 : std::size_t{1} << (varCount - 6);
  std::vector<std::uint64_t> out(words);
  for (std::size_t w = 0; w < words; ++w) {
    if (var < 6) {
      out[w] = kLowColumns[var];
    } else {
      out[w] = ((w >> (var - 6)) & 1) ? ~std::uint64_t{0} : 0;
    }
  }
  return out;
}

std::uint64_t tailMask(std::size_t varCount) {
  return varCount >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::size_t{1} << varCount)) - 1;
}

std::vector<Symbol> unionAtoms(const Expr& e1, const Expr& e2) {
  std::vector<Symbol> vars = atomsOf(e1);
  for (auto& s : atomsOf(e2))
    if (std::find(vars.begin(), vars.end(), s) == vars.end()) vars.push_back(std::move(s));
  return vars;
}

}  // namespace

bool eval(const Expr& e, const Assignment& rho) {
  for (const auto& s : atomsOf(e))
    if (!rho.contains(s)) throw UnboundAtomError(s);
  // Only the selected branch is visited.
  struct Item {
    const Expr* e;
    bool testDone;
  };
  std::vector<Item> work{{&e, false}};
  bool last = false;
  while (!work.empty()) {
    Item item = work.back();
    work.pop_back();
    if (item.e->isAtom()) {
      last = rho.at(item.e->symbol());
    } else if (!item.testDone) {
      work.push_back({item.e, true});
      work.push_back({&item.e->test(), false});
    } else {
      work.push_back({last ? &item.e->thenBranch() : &item.e->elseBranch(), false});
    }
  }
  return last;
}

TruthTable::TruthTable(const Expr& e, std::vector<Symbol> vars, const simd::KernelTable& kernels)
    : vars_(std::move(vars)) {
  if (vars_.size() >= 63) throw AtomLimitError(vars_.size(), 62);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vars_.size(); ++i) index.emplace(vars_[i].name(), i);
  std::vector<std::vector<std::uint64_t>> columns;
  for (std::size_t i = 0; i < vars_.size(); ++i) columns.push_back(column(i, vars_.size()));

  using Words = std::vector<std::uint64_t>;
  words_ = foldExprShared<Words>(
      e,
      [&](const Expr& atom) -> Words {
        auto it = index.find(atom.symbol().name());
        if (it == index.end()) throw UnboundAtomError(atom.symbol());
        return columns[it->second];
      },
      [&](const Expr&, Words t, Words y, Words z) {
        kernels.select(t, t, y, z);
        return t;
      });
  words_.back() &= tailMask(vars_.size());
}

bool TruthTable::value(std::size_t assignmentIndex) const {
  return (words_[assignmentIndex / 64] >> (assignmentIndex % 64)) & 1;
}

Assignment TruthTable::assignment(std::size_t assignmentIndex) const {
  Assignment rho;
  for (std::size_t i = 0; i < vars_.size(); ++i) rho[vars_[i]] = (assignmentIndex >> i) & 1;
  return rho;
}

std::optional<std::size_t> TruthTable::firstFalse(const simd::KernelTable& kernels) const {
  std::vector<std::uint64_t> padded = words_;
  padded.back() |= ~tailMask(vars_.size());
  const std::size_t w = kernels.firstNotAllOnes(padded);
  if (w == padded.size()) return std::nullopt;
  const auto bit = static_cast<std::size_t>(__builtin_ctzll(~padded[w]));
  return w * 64 + bit;
}

bool semanticallyEqual(const Expr& e1, const Expr& e2, std::size_t atomLimit) {
  std::vector<Symbol> vars = unionAtoms(e1, e2);
  if (vars.size() > atomLimit) throw AtomLimitError(vars.size(), atomLimit);
  return TruthTable(e1, vars) == TruthTable(e2, vars);
}

std::optional<Assignment> truthTableCounterexample(const Expr& e, std::size_t atomLimit) {
  std::vector<Symbol> vars = atomsOf(e);
  if (vars.size() > atomLimit) throw AtomLimitError(vars.size(), atomLimit);
  TruthTable table(e, std::move(vars));
  if (auto idx = table.firstFalse()) return table.assignment(*idx);
  return std::nullopt;
}

TautologyVerdict checkTautology(const Expr& e) {
  const Expr normal = norm1(e);
  struct Item {
    const Expr* e;
    Assignment assumed;
  };
  std::vector<Item> work;
  work.push_back({&normal, {}});
  while (!work.empty()) {
    Item item = std::move(work.back());
    work.pop_back();
    const Expr& x = *item.e;
    if (x.isAtom()) {
      auto it = item.assumed.find(x.symbol());
      if (it != item.assumed.end() && it->second) continue;
      Assignment rho = std::move(item.assumed);
      rho[x.symbol()] = false;
      for (const auto& s : atomsOf(e)) rho.try_emplace(s, false);
      return {false, std::move(rho)};
    }
    if (x.test().isIf()) throw std::logic_error("tautology walk reached a tested If: " + print(x));
    const Symbol& a = x.test().symbol();
    if (auto it = item.assumed.find(a); it != item.assumed.end()) {
      work.push_back({it->second ? &x.thenBranch() : &x.elseBranch(), std::move(item.assumed)});
      continue;
    }
    Assignment whenFalse = item.assumed;
    whenFalse[a] = false;
    item.assumed[a] = true;
    work.push_back({&x.elseBranch(), std::move(whenFalse)});
    work.push_back({&x.thenBranch(), std::move(item.assumed)});
  }
  return {true, std::nullopt};
}

bool isTautology(const Expr& e) { return checkTautology(e).tautology; }

std::string formatAssignment(const Assignment& rho, const std::vector<Symbol>& order) {
  std::string out;
  auto emit = [&](const Symbol& s, bool v) {
    if (!out.empty()) out += ',';
    out += s.name();
    out += v ? "=1" : "=0";
  };
  if (order.empty()) {
    for (const auto& [s, v] : rho) emit(s, v);
  } else {
    for (const auto& s : order)
      if (auto it = rho.find(s); it != rho.end()) emit(s, it->second);
  }
  return out;
}

Assignment parseAssignment(std::string_view text) {
  Assignment rho;
  if (text.empty()) return rho;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view pair = text.substr(start, end - start);
    const std::size_t eq = pair.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("expected name=0|1, got '" + std::string(pair) + "'");
    const std::string_view value = pair.substr(eq + 1);
    if (value != "0" && value != "1") throw std::invalid_argument("binding value must be 0 or 1 in '" + std::string(pair) + "'");
    Symbol s{std::string(pair.substr(0, eq))};
    if (!rho.emplace(std::move(s), value == "1").second)
      throw std::invalid_argument("duplicate binding in '" + std::string(text) + "'");
    start = end + 1;
  }
  return rho;
}

}  // namespace condnorm
