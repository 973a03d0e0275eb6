#pragma once
// Measure functions on expressions and the well-founded relation combinators
// used to argue termination of the normalizers.

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "condnorm/expr.hpp"

namespace condnorm {

// Unbounded nonnegative integer.
using Measure = boost::multiprecision::cpp_int;

// m(At a) = 1, m(If x y z) = m(x) + m(x)m(y) + m(x)m(z). Always >= 1.
Measure shostakMeasure(const Expr& e);

// Number of If nodes whose test is itself an If node.
std::uint64_t testedIfCount(const Expr& e);

// Nesting of Ifs along the test spine: At -> 0, If(x, _, _) -> 1 + ifDepth(x).
std::uint64_t ifDepth(const Expr& e);

struct LexMeasure {
  std::uint64_t testedIfs = 0;
  std::uint64_t sizeVal = 0;

  friend bool operator==(const LexMeasure&, const LexMeasure&) = default;
  // Member order makes the defaulted comparison lexicographic.
  friend auto operator<=>(const LexMeasure&, const LexMeasure&) = default;
};

std::ostream& operator<<(std::ostream& os, const LexMeasure& lm);

LexMeasure lexNorm2Measure(const Expr& e);

// Saturating conversion used when a measure becomes a fuel budget.
std::uint64_t saturateToU64(const Measure& m);

template <class T>
using Relation = std::function<bool(const T&, const T&)>;

// holds(a', a) iff f(a') < f(a).
template <class T, class F>
Relation<T> inverseImage(F f) {
  return [f = std::move(f)](const T& lhs, const T& rhs) { return f(lhs) < f(rhs); };
}

// <a', b'> below <a, b> iff a' rA a, or a' = a and b' rB b.
template <class A, class B>
Relation<std::pair<A, B>> lexCombine(Relation<A> rA, Relation<B> rB) {
  return [rA = std::move(rA), rB = std::move(rB)](const std::pair<A, B>& lhs,
                                                  const std::pair<A, B>& rhs) {
    return rA(lhs.first, rhs.first) || (lhs.first == rhs.first && rB(lhs.second, rhs.second));
  };
}

}  // namespace condnorm
