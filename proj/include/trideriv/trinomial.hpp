#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "trideriv/abelian.hpp"

namespace trideriv {

/// Generator T_ij: monomial index i in {0,1,2}, position j in 1..n_i.
struct VarIndex {
  int i = 0;
  int j = 1;

  friend auto operator<=>(const VarIndex&, const VarIndex&) = default;
};

std::string varName(VarIndex v);

/// The counts (n_0, n_1, n_2); fixes the variable set T_01 .. T_2n_2 and the
/// flat ordering T_01 < ... < T_0n_0 < T_11 < ... < T_2n_2.
class VarLayout {
 public:
  VarLayout() = default;
  explicit VarLayout(std::array<int, 3> counts);

  int count(int i) const { return counts_.at(static_cast<std::size_t>(i)); }
  std::size_t size() const { return size_; }
  std::size_t flat(VarIndex v) const;
  VarIndex var(std::size_t flat) const;
  const std::array<int, 3>& counts() const { return counts_; }

  friend bool operator==(const VarLayout&, const VarLayout&) = default;

 private:
  std::array<int, 3> counts_{1, 1, 1};
  std::size_t size_ = 3;
};

/// Exponent data of g = T_0^{l_0} + T_1^{l_1} + T_2^{l_2}.
class TrinomialSpec {
 public:
  explicit TrinomialSpec(std::array<std::vector<int>, 3> exponents);

  const std::vector<int>& exponents(int i) const { return l_.at(static_cast<std::size_t>(i)); }
  const std::array<std::vector<int>, 3>& allExponents() const { return l_; }
  int exponent(VarIndex v) const;
  int n(int i) const { return static_cast<int>(exponents(i).size()); }
  std::size_t n() const { return layout_.size(); }
  int maxExponent() const;
  const VarLayout& layout() const { return layout_; }

  friend bool operator==(const TrinomialSpec& a, const TrinomialSpec& b) { return a.l_ == b.l_; }
  friend bool operator<(const TrinomialSpec& a, const TrinomialSpec& b) { return a.l_ < b.l_; }

 private:
  std::array<std::vector<int>, 3> l_;
  VarLayout layout_;
};

/// Accepts "l0=1,3; l1=3; l2=2" or "T01*T02^3 + T11^3 + T21^2".
TrinomialSpec parseTrinomial(std::string_view text);

std::string renderPolynomial(const TrinomialSpec& s);
std::string renderStructured(const TrinomialSpec& s);

/// The 2 x n matrix with rows (-l_0, l_1, 0) and (-l_0, 0, l_2).
IntMatrix exponentMatrixL(const TrinomialSpec& s);

std::array<int, 3> monomialGcds(const TrinomialSpec& s);

bool hasLinearTerm(const TrinomialSpec& s);

/// Pairwise coprime monomial gcds. Throws LinearTermError if g has a linear term.
bool isFactorial(const TrinomialSpec& s);

/// At most one monomial contains a variable with exponent 1.
bool theoremHypothesis(const TrinomialSpec& s);

/// Every exponent is at least 2.
bool rigidityCriterion(const TrinomialSpec& s);

/// Some exponent equals 1; the negation of rigidityCriterion.
bool existenceCriterion(const TrinomialSpec& s);

/// Representative of the orbit under permuting monomials and permuting the
/// variables inside each monomial.
TrinomialSpec canonicalForm(const TrinomialSpec& s);

}  // namespace trideriv
