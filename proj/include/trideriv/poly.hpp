#pragma once

// Sparse polynomials in the T_ij over the Gaussian rationals Q(i), with
// normal forms modulo the trinomial and K-homogeneous decomposition.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trideriv/abelian.hpp"
#include "trideriv/grading.hpp"
#include "trideriv/trinomial.hpp"

namespace trideriv {

/// re + im*i with i^2 = -1.
class Coeff {
 public:
  Coeff() = default;
  Coeff(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Coeff(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  Coeff(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Coeff imaginaryUnit() { return Coeff(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool isZero() const { return re_ == 0 && im_ == 0; }
  bool isReal() const { return im_ == 0; }

  Coeff operator+(const Coeff& o) const { return {re_ + o.re_, im_ + o.im_}; }
  Coeff operator-(const Coeff& o) const { return {re_ - o.re_, im_ - o.im_}; }
  Coeff operator-() const { return {-re_, -im_}; }
  Coeff operator*(const Coeff& o) const {
    return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
  }
  Coeff operator/(const Coeff& o) const;
  Coeff& operator+=(const Coeff& o) { return *this = *this + o; }
  Coeff& operator-=(const Coeff& o) { return *this = *this - o; }
  Coeff& operator*=(const Coeff& o) { return *this = *this * o; }

  friend bool operator==(const Coeff& a, const Coeff& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

  /// "3/2", "-i", "2i", "(-1/2+3i)"
  std::string toString() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic order with T_01 < T_02 < ... < T_2n_2.
struct MonomialOrder {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

class Poly {
 public:
  using Terms = std::map<Exponents, Coeff, MonomialOrder>;

  explicit Poly(VarLayout layout) : layout_(layout) {}

  static Poly constant(const VarLayout& layout, const Coeff& c);
  static Poly variable(const VarLayout& layout, VarIndex v);
  static Poly monomial(const VarLayout& layout, Exponents exps, const Coeff& c);

  const VarLayout& layout() const { return layout_; }
  const Terms& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  std::size_t termCount() const { return terms_.size(); }

  /// Largest term in the monomial order; requires a nonzero polynomial.
  const Terms::value_type& leadingTerm() const;

  void addTerm(const Exponents& exps, const Coeff& c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Coeff& c) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly pow(unsigned k) const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.layout_ == b.layout_ && a.terms_ == b.terms_;
  }

  /// Terms in decreasing order, e.g. "(-1/2+3i)*T01^2 - T11 + 3".
  std::string toString() const;

 private:
  void checkLayout(const Poly& o) const;

  VarLayout layout_;
  Terms terms_;
};

Poly operator*(const Coeff& c, const Poly& p);

/// Accepts sums and products of T_ij, integer powers, rational literals such
/// as "3/2", the unit "i" (also as a suffix: "2i", "1/2i") and parentheses.
Poly parsePoly(std::string_view text, const VarLayout& layout);

Poly trinomialPoly(const TrinomialSpec& s);

Poly partialDerivative(const Poly& p, VarIndex v);
Poly partialDerivative(const Poly& p, std::size_t flat_var);

struct DivisionResult {
  Poly quotient;
  Poly remainder;
};

/// Multivariate division by a single divisor; the remainder has no term
/// divisible by the leading monomial of the divisor.
DivisionResult divide(const Poly& p, const Poly& divisor);

/// The quotient if divisor divides p exactly in K[T].
std::optional<Poly> exactQuotient(const Poly& p, const Poly& divisor);

/// Canonical representative of p in R(g) = K[T] / (g).
Poly normalFormModG(const Poly& p, const TrinomialSpec& s);

GroupElement monomialDegree(const Exponents& exps, const KGrading& g);

struct GroupElementLess {
  bool operator()(const GroupElement& a, const GroupElement& b) const { return a < b; }
};

std::map<GroupElement, Poly, GroupElementLess> homogeneousComponents(const Poly& p,
                                                                     const KGrading& g);

/// Degree of a nonzero homogeneous polynomial; nullopt if it mixes degrees.
/// Throws ZeroPolynomial for p = 0.
std::optional<GroupElement> kDegreeOf(const Poly& p, const KGrading& g);

}  // namespace trideriv
