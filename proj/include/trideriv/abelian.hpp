#pragma once

// Exact integer linear algebra: Smith normal form, quotients Z^n / Im M and
// arithmetic in finitely generated abelian groups.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace trideriv {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transpose() const;
  std::vector<Integer> column(std::size_t c) const;
  std::vector<Integer> row(std::size_t r) const;

  void swapRows(std::size_t a, std::size_t b);
  void swapCols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void addRowMultiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void addColMultiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negateRow(std::size_t r);
  void negateCol(std::size_t c);

  std::vector<Integer> apply(std::span<const Integer> v) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string toString() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Exact determinant (fraction-free Bareiss elimination).
Integer determinant(const IntMatrix& m);

/// d = u * m * v with u, v unimodular and d diagonal with d_1 | d_2 | ... >= 0.
struct SnfResult {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
  IntMatrix u_inv;  // inverse of u, tracked alongside the row operations
  std::size_t rank = 0;

  std::vector<Integer> diagonal() const;
};

SnfResult smithNormalForm(const IntMatrix& m);

/// Z^r + Z_{d_1} + ... + Z_{d_s}, with d_k >= 2 and d_k | d_{k+1}.
class FgAbelianGroup {
 public:
  FgAbelianGroup(std::size_t free_rank, std::vector<Integer> torsion_orders);

  std::size_t freeRank() const { return free_rank_; }
  const std::vector<Integer>& torsionOrders() const { return torsion_; }
  std::size_t torsionCount() const { return torsion_.size(); }
  bool isTorsionFree() const { return torsion_.empty(); }

  /// e.g. "Z^2", "Z + Z_2 + Z_2", "0"
  std::string toString() const;

  friend bool operator==(const FgAbelianGroup&, const FgAbelianGroup&) = default;

 private:
  std::size_t free_rank_;
  std::vector<Integer> torsion_;
};

using GroupPtr = std::shared_ptr<const FgAbelianGroup>;

class GroupElement {
 public:
  GroupElement() = default;
  /// Torsion residues are reduced into [0, d_k).
  GroupElement(GroupPtr group, std::vector<Integer> free_part, std::vector<Integer> torsion_part);

  static GroupElement identity(GroupPtr group);

  const GroupPtr& group() const { return group_; }
  const std::vector<Integer>& freePart() const { return free_; }
  const std::vector<Integer>& torsionPart() const { return torsion_; }
  bool isIdentity() const;

  GroupElement operator+(const GroupElement& other) const;
  GroupElement operator-(const GroupElement& other) const;
  GroupElement operator-() const;
  GroupElement scaled(const Integer& k) const;

  /// Image in K tensor Q: the torsion coordinates are dropped.
  std::vector<Rational> freePartImage() const;

  /// Free coordinates followed by torsion residues.
  std::vector<Integer> coordinates() const;
  std::string toString() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b);
  /// Lexicographic on (free, torsion); only meaningful within one group.
  friend bool operator<(const GroupElement& a, const GroupElement& b);

 private:
  void checkSameGroup(const GroupElement& other) const;

  GroupPtr group_;
  std::vector<Integer> free_;
  std::vector<Integer> torsion_;
};

GroupElement operator*(const Integer& k, const GroupElement& a);

/// The quotient map Z^n -> Z^n / Im M expressed in the canonical SNF basis.
class Projection {
 public:
  Projection() = default;
  Projection(GroupPtr group, IntMatrix u, IntMatrix u_inv, std::vector<std::size_t> free_rows,
             std::vector<std::size_t> torsion_rows);

  const GroupPtr& group() const { return group_; }
  std::size_t ambientDim() const { return u_.cols(); }

  GroupElement operator()(std::span<const Integer> v) const;
  GroupElement ofBasisVector(std::size_t index) const;

  /// An integer vector mapping to the k-th canonical generator of the
  /// group (free generators first, then torsion generators).
  std::vector<Integer> generatorPreimage(std::size_t k) const;

 private:
  GroupPtr group_;
  IntMatrix u_;
  IntMatrix u_inv_;
  std::vector<std::size_t> free_rows_;
  std::vector<std::size_t> torsion_rows_;
};

struct Quotient {
  GroupPtr group;
  Projection projection;
};

/// Z^n / (column span of relations), where relations has n rows.
Quotient quotientGroup(const IntMatrix& relations);

std::vector<Rational> freePartImage(const GroupElement& a);

}  // namespace trideriv
