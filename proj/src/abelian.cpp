#include "trideriv/abelian.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "trideriv/errors.hpp"

namespace trideriv {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    for (long x : row) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

std::vector<Integer> IntMatrix::column(std::size_t c) const {
  std::vector<Integer> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

std::vector<Integer> IntMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

void IntMatrix::swapRows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swapCols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::addRowMultiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
}

void IntMatrix::addColMultiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
}

void IntMatrix::negateRow(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negateCol(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

std::vector<Integer> IntMatrix::apply(std::span<const Integer> v) const {
  if (v.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
  std::vector<Integer> out(rows_, Integer(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product size mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntMatrix::toString() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ',';
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ',';
      os << (*this)(r, c).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swapRows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<Integer> SnfResult::diagonal() const {
  std::vector<Integer> out;
  const std::size_t k = std::min(d.rows(), d.cols());
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(d(i, i));
  return out;
}

namespace {

struct SnfWork {
  IntMatrix d, u, v, u_inv;

  void swapRows(std::size_t a, std::size_t b) {
    d.swapRows(a, b);
    u.swapRows(a, b);
    u_inv.swapCols(a, b);
  }
  void swapCols(std::size_t a, std::size_t b) {
    d.swapCols(a, b);
    v.swapCols(a, b);
  }
  // row[dst] += f * row[src]; the inverse picks up col[src] -= f * col[dst].
  void addRow(std::size_t dst, std::size_t src, const Integer& f) {
    d.addRowMultiple(dst, src, f);
    u.addRowMultiple(dst, src, f);
    u_inv.addColMultiple(src, dst, -f);
  }
  void addCol(std::size_t dst, std::size_t src, const Integer& f) {
    d.addColMultiple(dst, src, f);
    v.addColMultiple(dst, src, f);
  }
  void negateRow(std::size_t r) {
    d.negateRow(r);
    u.negateRow(r);
    u_inv.negateCol(r);
  }
};

}  // namespace

SnfResult smithNormalForm(const IntMatrix& m) {
  SnfWork w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()),
            IntMatrix::identity(m.rows())};
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t t = 0;

  for (; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    bool found = false;
    std::size_t pr = t, pc = t;
    Integer best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        const Integer& x = w.d(i, j);
        if (x != 0 && (!found || abs(x) < best)) {
          found = true;
          best = abs(x);
          pr = i;
          pc = j;
        }
      }
    if (!found) break;
    w.swapRows(t, pr);
    w.swapCols(t, pc);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (w.d(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), w.d(i, t).get_mpz_t(), w.d(t, t).get_mpz_t());
        w.addRow(i, t, -q);
        if (w.d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (w.d(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), w.d(t, j).get_mpz_t(), w.d(t, t).get_mpz_t());
        w.addCol(j, t, -q);
        if (w.d(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot survived; promote it.
        Integer small = abs(w.d(t, t));
        std::size_t sr = t, sc = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (w.d(i, t) != 0 && abs(w.d(i, t)) < small) {
            small = abs(w.d(i, t));
            sr = i;
            sc = t;
          }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (w.d(t, j) != 0 && abs(w.d(t, j)) < small) {
            small = abs(w.d(t, j));
            sr = t;
            sc = j;
          }
        w.swapRows(t, sr);
        w.swapCols(t, sc);
        continue;
      }
      // Row and column are clear; enforce divisibility of the trailing block.
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (w.d(i, j) % w.d(t, t) != 0) {
            w.addRow(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (w.d(t, t) < 0) w.negateRow(t);
  }

  SnfResult out{std::move(w.d), std::move(w.u), std::move(w.v), std::move(w.u_inv), t};
  return out;
}

FgAbelianGroup::FgAbelianGroup(std::size_t free_rank, std::vector<Integer> torsion_orders)
    : free_rank_(free_rank), torsion_(std::move(torsion_orders)) {
  for (std::size_t k = 0; k < torsion_.size(); ++k) {
    if (torsion_[k] < 2) throw Error("torsion orders must be at least 2");
    if (k > 0 && torsion_[k] % torsion_[k - 1] != 0)
      throw Error("torsion orders must form a divisibility chain");
  }
}

std::string FgAbelianGroup::toString() const {
  std::vector<std::string> parts;
  if (free_rank_ == 1) parts.emplace_back("Z");
  if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
  for (const auto& d : torsion_) parts.push_back("Z_" + d.get_str());
  if (parts.empty()) return "0";
  std::string s = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
  return s;
}

GroupElement::GroupElement(GroupPtr group, std::vector<Integer> free_part,
                           std::vector<Integer> torsion_part)
    : group_(std::move(group)), free_(std::move(free_part)), torsion_(std::move(torsion_part)) {
  if (!group_) throw GroupMismatch("group element without a group");
  if (free_.size() != group_->freeRank() || torsion_.size() != group_->torsionCount())
    throw DimensionMismatch("group element shape does not match " + group_->toString());
  for (std::size_t k = 0; k < torsion_.size(); ++k) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), torsion_[k].get_mpz_t(), group_->torsionOrders()[k].get_mpz_t());
    torsion_[k] = r;
  }
}

GroupElement GroupElement::identity(GroupPtr group) {
  const std::size_t r = group->freeRank();
  const std::size_t s = group->torsionCount();
  return GroupElement(std::move(group), std::vector<Integer>(r, Integer(0)),
                      std::vector<Integer>(s, Integer(0)));
}

bool GroupElement::isIdentity() const {
  auto zero = [](const Integer& x) { return x == 0; };
  return std::all_of(free_.begin(), free_.end(), zero) &&
         std::all_of(torsion_.begin(), torsion_.end(), zero);
}

void GroupElement::checkSameGroup(const GroupElement& other) const {
  if (!group_ || !other.group_ || (group_ != other.group_ && !(*group_ == *other.group_)))
    throw GroupMismatch("elements belong to different groups");
}

GroupElement GroupElement::operator+(const GroupElement& other) const {
  checkSameGroup(other);
  std::vector<Integer> f(free_.size()), t(torsion_.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = free_[k] + other.free_[k];
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = torsion_[k] + other.torsion_[k];
  return {group_, std::move(f), std::move(t)};
}

GroupElement GroupElement::operator-() const { return scaled(-1); }

GroupElement GroupElement::operator-(const GroupElement& other) const { return *this + (-other); }

GroupElement GroupElement::scaled(const Integer& k) const {
  std::vector<Integer> f(free_.size()), t(torsion_.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = k * free_[i];
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = k * torsion_[i];
  return {group_, std::move(f), std::move(t)};
}

GroupElement operator*(const Integer& k, const GroupElement& a) { return a.scaled(k); }

std::vector<Rational> GroupElement::freePartImage() const {
  return {free_.begin(), free_.end()};
}

std::vector<Integer> GroupElement::coordinates() const {
  std::vector<Integer> out = free_;
  out.insert(out.end(), torsion_.begin(), torsion_.end());
  return out;
}

std::string GroupElement::toString() const {
  std::string s = "(";
  bool first = true;
  for (const auto& x : free_) {
    if (!first) s += ",";
    s += x.get_str();
    first = false;
  }
  for (std::size_t k = 0; k < torsion_.size(); ++k) {
    if (!first) s += ",";
    s += "[" + torsion_[k].get_str() + "]_" + group_->torsionOrders()[k].get_str();
    first = false;
  }
  return s + ")";
}

bool operator==(const GroupElement& a, const GroupElement& b) {
  a.checkSameGroup(b);
  return a.free_ == b.free_ && a.torsion_ == b.torsion_;
}

bool operator<(const GroupElement& a, const GroupElement& b) {
  if (a.free_ != b.free_) return a.free_ < b.free_;
  return a.torsion_ < b.torsion_;
}

std::vector<Rational> freePartImage(const GroupElement& a) { return a.freePartImage(); }

Projection::Projection(GroupPtr group, IntMatrix u, IntMatrix u_inv,
                       std::vector<std::size_t> free_rows, std::vector<std::size_t> torsion_rows)
    : group_(std::move(group)),
      u_(std::move(u)),
      u_inv_(std::move(u_inv)),
      free_rows_(std::move(free_rows)),
      torsion_rows_(std::move(torsion_rows)) {}

GroupElement Projection::operator()(std::span<const Integer> v) const {
  if (v.size() != u_.cols())
    throw DimensionMismatch("projection expects a vector of length " + std::to_string(u_.cols()));
  const std::vector<Integer> w = u_.apply(v);
  std::vector<Integer> f, t;
  f.reserve(free_rows_.size());
  t.reserve(torsion_rows_.size());
  for (auto r : free_rows_) f.push_back(w[r]);
  for (auto r : torsion_rows_) t.push_back(w[r]);
  return {group_, std::move(f), std::move(t)};
}

GroupElement Projection::ofBasisVector(std::size_t index) const {
  std::vector<Integer> e(u_.cols(), Integer(0));
  e.at(index) = 1;
  return (*this)(e);
}

std::vector<Integer> Projection::generatorPreimage(std::size_t k) const {
  const std::size_t row = k < free_rows_.size() ? free_rows_.at(k)
                                                : torsion_rows_.at(k - free_rows_.size());
  return u_inv_.column(row);
}

Quotient quotientGroup(const IntMatrix& relations) {
  const SnfResult snf = smithNormalForm(relations);
  const std::size_t n = relations.rows();
  std::vector<std::size_t> free_rows, torsion_rows;
  std::vector<Integer> orders;
  for (std::size_t k = 0; k < snf.rank; ++k) {
    const Integer& d = snf.d(k, k);
    if (d > 1) {
      torsion_rows.push_back(k);
      orders.push_back(d);
    }
  }
  for (std::size_t k = snf.rank; k < n; ++k) free_rows.push_back(k);
  auto group = std::make_shared<const FgAbelianGroup>(free_rows.size(), std::move(orders));
  Projection proj(group, snf.u, snf.u_inv, std::move(free_rows), std::move(torsion_rows));
  return {std::move(group), std::move(proj)};
}

}  // namespace trideriv
