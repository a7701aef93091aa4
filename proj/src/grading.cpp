#include "trideriv/grading.hpp"

#include <algorithm>

#include "trideriv/errors.hpp"

namespace trideriv {

KGrading computeGrading(const TrinomialSpec& s) {
  Quotient q = quotientGroup(exponentMatrixL(s).transpose());
  std::vector<GroupElement> degrees;
  degrees.reserve(s.n());
  for (std::size_t k = 0; k < s.n(); ++k) degrees.push_back(q.projection.ofBasisVector(k));
  KGrading g{s, q.group, std::move(q.projection), std::move(degrees), GroupElement::identity(q.group)};
  g.mu = monomialWeight(g, 0);
  return g;
}

GroupElement monomialWeight(const KGrading& g, int i) {
  GroupElement w = GroupElement::identity(g.group);
  for (int j = 1; j <= g.spec.n(i); ++j) w = w + g.degree({i, j}).scaled(g.spec.exponent({i, j}));
  return w;
}

WeightCone weightCone(const KGrading& g) {
  WeightCone c;
  c.ambient_dim = g.group->freeRank();
  for (const auto& d : g.degrees) c.generators.push_back(d.freePartImage());
  return c;
}

namespace {

// Phase-one simplex with Bland's rule on A x = b, x >= 0 (b made nonnegative).
bool feasibleNonnegative(const std::vector<std::vector<Rational>>& columns,
                         std::span<const Rational> b) {
  const std::size_t r = b.size();
  const std::size_t m = columns.size();
  const std::size_t width = m + r + 1;
  const std::size_t rhs = m + r;
  std::vector<std::vector<Rational>> t(r, std::vector<Rational>(width, Rational(0)));
  std::vector<std::size_t> basis(r);
  for (std::size_t i = 0; i < r; ++i) {
    const int sign = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < m; ++j) t[i][j] = sign * columns[j][i];
    t[i][m + i] = 1;
    t[i][rhs] = sign * b[i];
    basis[i] = m + i;
  }

  for (;;) {
    std::optional<std::size_t> entering;
    for (std::size_t j = 0; j < m + r && !entering; ++j) {
      Rational z = j >= m ? 1 : 0;
      for (std::size_t i = 0; i < r; ++i)
        if (basis[i] >= m) z -= t[i][j];
      if (z < 0) entering = j;
    }
    if (!entering) break;
    const std::size_t e = *entering;

    std::optional<std::size_t> leave;
    Rational best;
    for (std::size_t i = 0; i < r; ++i) {
      if (t[i][e] <= 0) continue;
      Rational ratio = t[i][rhs] / t[i][e];
      if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (!leave) break;  // cannot happen: the phase-one objective is bounded below
    const std::size_t p = *leave;
    const Rational piv = t[p][e];
    for (auto& x : t[p]) x /= piv;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == p || t[i][e] == 0) continue;
      const Rational f = t[i][e];
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[p][j];
    }
    basis[p] = e;
  }

  for (std::size_t i = 0; i < r; ++i)
    if (basis[i] >= m && t[i][rhs] != 0) return false;
  return true;
}

}  // namespace

bool coneContains(const WeightCone& c, std::span<const Rational> v) {
  if (v.size() != c.ambient_dim)
    throw DimensionMismatch("cone has dimension " + std::to_string(c.ambient_dim) +
                            ", query has " + std::to_string(v.size()));
  if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; })) return true;
  if (c.generators.empty()) return false;
  return feasibleNonnegative(c.generators, v);
}

bool isPrimitiveDegree(const KGrading& g, const GroupElement& d) {
  const auto image = d.freePartImage();
  return !coneContains(weightCone(g), image);
}

std::vector<Rational> coarsenDegree(const GroupElement& d) { return d.freePartImage(); }

BasisChange matchBasis(const KGrading& g, const std::vector<std::vector<Integer>>& targets) {
  const std::size_t n = g.spec.n();
  const std::size_t r = g.group->freeRank();
  const std::size_t s = g.group->torsionCount();
  const std::size_t dim = r + s;
  const auto& orders = g.group->torsionOrders();
  if (targets.size() != n)
    throw DimensionMismatch("expected " + std::to_string(n) + " target degrees");
  for (const auto& t : targets)
    if (t.size() != dim)
      throw DimensionMismatch("target degrees must have " + std::to_string(dim) + " coordinates");

  auto reduce = [&](std::vector<Integer>& y) {
    for (std::size_t k = 0; k < s; ++k) {
      Integer rmd;
      mpz_fdiv_r(rmd.get_mpz_t(), y[r + k].get_mpz_t(), orders[k].get_mpz_t());
      y[r + k] = rmd;
    }
  };

  BasisChange out;
  out.respects_relations = true;
  const IntMatrix l = exponentMatrixL(g.spec);
  for (std::size_t row = 0; row < l.rows(); ++row) {
    std::vector<Integer> acc(dim, Integer(0));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < dim; ++k) acc[k] += l(row, j) * targets[j][k];
    reduce(acc);
    if (std::any_of(acc.begin(), acc.end(), [](const Integer& x) { return x != 0; }))
      out.respects_relations = false;
  }

  out.matrix = IntMatrix(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const auto pre = g.projection.generatorPreimage(k);
    std::vector<Integer> col(dim, Integer(0));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t c = 0; c < dim; ++c) col[c] += pre[j] * targets[j][c];
    reduce(col);
    for (std::size_t c = 0; c < dim; ++c) out.matrix(c, k) = col[c];
  }

  IntMatrix span(dim, n + s);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t c = 0; c < dim; ++c) span(c, j) = targets[j][c];
  for (std::size_t k = 0; k < s; ++k) span(r + k, n + k) = orders[k];
  const SnfResult snf = smithNormalForm(span);
  out.surjective = snf.rank == dim;
  for (std::size_t k = 0; k < snf.rank && out.surjective; ++k)
    if (snf.d(k, k) != 1) out.surjective = false;

  IntMatrix free_block(r, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) free_block(a, b) = out.matrix(a, b);
  out.free_index = abs(determinant(free_block));
  return out;
}

std::vector<Integer> applyBasis(const KGrading& g, const BasisChange& b, const GroupElement& d) {
  std::vector<Integer> y = b.matrix.apply(d.coordinates());
  const std::size_t r = g.group->freeRank();
  const auto& orders = g.group->torsionOrders();
  for (std::size_t k = 0; k < orders.size(); ++k) {
    Integer rmd;
    mpz_fdiv_r(rmd.get_mpz_t(), y[r + k].get_mpz_t(), orders[k].get_mpz_t());
    y[r + k] = rmd;
  }
  return y;
}

}  // namespace trideriv
