#include <doctest.h>

#include "oracles.hpp"
#include "trideriv/errors.hpp"
#include "trideriv/grading.hpp"

using namespace trideriv;

namespace {

using Targets = std::vector<std::vector<Integer>>;

const Targets kTargetsA{{-3, 3}, {1, 1}, {0, 2}, {0, 3}};
const Targets kTargetsB{{2, 0, 1}, {0, 2, -1}, {2, 2, 1}, {0, 0, -1}, {1, 1, 0}};
const Targets kTargetsC{{1, 0, 0}, {1, 1, 0}, {1, 0, 1}};

std::vector<long> longs(const std::vector<Integer>& v) {
  std::vector<long> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

GroupElement elem(const KGrading& g, std::vector<Integer> free, std::vector<Integer> torsion = {}) {
  return {g.group, std::move(free), std::move(torsion)};
}

}  // namespace

TEST_SUITE("grading") {
  TEST_CASE("canonical degrees of the first worked trinomial") {
    // Frozen output of the canonical basis; a change of basis convention
    // shows up here first.
    const KGrading g = computeGrading(parseTrinomial("T01*T02^3 + T11^3 + T21^2"));
    CHECK(g.group->toString() == "Z^2");
    CHECK(longs(g.degree({0, 1}).coordinates()) == std::vector<long>{6, -3});
    CHECK(longs(g.degree({0, 2}).coordinates()) == std::vector<long>{0, 1});
    CHECK(longs(g.degree({1, 1}).coordinates()) == std::vector<long>{2, 0});
    CHECK(longs(g.degree({2, 1}).coordinates()) == std::vector<long>{3, 0});
    CHECK(longs(g.mu.coordinates()) == std::vector<long>{6, 0});
  }

  TEST_CASE("group shapes agree with determinantal divisors") {
    oracle::Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
      const TrinomialSpec s = rng.spec(3, 6);
      const KGrading g = computeGrading(s);
      const IntMatrix lt = exponentMatrixL(s).transpose();
      oracle::Matrix m(lt.rows(), std::vector<long long>(lt.cols()));
      for (std::size_t r = 0; r < lt.rows(); ++r)
        for (std::size_t c = 0; c < lt.cols(); ++c) m[r][c] = lt(r, c).get_si();
      const auto [rank, torsion] = oracle::cokernelShape(m);
      CHECK(g.group->freeRank() == rank);
      std::vector<long> t;
      for (auto d : torsion) t.push_back(static_cast<long>(d));
      CHECK(longs(g.group->torsionOrders()) == t);
    }
  }

  TEST_CASE("mu is the weight of every monomial") {
    for (const char* text : {"T01*T02^3 + T11^3 + T21^2", "T01*T02 + T11*T12 + T21^2",
                             "T01^2 + T11^2 + T21^2", "T01^4*T02^6 + T11^2*T12^3 + T21^5"}) {
      const KGrading g = computeGrading(parseTrinomial(text));
      CHECK(monomialWeight(g, 0) == g.mu);
      CHECK(monomialWeight(g, 1) == g.mu);
      CHECK(monomialWeight(g, 2) == g.mu);
    }
  }

  TEST_CASE("published degrees reached by a change of basis") {
    const KGrading a = computeGrading(parseTrinomial("T01*T02^3 + T11^3 + T21^2"));
    const BasisChange ba = matchBasis(a, kTargetsA);
    CHECK(ba.isIsomorphism());
    CHECK(ba.free_index == 1);
    for (std::size_t v = 0; v < 4; ++v) CHECK(applyBasis(a, ba, a.degrees[v]) == kTargetsA[v]);
    CHECK(longs(applyBasis(a, ba, a.mu)) == std::vector<long>{0, 6});

    const KGrading c = computeGrading(parseTrinomial("T01^2 + T11^2 + T21^2"));
    const BasisChange bc = matchBasis(c, kTargetsC);
    CHECK(bc.isIsomorphism());
    for (std::size_t v = 0; v < 3; ++v) CHECK(applyBasis(c, bc, c.degrees[v]) == kTargetsC[v]);
  }

  TEST_CASE("the listed degrees for T01*T02 + T11*T12 + T21^2 span an index-2 sublattice") {
    // They satisfy the relations, so they define a grading, but not the
    // finest one: the homomorphism from K hits only an index-2 subgroup.
    const KGrading b = computeGrading(parseTrinomial("T01*T02 + T11*T12 + T21^2"));
    const BasisChange bb = matchBasis(b, kTargetsB);
    CHECK(bb.respects_relations);
    CHECK_FALSE(bb.surjective);
    CHECK(bb.free_index == 2);
    CHECK_FALSE(bb.isIsomorphism());
    // Independent check: the 3x3 minors of the target matrix have gcd 2.
    oracle::Matrix m;
    for (const auto& t : kTargetsB) m.push_back({t[0].get_si(), t[1].get_si(), t[2].get_si()});
    CHECK(oracle::invariantFactors(m) == std::vector<long long>{1, 1, 2});
  }

  TEST_CASE("targets violating the relations are rejected") {
    const KGrading a = computeGrading(parseTrinomial("T01*T02^3 + T11^3 + T21^2"));
    Targets bad = kTargetsA;
    bad[3] = {0, 4};
    const BasisChange b = matchBasis(a, bad);
    CHECK_FALSE(b.respects_relations);
    CHECK_FALSE(b.isIsomorphism());
    CHECK_THROWS_AS(matchBasis(a, Targets{{1, 1}}), DimensionMismatch);
  }

  TEST_CASE("a unimodular relabelling of the canonical degrees is an isomorphism") {
    const KGrading b = computeGrading(parseTrinomial("T01*T02 + T11*T12 + T21^2"));
    const IntMatrix u{{1, 2, 0}, {0, 1, -1}, {1, 2, 1}};  // det 1
    Targets t;
    for (const auto& d : b.degrees) t.push_back(u.apply(d.coordinates()));
    const BasisChange m = matchBasis(b, t);
    CHECK(m.isIsomorphism());
    CHECK(m.matrix == u);
  }

  TEST_CASE("weight cone and primitivity in the published basis") {
    const KGrading a = computeGrading(parseTrinomial("T01*T02^3 + T11^3 + T21^2"));
    const BasisChange ba = matchBasis(a, kTargetsA);
    REQUIRE(ba.isIsomorphism());
    const WeightCone cone = weightCone(a);
    CHECK(cone.ambient_dim == 2);
    CHECK(cone.generators.size() == 4);

    // Canonical preimages of (3,0), (3,2) and (3,4).
    const GroupElement d0 = elem(a, {-3, 3}), d1 = elem(a, {-1, 3}), d2 = elem(a, {1, 3});
    CHECK(longs(applyBasis(a, ba, d0)) == std::vector<long>{3, 0});
    CHECK(longs(applyBasis(a, ba, d1)) == std::vector<long>{3, 2});
    CHECK(longs(applyBasis(a, ba, d2)) == std::vector<long>{3, 4});
    CHECK(isPrimitiveDegree(a, d0));
    CHECK(isPrimitiveDegree(a, d1));
    CHECK_FALSE(isPrimitiveDegree(a, d2));
    CHECK(coneContains(cone, a.mu.freePartImage()));
    CHECK(coneContains(cone, std::vector<Rational>{0, 0}));
    CHECK_THROWS_AS(coneContains(cone, std::vector<Rational>{1}), DimensionMismatch);
  }

  TEST_CASE("weight cone with torsion") {
    const KGrading c = computeGrading(parseTrinomial("T01^2 + T11^2 + T21^2"));
    const WeightCone cone = weightCone(c);
    CHECK(cone.ambient_dim == 1);
    for (const auto& gen : cone.generators) CHECK(gen == std::vector<Rational>{1});
    CHECK(coarsenDegree(c.degree({1, 1})) == std::vector<Rational>{1});
    CHECK(coarsenDegree(GroupElement::identity(c.group)) == std::vector<Rational>{0});
    CHECK(coneContains(cone, std::vector<Rational>{Rational(5, 2)}));
    CHECK_FALSE(coneContains(cone, std::vector<Rational>{-1}));
  }

  TEST_CASE("coarsening is the identity without torsion") {
    const KGrading a = computeGrading(parseTrinomial("T01*T02^3 + T11^3 + T21^2"));
    CHECK(coarsenDegree(a.degree({0, 1})) == std::vector<Rational>{6, -3});
  }
}
