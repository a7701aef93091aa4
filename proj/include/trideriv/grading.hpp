#pragma once

#include <optional>
#include <span>
#include <vector>

#include "trideriv/abelian.hpp"
#include "trideriv/trinomial.hpp"

namespace trideriv {

/// The finest grading of R(g): K = Z^n / Im L^T with deg T_ij the image of e_ij.
struct KGrading {
  TrinomialSpec spec;
  GroupPtr group;
  Projection projection;
  std::vector<GroupElement> degrees;  // indexed by flat variable index
  GroupElement mu;                    // degree of g

  const GroupElement& degree(VarIndex v) const { return degrees.at(spec.layout().flat(v)); }
};

KGrading computeGrading(const TrinomialSpec& s);

/// sum_j l_ij * deg T_ij for one monomial i.
GroupElement monomialWeight(const KGrading& g, int i);

/// Conic hull of the free-part images of the generator degrees, in K tensor Q.
struct WeightCone {
  std::size_t ambient_dim = 0;
  std::vector<std::vector<Rational>> generators;
};

WeightCone weightCone(const KGrading& g);

/// Exact test for v = sum lambda_k g_k with all lambda_k >= 0.
bool coneContains(const WeightCone& c, std::span<const Rational> v);

bool isPrimitiveDegree(const KGrading& g, const GroupElement& d);

/// Degree in the torsion-free component K_0 of K.
std::vector<Rational> coarsenDegree(const GroupElement& d);

/// A homomorphism K -> K' (K' of the same shape as K) fixed by prescribing
/// the image of every deg T_ij.
struct BasisChange {
  bool respects_relations = false;  // the prescribed images satisfy Im L^T
  bool surjective = false;
  IntMatrix matrix;                 // acts on canonical coordinates (free, torsion)
  Integer free_index = 0;           // |det| of the free block; 1 iff unimodular on Z^r

  bool isIsomorphism() const { return respects_relations && surjective; }
};

/// targets[k] lists free coordinates then torsion residues of the desired deg T_k.
BasisChange matchBasis(const KGrading& g, const std::vector<std::vector<Integer>>& targets);

/// Coordinates of d after the change of basis (torsion reduced).
std::vector<Integer> applyBasis(const KGrading& g, const BasisChange& b, const GroupElement& d);

}  // namespace trideriv
