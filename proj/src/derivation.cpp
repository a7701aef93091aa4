#include "trideriv/derivation.hpp"

#include <algorithm>

#include "trideriv/errors.hpp"

namespace trideriv {

Derivation::Derivation(TrinomialSpec spec, std::vector<Poly> images)
    : spec_(std::move(spec)), images_(std::move(images)) {
  if (images_.size() != spec_.n())
    throw DimensionMismatch("a derivation needs one image per generator");
  for (const auto& p : images_)
    if (!(p.layout() == spec_.layout()))
      throw VariableSetMismatch("derivation image over a different variable set");
}

Derivation Derivation::zero(const TrinomialSpec& spec) {
  return {spec, std::vector<Poly>(spec.n(), Poly(spec.layout()))};
}

std::string describe(const ElementaryFamily& f) {
  std::string s = f.type == FamilyType::I ? "Type I, C=(" : "Type II, C=(";
  for (int i = 0; i < 3; ++i) {
    if (i) s += ",";
    const bool free = std::find(f.immaterial.begin(), f.immaterial.end(), i) != f.immaterial.end();
    s += free ? "*" : std::to_string(f.c[static_cast<std::size_t>(i)]);
  }
  s += ")";
  if (f.i0) s += ", i0=" + std::to_string(*f.i0);
  return s;
}

Beta defaultBeta(const ElementaryFamily& f) {
  if (f.type == FamilyType::I) return {Coeff(1), Coeff(1), Coeff(-2)};
  Beta b{Coeff(0), Coeff(0), Coeff(0)};
  bool first = true;
  for (int i = 0; i < 3; ++i) {
    if (i == *f.i0) continue;
    b[static_cast<std::size_t>(i)] = first ? Coeff(1) : Coeff(-1);
    first = false;
  }
  return b;
}

namespace {

Poly monomialOf(const TrinomialSpec& s, int i) {
  Exponents e(s.n(), 0);
  for (int j = 1; j <= s.n(i); ++j)
    e[s.layout().flat({i, j})] = static_cast<std::uint32_t>(s.exponent({i, j}));
  return Poly::monomial(s.layout(), std::move(e), Coeff(1));
}

// d T_i^{l_i} / d T_{i c}
Poly monomialPartial(const TrinomialSpec& s, int i, int c) {
  return partialDerivative(monomialOf(s, i), VarIndex{i, c});
}

bool exponentConditionHolds(const TrinomialSpec& s, const std::array<int, 3>& c,
                            std::optional<int> i0) {
  int large = 0;
  for (int i = 0; i < 3; ++i) {
    if (i0 && *i0 == i) continue;
    if (s.exponent({i, c[static_cast<std::size_t>(i)]}) > 1) ++large;
  }
  return large <= 1;
}

}  // namespace

Derivation makeElementary(const TrinomialSpec& s, const ElementaryFamily& fam, const Beta& beta) {
  const Coeff sum = beta[0] + beta[1] + beta[2];
  if (!sum.isZero()) throw BetaPatternError("beta_0 + beta_1 + beta_2 must vanish");
  if (fam.type == FamilyType::I) {
    if (fam.i0) throw BetaPatternError("a Type I family has no i0");
    for (const auto& b : beta)
      if (b.isZero()) throw BetaPatternError("Type I requires every beta_i to be nonzero");
  } else {
    if (!fam.i0 || *fam.i0 < 0 || *fam.i0 > 2)
      throw BetaPatternError("a Type II family needs i0 in {0,1,2}");
    for (int i = 0; i < 3; ++i) {
      const bool zero = beta[static_cast<std::size_t>(i)].isZero();
      if ((i == *fam.i0) != zero)
        throw BetaPatternError("Type II requires beta_i = 0 exactly at i = i0 = " +
                               std::to_string(*fam.i0));
    }
  }
  for (int i = 0; i < 3; ++i) {
    const int ci = fam.c[static_cast<std::size_t>(i)];
    if (ci < 1 || ci > s.n(i))
      throw FamilyConditionError("c_" + std::to_string(i) + " = " + std::to_string(ci) +
                                 " is out of range");
  }
  const std::optional<int> i0 = fam.type == FamilyType::II ? fam.i0 : std::nullopt;
  if (!exponentConditionHolds(s, fam.c, i0))
    throw FamilyConditionError(describe(fam) + " violates the exponent condition for " +
                               renderPolynomial(s));

  std::vector<Poly> images(s.n(), Poly(s.layout()));
  for (int i = 0; i < 3; ++i) {
    if (i0 && *i0 == i) continue;
    Poly img = Poly::constant(s.layout(), beta[static_cast<std::size_t>(i)]);
    for (int k = 0; k < 3; ++k) {
      if (k == i || (i0 && *i0 == k)) continue;
      img = img * monomialPartial(s, k, fam.c[static_cast<std::size_t>(k)]);
    }
    images[s.layout().flat({i, fam.c[static_cast<std::size_t>(i)]})] = std::move(img);
  }
  return {s, std::move(images)};
}

std::vector<ElementaryFamily> enumerateElementaryFamilies(const TrinomialSpec& s) {
  std::vector<ElementaryFamily> out;
  for (int c0 = 1; c0 <= s.n(0); ++c0)
    for (int c1 = 1; c1 <= s.n(1); ++c1)
      for (int c2 = 1; c2 <= s.n(2); ++c2) {
        const std::array<int, 3> c{c0, c1, c2};
        if (exponentConditionHolds(s, c, std::nullopt))
          out.push_back({FamilyType::I, c, std::nullopt, {}});
      }
  for (int i0 = 0; i0 < 3; ++i0) {
    const int a = i0 == 0 ? 1 : 0;
    const int b = i0 == 2 ? 1 : 2;
    for (int ca = 1; ca <= s.n(a); ++ca)
      for (int cb = 1; cb <= s.n(b); ++cb) {
        std::array<int, 3> c{1, 1, 1};
        c[static_cast<std::size_t>(a)] = ca;
        c[static_cast<std::size_t>(b)] = cb;
        if (exponentConditionHolds(s, c, i0)) out.push_back({FamilyType::II, c, i0, {i0}});
      }
  }
  return out;
}

bool isTypeII(const ElementaryFamily& f) { return f.type == FamilyType::II; }

Poly applyDerivationUnreduced(const Derivation& d, const Poly& p) {
  if (!(p.layout() == d.spec().layout()))
    throw VariableSetMismatch("polynomial and derivation use different variables");
  Poly out(p.layout());
  for (std::size_t v = 0; v < d.spec().n(); ++v) {
    const Poly& img = d.image(v);
    if (img.isZero()) continue;
    const Poly dp = partialDerivative(p, v);
    if (dp.isZero()) continue;
    out += dp * img;
  }
  return out;
}

Poly applyDerivation(const Derivation& d, const Poly& p) {
  return normalFormModG(applyDerivationUnreduced(d, p), d.spec());
}

bool isWellDefined(const Derivation& d) {
  return applyDerivation(d, trinomialPoly(d.spec())).isZero();
}

std::optional<GroupElement> homogeneityDegree(const Derivation& d, const KGrading& g) {
  std::optional<GroupElement> common;
  bool any = false;
  for (std::size_t v = 0; v < d.spec().n(); ++v) {
    const Poly img = normalFormModG(d.image(v), d.spec());
    if (img.isZero()) continue;
    any = true;
    const auto deg = kDegreeOf(img, g);
    if (!deg) return std::nullopt;
    GroupElement diff = *deg - g.degrees[v];
    if (!common) {
      common = std::move(diff);
    } else if (!(*common == diff)) {
      return std::nullopt;
    }
  }
  if (!any) throw ZeroDerivation("the zero derivation has no degree");
  return common;
}

std::size_t NilpotencyVerdict::maxIndex() const {
  return indices.empty() ? 0 : *std::max_element(indices.begin(), indices.end());
}

std::string toString(NilpotencyVerdict::Status s) {
  switch (s) {
    case NilpotencyVerdict::Status::Nilpotent:
      return "nilpotent";
    case NilpotencyVerdict::Status::NotNilpotentWithinBound:
      return "not_nilpotent_within_bound";
    case NilpotencyVerdict::Status::DetectedNonNilpotent:
      return "detected_non_nilpotent";
  }
  return "unknown";
}

std::size_t defaultNilpotencyBound(const TrinomialSpec& s) {
  return 4 * static_cast<std::size_t>(s.maxExponent()) * s.n();
}

NilpotencyVerdict boundedNilpotency(const Derivation& d, std::size_t bound) {
  if (bound < 1) throw Error("nilpotency bound must be at least 1");
  if (!isWellDefined(d)) throw IllDefinedDerivation("g does not divide delta(g)");
  const auto& s = d.spec();
  NilpotencyVerdict verdict;
  verdict.bound = bound;
  verdict.indices.assign(s.n(), 0);
  bool all_reached = true;
  for (std::size_t v = 0; v < s.n(); ++v) {
    Poly prev = normalFormModG(Poly::variable(s.layout(), s.layout().var(v)), s);
    std::size_t reached = 0;
    for (std::size_t m = 1; m <= bound; ++m) {
      Poly next = applyDerivation(d, prev);
      if (next.isZero()) {
        reached = m;
        break;
      }
      // A nonzero element dividing its own image rules out local nilpotency.
      if (exactQuotient(next, prev)) {
        verdict.status = NilpotencyVerdict::Status::DetectedNonNilpotent;
        verdict.witness_var = v;
        verdict.witness_step = m;
        verdict.indices.clear();
        return verdict;
      }
      prev = std::move(next);
    }
    verdict.indices[v] = reached;
    if (reached == 0) all_reached = false;
  }
  if (all_reached) {
    verdict.status = NilpotencyVerdict::Status::Nilpotent;
  } else {
    verdict.status = NilpotencyVerdict::Status::NotNilpotentWithinBound;
    verdict.indices.clear();
  }
  return verdict;
}

bool kernelMembership(const Derivation& d, const Poly& h) { return applyDerivation(d, h).isZero(); }

Derivation scaleByKernel(const Derivation& d, const Poly& h, const KGrading& g) {
  const Poly hr = normalFormModG(h, d.spec());
  if (hr.isZero()) throw NotHomogeneousScalar("the scalar must be nonzero");
  if (!kernelMembership(d, hr)) throw NotInKernel(hr.toString() + " is not in the kernel");
  if (!kDegreeOf(hr, g)) throw NotHomogeneousScalar(hr.toString() + " is not homogeneous");
  std::vector<Poly> images;
  images.reserve(d.spec().n());
  for (const auto& img : d.images()) images.push_back(normalFormModG(hr * img, d.spec()));
  return {d.spec(), std::move(images)};
}

bool structuralShape(const Derivation& d) {
  const auto& s = d.spec();
  for (int i = 0; i < 3; ++i) {
    int nonzero = 0;
    for (int j = 1; j <= s.n(i); ++j)
      if (!normalFormModG(d.image({i, j}), s).isZero()) ++nonzero;
    if (nonzero > 1) return false;
  }
  return true;
}

bool structuralCheck(const Derivation& d, const KGrading& g, std::size_t bound) {
  if (!isWellDefined(d)) throw PreconditionNotVerified("derivation is not well defined");
  std::optional<GroupElement> deg;
  try {
    deg = homogeneityDegree(d, g);
  } catch (const ZeroDerivation&) {
    throw PreconditionNotVerified("the zero derivation has no degree");
  }
  if (!deg) throw PreconditionNotVerified("derivation is not homogeneous");
  if (!boundedNilpotency(d, bound).nilpotent())
    throw PreconditionNotVerified("derivation is not nilpotent within the bound");
  return structuralShape(d);
}

}  // namespace trideriv
