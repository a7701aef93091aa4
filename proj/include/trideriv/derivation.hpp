#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "trideriv/grading.hpp"
#include "trideriv/poly.hpp"
#include "trideriv/trinomial.hpp"

namespace trideriv {

/// A derivation of K[T] given by the images of the generators; it induces a
/// derivation of R(g) when g divides the image of g.
class Derivation {
 public:
  Derivation(TrinomialSpec spec, std::vector<Poly> images);

  /// The derivation sending every generator to zero.
  static Derivation zero(const TrinomialSpec& spec);

  const TrinomialSpec& spec() const { return spec_; }
  const std::vector<Poly>& images() const { return images_; }
  const Poly& image(VarIndex v) const { return images_.at(spec_.layout().flat(v)); }
  const Poly& image(std::size_t flat) const { return images_.at(flat); }

  friend bool operator==(const Derivation&, const Derivation&) = default;

 private:
  TrinomialSpec spec_;
  std::vector<Poly> images_;
};

enum class FamilyType { I, II };

/// One (type, C, i0) choice for delta_{C,beta}. For Type II the column c_{i0}
/// does not affect the derivation and is listed in `immaterial`.
struct ElementaryFamily {
  FamilyType type = FamilyType::I;
  std::array<int, 3> c{1, 1, 1};
  std::optional<int> i0;
  std::vector<int> immaterial;

  friend bool operator==(const ElementaryFamily&, const ElementaryFamily&) = default;
};

std::string describe(const ElementaryFamily& f);

using Beta = std::array<Coeff, 3>;

/// (1,1,-2) for Type I; for Type II the nonzero entries are 1 and -1 in
/// increasing index order.
Beta defaultBeta(const ElementaryFamily& f);

Derivation makeElementary(const TrinomialSpec& s, const ElementaryFamily& fam, const Beta& beta);

std::vector<ElementaryFamily> enumerateElementaryFamilies(const TrinomialSpec& s);

bool isTypeII(const ElementaryFamily& f);

/// delta(p) = sum_v dp/dT_v * delta(T_v), reduced modulo g.
Poly applyDerivation(const Derivation& d, const Poly& p);

/// The same sum computed in K[T], without reduction.
Poly applyDerivationUnreduced(const Derivation& d, const Poly& p);

bool isWellDefined(const Derivation& d);

/// Degree of a homogeneous derivation, nullopt if not homogeneous.
/// Throws ZeroDerivation when every image vanishes.
std::optional<GroupElement> homogeneityDegree(const Derivation& d, const KGrading& g);

struct NilpotencyVerdict {
  enum class Status { Nilpotent, NotNilpotentWithinBound, DetectedNonNilpotent };

  Status status = Status::NotNilpotentWithinBound;
  std::size_t bound = 0;
  /// Nilpotent: least m with delta^m(T_v) = 0, per generator.
  std::vector<std::size_t> indices;
  /// DetectedNonNilpotent: delta^{step-1}(T_v) divides delta^step(T_v) != 0.
  std::optional<std::size_t> witness_var;
  std::size_t witness_step = 0;

  bool nilpotent() const { return status == Status::Nilpotent; }
  std::size_t maxIndex() const;
};

std::string toString(NilpotencyVerdict::Status s);

std::size_t defaultNilpotencyBound(const TrinomialSpec& s);

NilpotencyVerdict boundedNilpotency(const Derivation& d, std::size_t bound);

bool kernelMembership(const Derivation& d, const Poly& h);

/// h * d for a homogeneous kernel element h.
Derivation scaleByKernel(const Derivation& d, const Poly& h, const KGrading& g);

/// Every monomial T_i^{l_i} has at most one variable with a nonzero image.
bool structuralShape(const Derivation& d);

/// structuralShape after confirming d is a well-defined homogeneous LND
/// (nilpotent within `bound`); throws PreconditionNotVerified otherwise.
bool structuralCheck(const Derivation& d, const KGrading& g, std::size_t bound);

}  // namespace trideriv
