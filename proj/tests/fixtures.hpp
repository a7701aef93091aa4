#pragma once

// The published descriptions of all homogeneous LNDs for
//   g = T01*T02 + T11*T12 + T21^2   and   g = T01*T02 + T11*T12 + T21*T22,
// written out term by term and compared with h * delta_{C,beta}.

#include <string>
#include <vector>

#include "trideriv/derivation.hpp"
#include "trideriv/errors.hpp"

namespace fixtures {

using namespace trideriv;

struct Outcome {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void record(bool ok, const std::string& what) {
    ++cases;
    if (!ok && failures++ == 0) first_failure = what;
  }
};

inline std::string pw(const std::string& var, int k) {
  if (k == 0) return "1";
  return k == 1 ? var : var + "^" + std::to_string(k);
}

inline std::string T(int i, int j) { return varName({i, j}); }

// Well defined, homogeneous, nilpotent, and equal to h * delta_{C,beta}.
inline bool matches(const TrinomialSpec& s, const KGrading& g, const std::vector<std::string>& displayed,
                    const ElementaryFamily& fam, const Beta& beta, const std::string& h) {
  std::vector<Poly> images;
  for (const auto& text : displayed) images.push_back(normalFormModG(parsePoly(text, s.layout()), s));
  const Derivation d(s, images);
  if (!isWellDefined(d)) return false;
  if (!homogeneityDegree(d, g)) return false;
  if (!boundedNilpotency(d, defaultNilpotencyBound(s)).nilpotent()) return false;
  const Derivation built = scaleByKernel(makeElementary(s, fam, beta), parsePoly(h, s.layout()), g);
  return built == d;
}

inline int other(int j) { return j == 1 ? 2 : 1; }

inline Outcome firstTrinomial() {
  const TrinomialSpec s = parseTrinomial("T01*T02 + T11*T12 + T21^2");
  const KGrading g = computeGrading(s);
  Outcome out;
  const std::vector<std::array<int, 3>> powers{{0, 0, 0}, {1, 0, 0}, {0, 2, 1}, {1, 1, 2}, {2, 0, 3}};

  // lambda * T0i^k T1j^l T21^p * (T1j d/dT0ibar - T0i d/dT1jbar)
  for (const Rational lambda : {Rational(1), Rational(-3, 2)})
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j)
        for (const auto& [k, l, p] : powers) {
          const std::string h = pw(T(0, i), k) + "*" + pw(T(1, j), l) + "*" + pw(T(2, 1), p);
          const std::string lam = "(" + lambda.get_str() + ")";
          std::vector<std::string> disp(s.n(), "0");
          disp[s.layout().flat({0, other(i)})] = lam + "*" + h + "*" + T(1, j);
          disp[s.layout().flat({1, other(j)})] = "-" + lam + "*" + h + "*" + T(0, i);
          const ElementaryFamily fam{FamilyType::II, {other(i), other(j), 1}, 2, {2}};
          const Beta beta{Coeff(lambda), Coeff(Rational(-lambda)), Coeff(0)};
          out.record(matches(s, g, disp, fam, beta, h),
                     "type II, i=" + std::to_string(i) + " j=" + std::to_string(j) + " h=" + h);
        }

  // T0i^k T1j^l (a1 T01T02 - a0 T11T12)^p *
  //   (a0 T1j T21 d/dT0ibar + a1 T0i T21 d/dT1jbar - (a0+a1)/2 T0i T1j d/dT21)
  const std::vector<std::pair<Rational, Rational>> alphas{{1, 1}, {2, -1}, {Rational(1, 2), 3}};
  for (const auto& [a0, a1] : alphas)
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j)
        for (const auto& [k, l, p] : powers) {
          const std::string A0 = "(" + a0.get_str() + ")", A1 = "(" + a1.get_str() + ")";
          const std::string h = pw(T(0, i), k) + "*" + pw(T(1, j), l) + "*(" + A1 + "*T01*T02 - " + A0 +
                                "*T11*T12)^" + std::to_string(p);
          std::vector<std::string> disp(s.n(), "0");
          disp[s.layout().flat({0, other(i)})] = h + "*" + A0 + "*" + T(1, j) + "*T21";
          disp[s.layout().flat({1, other(j)})] = h + "*" + A1 + "*" + T(0, i) + "*T21";
          disp[s.layout().flat({2, 1})] = h + "*(-(" + A0 + "+" + A1 + ")/2)*" + T(0, i) + "*" + T(1, j);
          const ElementaryFamily fam{FamilyType::I, {other(i), other(j), 1}, std::nullopt, {}};
          const Rational half_sum = (a0 + a1) / 2;
          const Beta beta{Coeff(Rational(a0 / 2)), Coeff(Rational(a1 / 2)), Coeff(Rational(-half_sum))};
          out.record(matches(s, g, disp, fam, beta, h),
                     "type I, i=" + std::to_string(i) + " j=" + std::to_string(j) + " h=" + h);
        }
  return out;
}

inline Outcome secondTrinomial() {
  const TrinomialSpec s = parseTrinomial("T01*T02 + T11*T12 + T21*T22");
  const KGrading g = computeGrading(s);
  Outcome out;
  const std::vector<std::array<int, 4>> powers{{0, 0, 0, 0}, {1, 0, 2, 0}, {0, 1, 0, 1}, {2, 1, 1, 2}};
  const std::vector<std::array<Rational, 3>> alphas{
      {1, 2, -3}, {Rational(1, 2), Rational(1, 2), -1}, {1, -1, 0}, {0, 5, -5}, {2, 0, -2}};

  // T0i0^k0 T1i1^k1 T2i2^k2 (a2 T11T12 - a1 T21T22)^p *
  //   (a0 T1i1 T2i2 d/dT0i0bar + a1 T0i0 T2i2 d/dT1i1bar + a2 T0i0 T1i1 d/dT2i2bar)
  for (const auto& a : alphas)
    for (int i0 = 1; i0 <= 2; ++i0)
      for (int i1 = 1; i1 <= 2; ++i1)
        for (int i2 = 1; i2 <= 2; ++i2)
          for (const auto& [k0, k1, k2, p] : powers) {
            std::array<std::string, 3> A;
            for (std::size_t m = 0; m < 3; ++m) A[m] = "(" + a[m].get_str() + ")";
            const std::string h = pw(T(0, i0), k0) + "*" + pw(T(1, i1), k1) + "*" + pw(T(2, i2), k2) + "*(" +
                                  A[2] + "*T11*T12 - " + A[1] + "*T21*T22)^" + std::to_string(p);
            std::vector<std::string> disp(s.n(), "0");
            disp[s.layout().flat({0, other(i0)})] = h + "*" + A[0] + "*" + T(1, i1) + "*" + T(2, i2);
            disp[s.layout().flat({1, other(i1)})] = h + "*" + A[1] + "*" + T(0, i0) + "*" + T(2, i2);
            disp[s.layout().flat({2, other(i2)})] = h + "*" + A[2] + "*" + T(0, i0) + "*" + T(1, i1);

            // A zero alpha_z turns the family into Type II at z; the factor
            // T_{z,i_z} then moves into the kernel coefficient.
            ElementaryFamily fam{FamilyType::I, {other(i0), other(i1), other(i2)}, std::nullopt, {}};
            std::string hk = h;
            const std::array<int, 3> idx{i0, i1, i2};
            for (int z = 0; z < 3; ++z)
              if (a[static_cast<std::size_t>(z)] == 0) {
                fam.type = FamilyType::II;
                fam.i0 = z;
                fam.immaterial = {z};
                fam.c[static_cast<std::size_t>(z)] = 1;
                hk += "*" + T(z, idx[static_cast<std::size_t>(z)]);
              }
            const Beta beta{Coeff(a[0]), Coeff(a[1]), Coeff(a[2])};
            out.record(matches(s, g, disp, fam, beta, hk), "i=(" + std::to_string(i0) + "," +
                                                              std::to_string(i1) + "," +
                                                              std::to_string(i2) + ") h=" + h);
          }
  return out;
}

}  // namespace fixtures
