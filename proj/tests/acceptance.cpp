// Acceptance runner: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. All comparisons are exact; the only
// tolerances are the wall-clock limits below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "properties.hpp"
#include "trideriv/analysis.hpp"

using namespace trideriv;

namespace {

constexpr double kSingleSpecLimit = 1.0;   // seconds, criteria 1 and 3
constexpr double kCorpusLimit = 60.0;      // seconds, criteria 4 and 7
constexpr double kPropertyLimit = 120.0;   // seconds, criterion 8

const TrinomialSpec kA = parseTrinomial("T01*T02^3 + T11^3 + T21^2");
const TrinomialSpec kB = parseTrinomial("T01*T02 + T11*T12 + T21^2");
const TrinomialSpec kC = parseTrinomial("T01^2 + T11^2 + T21^2");

using Targets = std::vector<std::vector<Integer>>;
const Targets kTargetsA{{-3, 3}, {1, 1}, {0, 2}, {0, 3}};
const Targets kTargetsB{{2, 0, 1}, {0, 2, -1}, {2, 2, 1}, {0, 0, -1}, {1, 1, 0}};
const Targets kTargetsC{{1, 0, 0}, {1, 1, 0}, {1, 0, 1}};

double seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Result {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      pass = false;
      detail << what;
    }
  }
};

int failures = 0;

void report(int n, const std::string& title, Result& r, double elapsed) {
  std::printf("%s criterion %d: %s [%.3fs]", r.pass ? "PASS" : "FAIL", n, title.c_str(), elapsed);
  const std::string d = r.detail.str();
  if (!d.empty()) std::printf(" -- %s", d.c_str());
  std::printf("\n");
  std::fflush(stdout);
  if (!r.pass) ++failures;
}

void run(int n, const std::string& title, const std::function<void(Result&)>& body) {
  Result r;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.require(false, std::string("exception: ") + e.what());
  }
  report(n, title, r, seconds(start));
}

std::string coords(const std::vector<Integer>& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + v[k].get_str();
  return s + ")";
}

void groups(Result& r) {
  struct Case {
    const TrinomialSpec* spec;
    std::size_t rank;
    std::vector<Integer> torsion;
  };
  for (const Case& c : {Case{&kA, 2, {}}, Case{&kB, 3, {}}, Case{&kC, 1, {2, 2}}}) {
    const auto start = std::chrono::steady_clock::now();
    const ClassificationReport rep = analyze(*c.spec);
    const double t = seconds(start);
    const auto& g = *rep.grading.group;
    r.require(g.freeRank() == c.rank && g.torsionOrders() == c.torsion,
              renderPolynomial(*c.spec) + " gave " + g.toString());
    r.require(t < kSingleSpecLimit, renderPolynomial(*c.spec) + " took " + std::to_string(t) + "s");
  }
  r.detail << (r.pass ? "Z^2, Z^3, Z + Z_2 + Z_2" : "");
}

void degrees(Result& r) {
  struct Case {
    const TrinomialSpec* spec;
    const Targets* targets;
  };
  for (const Case& c : {Case{&kA, &kTargetsA}, Case{&kB, &kTargetsB}, Case{&kC, &kTargetsC}}) {
    const KGrading g = computeGrading(*c.spec);
    const BasisChange b = matchBasis(g, *c.targets);
    bool mapped = b.isIsomorphism();
    for (std::size_t v = 0; mapped && v < g.degrees.size(); ++v)
      mapped = applyBasis(g, b, g.degrees[v]) == (*c.targets)[v];
    if (!mapped) {
      std::string why = !b.respects_relations ? "targets violate the relations"
                        : !b.surjective       ? "targets satisfy the relations but span a subgroup of index " +
                                              b.free_index.get_str() + ", so no isomorphism reaches them"
                                              : "mapping mismatch";
      r.require(false, renderPolynomial(*c.spec) + ": " + why);
    }
  }
  const std::size_t mu_failures = props::muProperty(100, 2024);
  r.require(mu_failures == 0, std::to_string(mu_failures) + " of 100 random specs break the mu relation");
  if (mu_failures == 0) r.detail << (r.pass ? "" : "; ") << "mu relation holds on 100 random specs";
}

void enumeration(Result& r) {
  const auto start = std::chrono::steady_clock::now();
  auto images = [](const TrinomialSpec& s, const ElementaryFamily& f, const Beta& b) {
    std::vector<std::string> out;
    const Derivation d = makeElementary(s, f, b);
    for (const auto& p : d.images()) out.push_back(p.toString());
    return out;
  };
  auto expect = [&r](const std::vector<std::string>& got, const std::vector<std::string>& want,
                     const std::string& what) {
    std::string shown;
    for (const auto& x : got) shown += (shown.empty() ? "" : ", ") + x;
    r.require(got == want, what + " images differ: [" + shown + "]");
  };
  const auto fa = enumerateElementaryFamilies(kA);
  r.require(fa.size() == 2 && isTypeII(fa[0]) && isTypeII(fa[1]), "spec A should have exactly two Type II families");
  if (fa.size() == 2) {
    expect(images(kA, fa[0], {Coeff(1), Coeff(0), Coeff(-1)}), {"2*T21", "0", "0", "-T02^3"}, "spec A, i0=1");
    expect(images(kA, fa[1], {Coeff(1), Coeff(-1), Coeff(0)}), {"3*T11^2", "0", "-T02^3", "0"}, "spec A, i0=2");
  }
  const auto fb = enumerateElementaryFamilies(kB);
  const ElementaryFamily target{FamilyType::I, {2, 2, 1}, std::nullopt, {}};
  bool found = false;
  for (const auto& f : fb) found = found || f == target;
  r.require(found, "spec B lacks Type I C=(2,2,1)");
  expect(images(kB, target, {Coeff(Rational(1, 2)), Coeff(Rational(1, 2)), Coeff(-1)}),
         {"0", "T11*T21", "0", "T01*T21", "-T01*T11"}, "spec B Type I");
  r.require(enumerateElementaryFamilies(kC).empty(), "spec C should have no families");
  const double t = seconds(start);
  r.require(t < kSingleSpecLimit, "took " + std::to_string(t) + "s");
  if (r.pass) r.detail << "A: 2 Type II, B: Type I C=(2,2,1) present, C: none";
}

ScanSummary corpus_summary;
std::vector<ScanRow> corpus_rows;

void verification(Result& r) {
  ScanOptions opts;
  opts.max_ni = 2;
  opts.max_exp = 3;
  opts.dedupe = true;
  const auto start = std::chrono::steady_clock::now();
  corpus_rows = scan(opts, corpus_summary);
  const double t = seconds(start);
  std::size_t verified = 0, max_index = 0;
  for (const auto& row : corpus_rows) {
    verified += row.verified_families;
    max_index = std::max(max_index, row.max_nilpotency_index);
  }
  r.require(corpus_summary.failed_families == 0,
            std::to_string(corpus_summary.failed_families) + " families failed verification");
  r.require(t < kCorpusLimit, "took " + std::to_string(t) + "s");
  r.detail << corpus_rows.size() << " specs, " << verified << "/" << corpus_summary.families
           << " families verified, max nilpotency index " << max_index;
}

void boundary(Result& r) {
  const KGrading g = computeGrading(kA);
  const BasisChange b = matchBasis(g, kTargetsA);
  r.require(b.isIsomorphism(), "published basis not reachable");
  const auto fam = enumerateElementaryFamilies(kA).at(0);
  const Derivation d = makeElementary(kA, fam, defaultBeta(fam));
  const Poly t11 = Poly::variable(kA.layout(), {1, 1});
  for (unsigned k = 0; k <= 10; ++k) {
    const Derivation hd = scaleByKernel(d, t11.pow(k), g);
    const auto deg = homogeneityDegree(hd, g);
    if (!deg) {
      r.require(false, "k=" + std::to_string(k) + " not homogeneous");
      continue;
    }
    const auto y = applyBasis(g, b, *deg);
    r.require(y == std::vector<Integer>{3, 2 * static_cast<long>(k)}, "k=" + std::to_string(k) + " degree " + coords(y));
    r.require(isPrimitiveDegree(g, *deg) == (k <= 1), "k=" + std::to_string(k) + " primitivity");
  }
  if (r.pass) r.detail << "deg = (3,2k); primitive exactly for k in {0,1}, k <= 10";
}

void nonHomogeneous(Result& r) {
  const auto P = [](const char* t) { return parsePoly(t, kC.layout()); };
  const Derivation d(kC, {P("i*T21"), P("-T21"), P("-i*T01 + T11")});
  r.require(applyDerivationUnreduced(d, trinomialPoly(kC)).isZero(), "delta(g) is not identically zero");
  const NilpotencyVerdict v = boundedNilpotency(d, defaultNilpotencyBound(kC));
  r.require(v.nilpotent() && v.maxIndex() == 3, "nilpotency verdict " + toString(v.status));
  r.require(!homogeneityDegree(d, computeGrading(kC)).has_value(), "reported homogeneous");
  if (r.pass) r.detail << "well defined, nilpotent with max index 3, not K-homogeneous";
}

void crossChecks(Result& r) {
  if (corpus_rows.empty()) {
    ScanOptions opts{2, 3, true, 1, 200000, true};
    corpus_rows = scan(opts, corpus_summary);
  }
  r.require(corpus_summary.factoriality_counterexamples == 0,
            std::to_string(corpus_summary.factoriality_counterexamples) + " factoriality counterexamples");
  r.require(corpus_summary.existence_counterexamples == 0,
            std::to_string(corpus_summary.existence_counterexamples) + " existence counterexamples");
  r.require(corpus_summary.type_counterexamples == 0,
            std::to_string(corpus_summary.type_counterexamples) + " Type I families under the hypothesis");
  if (r.pass) r.detail << "0 counterexamples over " << corpus_summary.specs << " specs";
}

void properties(Result& r) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t snf = props::smithProperty(1000, 1);
  const std::size_t cone = props::coneProperty(500, 2);
  const std::size_t leibniz = props::leibnizProperty(200, 3);
  const std::size_t division = props::divisionProperty(200, 4);
  const double t = seconds(start);
  r.require(snf == 0, std::to_string(snf) + " SNF failures");
  r.require(cone == 0, std::to_string(cone) + " cone failures");
  r.require(leibniz == 0, std::to_string(leibniz) + " Leibniz failures");
  r.require(division == 0, std::to_string(division) + " division failures");
  r.require(t < kPropertyLimit, "took " + std::to_string(t) + "s");
  if (r.pass) r.detail << "1000 SNF, 500 cone, 200 Leibniz, 200 division cases";
}

void publishedFixtures(Result& r) {
  const auto a = fixtures::firstTrinomial();
  const auto b = fixtures::secondTrinomial();
  r.require(a.failures == 0, "T21^2 case: " + a.first_failure);
  r.require(b.failures == 0, "T21*T22 case: " + b.first_failure);
  if (r.pass) r.detail << a.cases << " + " << b.cases << " (family, beta, h) instances match exactly";
}

}  // namespace

int main() {
  run(1, "grading groups", groups);
  run(2, "degree vectors up to a change of basis", degrees);
  run(3, "elementary families of the worked examples", enumeration);
  run(4, "verification over the corpus n_i <= 2, l_ij <= 3", verification);
  run(5, "primitivity boundary of T11^k * delta", boundary);
  run(6, "non-homogeneous LND on the rigid example", nonHomogeneous);
  run(7, "criteria cross-checks over the corpus", crossChecks);
  run(8, "property suites", properties);
  run(9, "published LND families as h * delta_{C,beta}", publishedFixtures);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
