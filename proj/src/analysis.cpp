#include "trideriv/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "trideriv/errors.hpp"

namespace trideriv {

using nlohmann::json;

json integerJson(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json coordinatesJson(const std::vector<Integer>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(integerJson(x));
  return a;
}

namespace {

json rationalJson(const Rational& q) {
  if (q.get_den() == 1) return integerJson(q.get_num());
  return q.get_str();
}

json rationalVectorJson(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rationalJson(x));
  return a;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string monomialString(const Exponents& e, const VarLayout& layout) {
  return Poly::monomial(layout, e, Coeff(1)).toString();
}

const char* typeName(FamilyType t) { return t == FamilyType::I ? "I" : "II"; }

}  // namespace

FamilyVerification verifyFamily(const KGrading& g, const ElementaryFamily& fam, const Beta& beta,
                                std::size_t bound) {
  FamilyVerification v;
  v.beta = beta;
  const Derivation d = makeElementary(g.spec, fam, beta);
  v.well_defined = isWellDefined(d);
  try {
    v.degree = homogeneityDegree(d, g);
  } catch (const ZeroDerivation&) {
    v.degree.reset();
  }
  if (v.well_defined) v.nilpotency = boundedNilpotency(d, bound);
  v.primitive = v.degree && isPrimitiveDegree(g, *v.degree);
  v.structural = structuralShape(d);
  return v;
}

Beta randomBeta(const ElementaryFamily& fam, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<long> num(1, 9);
  std::uniform_int_distribution<long> den(1, 5);
  std::bernoulli_distribution neg(0.5);
  auto draw = [&] {
    Rational q(num(gen) * (neg(gen) ? -1 : 1), den(gen));
    q.canonicalize();
    return q;
  };
  if (fam.type == FamilyType::I) {
    for (;;) {
      const Rational a = draw(), b = draw();
      if (a + b != 0) return {Coeff(a), Coeff(b), Coeff(Rational(-(a + b)))};
    }
  }
  const Rational x = draw();
  Beta beta{Coeff(0), Coeff(0), Coeff(0)};
  bool first = true;
  for (int i = 0; i < 3; ++i) {
    if (i == *fam.i0) continue;
    beta[static_cast<std::size_t>(i)] = first ? Coeff(x) : Coeff(Rational(-x));
    first = false;
  }
  return beta;
}

KernelProbe probeKernelMonomials(const KGrading& g, const Derivation& d, const GroupElement& deg,
                                 std::size_t max_degree) {
  KernelProbe probe;
  probe.max_degree = max_degree;
  const auto& s = g.spec;
  for (std::size_t v = 0; v < s.n(); ++v)
    if (normalFormModG(d.image(v), s).isZero()) probe.kernel_vars.push_back(v);

  const WeightCone cone = weightCone(g);
  auto primitive = [&](const GroupElement& e) { return !coneContains(cone, e.freePartImage()); };

  for (auto v : probe.kernel_vars) {
    std::optional<std::size_t> flip;
    for (std::size_t k = 1; k <= max_degree && !flip; ++k)
      if (!primitive(deg + g.degrees[v].scaled(static_cast<long>(k)))) flip = k;
    probe.boundaries[v] = flip;
  }

  // Every monomial of total degree 1..max_degree in the kernel variables.
  Exponents e(s.n(), 0);
  const std::size_t kv = probe.kernel_vars.size();
  auto visit = [&](auto&& self, std::size_t pos, std::size_t remaining, GroupElement acc) -> void {
    if (pos == kv) {
      if (remaining == max_degree) return;  // h = 1
      if (!primitive(acc)) probe.non_primitive.push_back({e, acc, false});
      return;
    }
    const std::size_t var = probe.kernel_vars[pos];
    for (std::size_t a = 0; a <= remaining; ++a) {
      e[var] = static_cast<std::uint32_t>(a);
      self(self, pos + 1, remaining - a, a ? acc + g.degrees[var].scaled(static_cast<long>(a)) : acc);
    }
    e[var] = 0;
  };
  if (kv > 0) visit(visit, 0, max_degree, deg);
  std::sort(probe.non_primitive.begin(), probe.non_primitive.end(),
            [](const ProbeEntry& a, const ProbeEntry& b) {
              return MonomialOrder{}(a.h, b.h);
            });
  return probe;
}

bool ClassificationReport::allVerified() const {
  return std::all_of(families.begin(), families.end(),
                     [](const FamilyReport& f) { return f.verified(); });
}

std::size_t ClassificationReport::countType(FamilyType t) const {
  return static_cast<std::size_t>(std::count_if(
      families.begin(), families.end(), [t](const FamilyReport& f) { return f.family.type == t; }));
}

ClassificationReport analyze(const TrinomialSpec& s, const AnalyzeOptions& opts) {
  ClassificationReport r{s, computeGrading(s)};
  r.gcds = monomialGcds(s);
  r.linear_term = hasLinearTerm(s);
  if (!r.linear_term) r.factorial = isFactorial(s);
  r.torsion_free = r.grading.group->isTorsionFree();
  r.rigid_criterion = rigidityCriterion(s);
  r.existence_criterion = existenceCriterion(s);
  r.theorem_hypothesis = theoremHypothesis(s);
  r.nilpotency_bound = opts.nilpotency_bound.value_or(defaultNilpotencyBound(s));

  for (const auto& fam : enumerateElementaryFamilies(s)) {
    const Beta beta = defaultBeta(fam);
    FamilyReport fr{fam, makeElementary(s, fam, beta), {}, {}, std::nullopt};
    fr.primary = verifyFamily(r.grading, fam, beta, r.nilpotency_bound);
    const std::uint64_t seed = fnv1a(renderStructured(s) + "|" + describe(fam));
    fr.second = verifyFamily(r.grading, fam, randomBeta(fam, seed), r.nilpotency_bound);
    if (fr.primary.degree && opts.probe_degree > 0)
      fr.probe = probeKernelMonomials(r.grading, fr.derivation, *fr.primary.degree, opts.probe_degree);
    r.families.push_back(std::move(fr));
  }

  if (opts.basis_target) r.basis = matchBasis(r.grading, *opts.basis_target);

  if (r.linear_term)
    r.notes.emplace_back("g has a linear term: R(g) is a polynomial ring in n-1 variables");
  if (!r.factorial.value_or(false))
    r.notes.emplace_back(
        "rigidity flag is the criterion (factorial case): every l_ij >= 2; rigidity itself is "
        "only established for factorial R(g)");
  if (s == TrinomialSpec(std::array<std::vector<int>, 3>{{{1, 3}, {3}, {2}}}))
    r.notes.emplace_back(
        "weight cone: with deg T01=(-3,3), deg T02=(1,1), deg T11=(0,2), deg T21=(0,3) the cone "
        "spanned by the generators is {(u,v) : -v <= u <= v}; the inequality -u <= v <= u does "
        "not contain (0,2) or (0,3) and is not used");
  if (r.basis && !r.basis->isIsomorphism()) {
    std::string why = !r.basis->respects_relations
                          ? "the target degrees violate the relations of K"
                          : "the target degrees do not generate the target group";
    if (r.basis->respects_relations && r.grading.group->isTorsionFree())
      why += " (image has index " + r.basis->free_index.get_str() + ")";
    r.notes.push_back("basis target is not reachable by a change of basis: " + why);
  }
  return r;
}

namespace {

json nilpotencyJson(const NilpotencyVerdict& n, const VarLayout& layout) {
  json j{{"status", toString(n.status)}, {"bound", n.bound}};
  if (n.nilpotent()) {
    json idx = json::object();
    for (std::size_t v = 0; v < n.indices.size(); ++v) idx[varName(layout.var(v))] = n.indices[v];
    j["indices"] = idx;
    j["max_index"] = n.maxIndex();
  }
  if (n.witness_var) {
    j["witness"] = {{"variable", varName(layout.var(*n.witness_var))}, {"step", n.witness_step}};
  }
  return j;
}

json betaJson(const Beta& b) {
  json a = json::array();
  for (const auto& c : b) a.push_back(c.toString());
  return a;
}

json verificationJson(const FamilyVerification& v, const KGrading& g,
                      const std::optional<BasisChange>& basis) {
  json j{{"beta", betaJson(v.beta)},
         {"well_defined", v.well_defined},
         {"homogeneous", v.degree.has_value()},
         {"nilpotency", nilpotencyJson(v.nilpotency, g.spec.layout())},
         {"primitive", v.primitive},
         {"structural", v.structural},
         {"passed", v.passed()}};
  j["degree"] = v.degree ? coordinatesJson(v.degree->coordinates()) : json(nullptr);
  if (basis && v.degree) j["degree_target"] = coordinatesJson(applyBasis(g, *basis, *v.degree));
  return j;
}

json derivationJson(const Derivation& d) {
  json images = json::object();
  for (std::size_t v = 0; v < d.spec().n(); ++v)
    images[varName(d.spec().layout().var(v))] = d.image(v).toString();
  return {{"images", images}};
}

json familyJson(const ElementaryFamily& f) {
  json j{{"type", typeName(f.type)},
         {"C", {f.c[0], f.c[1], f.c[2]}},
         {"immaterial", f.immaterial},
         {"description", describe(f)}};
  j["i0"] = f.i0 ? json(*f.i0) : json(nullptr);
  return j;
}

json groupJson(const FgAbelianGroup& g) {
  return {{"free_rank", g.freeRank()},
          {"torsion", coordinatesJson(g.torsionOrders())},
          {"text", g.toString()}};
}

}  // namespace

nlohmann::json reportToJson(const ClassificationReport& r) {
  const auto& s = r.spec;
  const auto& g = r.grading;
  json exps = json::array();
  for (const auto& t : s.allExponents()) exps.push_back(t);

  json degrees = json::object();
  for (std::size_t v = 0; v < s.n(); ++v)
    degrees[varName(s.layout().var(v))] = coordinatesJson(g.degrees[v].coordinates());

  json cone_gens = json::array();
  for (const auto& gen : weightCone(g).generators) cone_gens.push_back(rationalVectorJson(gen));

  json families = json::array();
  for (const auto& f : r.families) {
    json fj = familyJson(f.family);
    fj["derivation"] = derivationJson(f.derivation);
    fj["verdicts"] = verificationJson(f.primary, g, r.basis);
    fj["second_instance"] = verificationJson(f.second, g, r.basis);
    fj["verified"] = f.verified();
    if (f.probe) {
      json bounds = json::object();
      for (const auto& [v, k] : f.probe->boundaries)
        bounds[varName(s.layout().var(v))] = k ? json(*k) : json(nullptr);
      json kvars = json::array();
      for (auto v : f.probe->kernel_vars) kvars.push_back(varName(s.layout().var(v)));
      json np = json::array();
      for (const auto& e : f.probe->non_primitive) {
        json ej{{"h", monomialString(e.h, s.layout())}, {"degree", coordinatesJson(e.degree.coordinates())}};
        if (r.basis) ej["degree_target"] = coordinatesJson(applyBasis(g, *r.basis, e.degree));
        np.push_back(ej);
      }
      fj["kernel_probe"] = {{"max_degree", f.probe->max_degree},
                            {"kernel_variables", kvars},
                            {"boundaries", bounds},
                            {"non_primitive", np}};
    }
    families.push_back(fj);
  }

  json flags{{"linear_term", r.linear_term},
             {"torsion_free", r.torsion_free},
             {"rigid_criterion", r.rigid_criterion},
             {"rigid_criterion_scope",
              r.factorial.value_or(false) ? "rigidity (factorial)" : "criterion (factorial case)"},
             {"existence_criterion", r.existence_criterion},
             {"theorem_hypothesis", r.theorem_hypothesis}};
  flags["factorial"] = r.factorial ? json(*r.factorial) : json(nullptr);

  json out{{"schema", kSchema},
           {"kind", "analysis"},
           {"input",
            {{"polynomial", renderPolynomial(s)},
             {"structured", renderStructured(s)},
             {"exponents", exps}}},
           {"grading",
            {{"group", groupJson(*g.group)},
             {"basis", "canonical"},
             {"degrees", degrees},
             {"mu", coordinatesJson(g.mu.coordinates())}}},
           {"gcds", {r.gcds[0], r.gcds[1], r.gcds[2]}},
           {"flags", flags},
           {"weight_cone", {{"dimension", g.group->freeRank()}, {"generators", cone_gens}}},
           {"nilpotency_bound", r.nilpotency_bound},
           {"families", families},
           {"summary",
            {{"type_I", r.countType(FamilyType::I)},
             {"type_II", r.countType(FamilyType::II)},
             {"all_verified", r.allVerified()}}},
           {"notes", r.notes}};

  if (r.basis) {
    json tdeg = json::object();
    for (std::size_t v = 0; v < s.n(); ++v)
      tdeg[varName(s.layout().var(v))] = coordinatesJson(applyBasis(g, *r.basis, g.degrees[v]));
    json m = json::array();
    for (std::size_t row = 0; row < r.basis->matrix.rows(); ++row)
      m.push_back(coordinatesJson(r.basis->matrix.row(row)));
    out["basis_change"] = {{"isomorphism", r.basis->isIsomorphism()},
                           {"respects_relations", r.basis->respects_relations},
                           {"surjective", r.basis->surjective},
                           {"free_index", integerJson(r.basis->free_index)},
                           {"matrix", m},
                           {"degrees", tdeg},
                           {"mu", coordinatesJson(applyBasis(g, *r.basis, g.mu))}};
  }
  return out;
}

std::string reportToText(const ClassificationReport& r) {
  const auto& s = r.spec;
  const auto& g = r.grading;
  std::ostringstream os;
  os << "g = " << renderPolynomial(s) << "   [" << renderStructured(s) << "]\n";
  os << "K = " << g.group->toString() << "\n";
  for (std::size_t v = 0; v < s.n(); ++v)
    os << "  deg " << varName(s.layout().var(v)) << " = " << g.degrees[v].toString() << "\n";
  os << "  mu = " << g.mu.toString() << "\n";
  if (r.basis) {
    os << "target basis: " << (r.basis->isIsomorphism() ? "isomorphic" : "NOT an isomorphism")
       << ", matrix " << r.basis->matrix.toString() << "\n";
    for (std::size_t v = 0; v < s.n(); ++v) {
      os << "  deg " << varName(s.layout().var(v)) << " -> (";
      const auto y = applyBasis(g, *r.basis, g.degrees[v]);
      for (std::size_t k = 0; k < y.size(); ++k) os << (k ? "," : "") << y[k].get_str();
      os << ")\n";
    }
  }
  os << "d = (" << r.gcds[0] << "," << r.gcds[1] << "," << r.gcds[2] << ")\n";
  os << "linear term: " << (r.linear_term ? "yes" : "no") << "\n";
  os << "factorial: " << (r.factorial ? (*r.factorial ? "yes" : "no") : "n/a") << "\n";
  os << "rigid criterion: " << (r.rigid_criterion ? "yes" : "no") << "\n";
  os << "homogeneous LND exists: " << (r.existence_criterion ? "yes" : "no") << "\n";
  os << "at most one monomial with an exponent-1 variable: " << (r.theorem_hypothesis ? "yes" : "no")
     << "\n";
  os << "elementary families: " << r.families.size() << " (Type I " << r.countType(FamilyType::I)
     << ", Type II " << r.countType(FamilyType::II) << ")\n";
  for (const auto& f : r.families) {
    os << "  " << describe(f.family) << (f.verified() ? "  [verified]" : "  [FAILED]") << "\n";
    for (std::size_t v = 0; v < s.n(); ++v) {
      const Poly& img = f.derivation.image(v);
      if (!img.isZero())
        os << "    delta(" << varName(s.layout().var(v)) << ") = " << img.toString() << "\n";
    }
    if (f.primary.degree) os << "    deg = " << f.primary.degree->toString();
    os << ", primitive: " << (f.primary.primitive ? "yes" : "no")
       << ", nilpotency index: " << f.primary.nilpotency.maxIndex() << "\n";
    if (f.probe) {
      for (const auto& [v, k] : f.probe->boundaries) {
        os << "    " << varName(s.layout().var(v)) << "^k * delta non-primitive from k = ";
        if (k) {
          os << *k << "\n";
        } else {
          os << "(none up to " << f.probe->max_degree << ")\n";
        }
      }
    }
  }
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

std::vector<std::vector<Integer>> parseBasisTarget(const nlohmann::json& j, const TrinomialSpec& s) {
  const json& deg = j.is_object() && j.contains("degrees") ? j.at("degrees") : j;
  auto vec = [](const json& a) {
    if (!a.is_array()) throw SyntaxError("target degrees must be integer arrays");
    std::vector<Integer> v;
    for (const auto& x : a) {
      if (x.is_number_integer()) {
        v.emplace_back(x.get<long>());
      } else if (x.is_string()) {
        v.emplace_back(x.get<std::string>());
      } else {
        throw SyntaxError("target degree entries must be integers");
      }
    }
    return v;
  };
  std::vector<std::vector<Integer>> out;
  if (deg.is_array()) {
    for (const auto& a : deg) out.push_back(vec(a));
  } else if (deg.is_object()) {
    for (std::size_t v = 0; v < s.n(); ++v) {
      const std::string name = varName(s.layout().var(v));
      if (!deg.contains(name)) throw SyntaxError("target basis is missing " + name);
      out.push_back(vec(deg.at(name)));
    }
  } else {
    throw SyntaxError("target basis must list degrees");
  }
  if (out.size() != s.n())
    throw DimensionMismatch("target basis lists " + std::to_string(out.size()) +
                            " degrees, expected " + std::to_string(s.n()));
  return out;
}

nlohmann::json conePlotData(const TrinomialSpec& s,
                            const std::optional<std::vector<std::vector<Integer>>>& basis_target,
                            std::size_t probe_degree) {
  const KGrading g = computeGrading(s);
  std::optional<BasisChange> basis;
  if (basis_target) basis = matchBasis(g, *basis_target);
  const std::size_t r = g.group->freeRank();

  auto coords = [&](const GroupElement& e) {
    return basis ? applyBasis(g, *basis, e) : e.coordinates();
  };
  auto point = [&](const GroupElement& e) {
    auto c = coords(e);
    c.resize(r);
    return c;
  };

  std::vector<std::vector<Integer>> all_points;
  json generators = json::array();
  json degrees = json::object();
  for (std::size_t v = 0; v < s.n(); ++v) {
    const auto p = point(g.degrees[v]);
    generators.push_back(coordinatesJson(p));
    all_points.push_back(p);
    degrees[varName(s.layout().var(v))] = coordinatesJson(coords(g.degrees[v]));
  }

  const WeightCone cone = weightCone(g);
  json derivations = json::array();
  json probes = json::array();
  for (const auto& fam : enumerateElementaryFamilies(s)) {
    const Derivation d = makeElementary(s, fam, defaultBeta(fam));
    const auto deg = homogeneityDegree(d, g);
    if (!deg) continue;
    const auto p = point(*deg);
    all_points.push_back(p);
    derivations.push_back({{"family", describe(fam)},
                           {"degree", coordinatesJson(coords(*deg))},
                           {"point", coordinatesJson(p)},
                           {"primitive", isPrimitiveDegree(g, *deg)}});
    for (std::size_t v = 0; v < s.n(); ++v) {
      if (!normalFormModG(d.image(v), s).isZero()) continue;
      for (std::size_t k = 1; k <= probe_degree; ++k) {
        const GroupElement e = *deg + g.degrees[v].scaled(static_cast<long>(k));
        Exponents h(s.n(), 0);
        h[v] = static_cast<std::uint32_t>(k);
        const auto q = point(e);
        all_points.push_back(q);
        probes.push_back({{"family", describe(fam)},
                          {"h", monomialString(h, s.layout())},
                          {"degree", coordinatesJson(coords(e))},
                          {"point", coordinatesJson(q)},
                          {"primitive", !coneContains(cone, e.freePartImage())}});
      }
    }
  }

  json grid = json::object();
  if (r > 0) {
    std::vector<Integer> lo(r, Integer(0)), hi(r, Integer(0));
    for (const auto& p : all_points)
      for (std::size_t k = 0; k < r; ++k) {
        if (p[k] < lo[k]) lo[k] = p[k];
        if (p[k] > hi[k]) hi[k] = p[k];
      }
    for (std::size_t k = 0; k < r; ++k) {
      lo[k] -= 1;
      hi[k] += 1;
    }
    grid = {{"min", coordinatesJson(lo)}, {"max", coordinatesJson(hi)}};
  }

  json out{{"schema", kSchema},
           {"kind", "cone"},
           {"input", renderPolynomial(s)},
           {"group", groupJson(*g.group)},
           {"dimension", r},
           {"basis", basis ? "target" : "canonical"},
           {"generators", generators},
           {"degrees", degrees},
           {"mu", coordinatesJson(coords(g.mu))},
           {"derivations", derivations},
           {"probes", probes},
           {"grid", grid}};
  if (basis) out["basis_isomorphism"] = basis->isIsomorphism();
  return out;
}

std::uint64_t rawCorpusSize(int max_ni, int max_exp) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  auto mul = [](std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > kMax / a) return kMax;
    return a * b;
  };
  std::uint64_t per = 0, power = 1;
  for (int k = 1; k <= max_ni; ++k) {
    power = mul(power, static_cast<std::uint64_t>(max_exp));
    per = per > kMax - power ? kMax : per + power;
  }
  return mul(mul(per, per), per);
}

std::vector<TrinomialSpec> enumerateCorpus(int max_ni, int max_exp, bool dedupe) {
  if (max_ni < 1 || max_exp < 1) throw Error("scan bounds must be at least 1");
  std::vector<std::vector<int>> tuples;
  for (int len = 1; len <= max_ni; ++len) {
    std::vector<int> t(static_cast<std::size_t>(len), 1);
    for (;;) {
      tuples.push_back(t);
      std::size_t k = t.size();
      while (k > 0 && t[k - 1] == max_exp) t[--k] = 1;
      if (k == 0) break;
      ++t[k - 1];
    }
  }
  std::vector<TrinomialSpec> out;
  std::set<TrinomialSpec> seen;
  for (const auto& a : tuples)
    for (const auto& b : tuples)
      for (const auto& c : tuples) {
        TrinomialSpec s({a, b, c});
        if (dedupe) {
          seen.insert(canonicalForm(s));
        } else {
          out.push_back(std::move(s));
        }
      }
  if (dedupe) out.assign(seen.begin(), seen.end());
  return out;
}

ScanRow scanSpec(const TrinomialSpec& s, bool verify) {
  const KGrading g = computeGrading(s);
  ScanRow row{s};
  row.free_rank = g.group->freeRank();
  row.torsion = g.group->torsionOrders();
  row.gcds = monomialGcds(s);
  row.linear_term = hasLinearTerm(s);
  if (!row.linear_term) row.factorial = isFactorial(s);
  row.rigid_criterion = rigidityCriterion(s);
  row.existence_criterion = existenceCriterion(s);
  row.theorem_hypothesis = theoremHypothesis(s);
  const std::size_t bound = defaultNilpotencyBound(s);
  for (const auto& fam : enumerateElementaryFamilies(s)) {
    (fam.type == FamilyType::I ? row.type_i : row.type_ii) += 1;
    if (!verify) continue;
    const FamilyVerification v = verifyFamily(g, fam, defaultBeta(fam), bound);
    if (v.passed()) {
      ++row.verified_families;
      row.max_nilpotency_index = std::max(row.max_nilpotency_index, v.nilpotency.maxIndex());
    } else {
      ++row.failed_families;
    }
  }
  return row;
}

std::vector<ScanRow> scan(const ScanOptions& opts, ScanSummary& summary) {
  const std::uint64_t raw = rawCorpusSize(opts.max_ni, opts.max_exp);
  if (raw > opts.cap)
    throw CapExceeded("corpus of " + std::to_string(raw) + " specs exceeds the cap of " +
                      std::to_string(opts.cap));
  const std::vector<TrinomialSpec> corpus = enumerateCorpus(opts.max_ni, opts.max_exp, opts.dedupe);

  std::vector<std::optional<ScanRow>> slots(corpus.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < corpus.size(); k = next++) slots[k] = scanSpec(corpus[k], opts.verify);
  };
  const unsigned jobs = std::max(1U, opts.jobs);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  summary = ScanSummary{};
  std::vector<ScanRow> rows;
  rows.reserve(slots.size());
  for (auto& slot : slots) {
    ScanRow& row = *slot;
    ++summary.specs;
    summary.families += row.type_i + row.type_ii;
    summary.failed_families += row.failed_families;
    const bool torsion_free = row.torsion.empty();
    if (row.factorial && *row.factorial != torsion_free) ++summary.factoriality_counterexamples;
    if ((row.type_i + row.type_ii > 0) != row.existence_criterion) ++summary.existence_counterexamples;
    if (row.theorem_hypothesis && row.type_i > 0) ++summary.type_counterexamples;
    if (smithNormalForm(exponentMatrixL(row.spec)).rank < 2) ++summary.rank_deviations;
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json scanRowToJson(const ScanRow& row) {
  json exps = json::array();
  for (const auto& t : row.spec.allExponents()) exps.push_back(t);
  json j{{"spec", renderStructured(row.spec)},
         {"polynomial", renderPolynomial(row.spec)},
         {"exponents", exps},
         {"group", {{"free_rank", row.free_rank}, {"torsion", coordinatesJson(row.torsion)}}},
         {"gcds", {row.gcds[0], row.gcds[1], row.gcds[2]}},
         {"linear_term", row.linear_term},
         {"rigid_criterion", row.rigid_criterion},
         {"existence_criterion", row.existence_criterion},
         {"theorem_hypothesis", row.theorem_hypothesis},
         {"families", {{"type_I", row.type_i}, {"type_II", row.type_ii}}},
         {"verified_families", row.verified_families},
         {"failed_families", row.failed_families},
         {"max_nilpotency_index", row.max_nilpotency_index}};
  j["factorial"] = row.factorial ? json(*row.factorial) : json(nullptr);
  return j;
}

std::string scanRowsToJsonLines(const std::vector<ScanRow>& rows) {
  std::string out;
  for (const auto& row : rows) {
    json j = scanRowToJson(row);
    j["schema"] = kSchema;
    out += j.dump() + "\n";
  }
  return out;
}

std::string scanRowsToCsv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "spec,polynomial,free_rank,torsion,d0,d1,d2,linear_term,factorial,rigid_criterion,"
        "existence_criterion,theorem_hypothesis,type_I,type_II,verified_families,failed_families,"
        "max_nilpotency_index\n";
  auto b = [](bool x) { return x ? "true" : "false"; };
  for (const auto& r : rows) {
    std::string torsion;
    for (const auto& d : r.torsion) torsion += (torsion.empty() ? "" : " ") + d.get_str();
    os << '"' << renderStructured(r.spec) << "\",\"" << renderPolynomial(r.spec) << "\","
       << r.free_rank << ',' << torsion << ',' << r.gcds[0] << ',' << r.gcds[1] << ',' << r.gcds[2]
       << ',' << b(r.linear_term) << ',' << (r.factorial ? b(*r.factorial) : "") << ','
       << b(r.rigid_criterion) << ',' << b(r.existence_criterion) << ','
       << b(r.theorem_hypothesis) << ',' << r.type_i << ',' << r.type_ii << ','
       << r.verified_families << ',' << r.failed_families << ',' << r.max_nilpotency_index << "\n";
  }
  return os.str();
}

nlohmann::json scanSummaryToJson(const ScanSummary& s) {
  return {{"schema", kSchema},
          {"kind", "scan_summary"},
          {"specs", s.specs},
          {"families", s.families},
          {"failed_families", s.failed_families},
          {"factoriality_counterexamples", s.factoriality_counterexamples},
          {"existence_counterexamples", s.existence_counterexamples},
          {"type_counterexamples", s.type_counterexamples},
          {"rank_deviations", s.rank_deviations},
          {"consistent", s.consistent()}};
}

}  // namespace trideriv
