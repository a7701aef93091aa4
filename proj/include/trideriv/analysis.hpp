#pragma once

// Aggregated classification of a trinomial algebra, corpus scans and the
// weight-cone plot record. Everything here is deterministic for a given input.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "trideriv/derivation.hpp"
#include "trideriv/grading.hpp"
#include "trideriv/trinomial.hpp"

namespace trideriv {

inline constexpr const char* kSchema = "trideriv/1";

/// Verdicts for one instantiated delta_{C,beta}.
struct FamilyVerification {
  Beta beta;
  bool well_defined = false;
  std::optional<GroupElement> degree;  // nullopt: not homogeneous (or zero)
  NilpotencyVerdict nilpotency;
  bool primitive = false;
  bool structural = false;

  bool passed() const {
    return well_defined && degree && nilpotency.nilpotent() && primitive && structural;
  }
};

FamilyVerification verifyFamily(const KGrading& g, const ElementaryFamily& fam, const Beta& beta,
                                std::size_t bound);

/// A second rational beta with the family's zero pattern, drawn from a
/// generator seeded by `seed`.
Beta randomBeta(const ElementaryFamily& fam, std::uint64_t seed);

struct ProbeEntry {
  Exponents h;  // monomial in kernel variables
  GroupElement degree;
  bool primitive = false;
};

struct KernelProbe {
  std::size_t max_degree = 0;
  std::vector<std::size_t> kernel_vars;  // flat indices with delta(T) = 0
  /// Least k with T_v^k * delta non-primitive, per kernel variable.
  std::map<std::size_t, std::optional<std::size_t>> boundaries;
  std::vector<ProbeEntry> non_primitive;
};

KernelProbe probeKernelMonomials(const KGrading& g, const Derivation& d, const GroupElement& deg,
                                 std::size_t max_degree);

struct FamilyReport {
  ElementaryFamily family;
  Derivation derivation;  // at the default beta
  FamilyVerification primary;
  FamilyVerification second;
  std::optional<KernelProbe> probe;

  bool verified() const {
    return primary.passed() && second.passed() && primary.degree && second.degree &&
           *primary.degree == *second.degree;
  }
};

struct ClassificationReport {
  TrinomialSpec spec;
  KGrading grading;
  std::array<int, 3> gcds{};
  bool linear_term = false;
  std::optional<bool> factorial;  // undefined with a linear term
  bool torsion_free = false;
  bool rigid_criterion = false;
  bool existence_criterion = false;
  bool theorem_hypothesis = false;
  std::size_t nilpotency_bound = 0;
  std::vector<FamilyReport> families;
  std::optional<BasisChange> basis;
  std::vector<std::string> notes;

  bool allVerified() const;
  std::size_t countType(FamilyType t) const;
};

struct AnalyzeOptions {
  std::optional<std::size_t> nilpotency_bound;
  std::size_t probe_degree = 6;
  std::optional<std::vector<std::vector<Integer>>> basis_target;
};

ClassificationReport analyze(const TrinomialSpec& s, const AnalyzeOptions& opts = {});

nlohmann::json reportToJson(const ClassificationReport& r);
std::string reportToText(const ClassificationReport& r);

/// Target degrees from {"degrees": {"T01": [..], ..}} or {"degrees": [[..], ..]}.
std::vector<std::vector<Integer>> parseBasisTarget(const nlohmann::json& j, const TrinomialSpec& s);

/// Generators, generator degrees, mu, derivation degrees and T_v^k probes of
/// every family, for external plotting.
nlohmann::json conePlotData(const TrinomialSpec& s,
                            const std::optional<std::vector<std::vector<Integer>>>& basis_target,
                            std::size_t probe_degree = 6);

struct ScanOptions {
  int max_ni = 1;
  int max_exp = 1;
  bool dedupe = false;
  unsigned jobs = 1;
  std::uint64_t cap = 200000;
  bool verify = true;
};

struct ScanRow {
  TrinomialSpec spec;
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;
  std::array<int, 3> gcds{};
  bool linear_term = false;
  std::optional<bool> factorial;
  bool rigid_criterion = false;
  bool existence_criterion = false;
  bool theorem_hypothesis = false;
  std::size_t type_i = 0;
  std::size_t type_ii = 0;
  std::size_t verified_families = 0;
  std::size_t failed_families = 0;
  std::size_t max_nilpotency_index = 0;
};

struct ScanSummary {
  std::size_t specs = 0;
  std::size_t families = 0;
  std::size_t failed_families = 0;
  std::size_t factoriality_counterexamples = 0;  // factorial vs torsion-free K
  std::size_t existence_counterexamples = 0;     // families nonempty vs some l_ij = 1
  std::size_t type_counterexamples = 0;          // hypothesis holds but a Type I family exists
  std::size_t rank_deviations = 0;               // L of rank below 2

  bool consistent() const {
    return failed_families == 0 && factoriality_counterexamples == 0 &&
           existence_counterexamples == 0 && type_counterexamples == 0;
  }
};

/// Number of specs with 1 <= n_i <= max_ni and 1 <= l_ij <= max_exp.
std::uint64_t rawCorpusSize(int max_ni, int max_exp);

std::vector<TrinomialSpec> enumerateCorpus(int max_ni, int max_exp, bool dedupe);

ScanRow scanSpec(const TrinomialSpec& s, bool verify);

/// Rows in deterministic corpus order regardless of `jobs`.
std::vector<ScanRow> scan(const ScanOptions& opts, ScanSummary& summary);

nlohmann::json scanRowToJson(const ScanRow& row);
std::string scanRowsToJsonLines(const std::vector<ScanRow>& rows);
std::string scanRowsToCsv(const std::vector<ScanRow>& rows);
nlohmann::json scanSummaryToJson(const ScanSummary& s);

nlohmann::json integerJson(const Integer& x);
nlohmann::json coordinatesJson(const std::vector<Integer>& v);

}  // namespace trideriv
