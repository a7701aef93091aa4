// trideriv: homogeneous locally nilpotent derivations of trinomial algebras.
//
//   trideriv analyze --input "T01*T02^3 + T11^3 + T21^2" [--format text]
//   trideriv scan --max-ni 2 --max-exp 3 --dedupe --out corpus.jsonl
//   trideriv cone --input @spec.txt --basis @basis.json --out cone.json

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "trideriv/analysis.hpp"
#include "trideriv/errors.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kParseError = 1;
constexpr int kVerificationFailure = 2;
constexpr int kIoError = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeFile(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << data;
  if (!out.flush()) throw IoError("write to " + path + " failed");
}

// "@path" reads the file; anything else is the literal text.
std::string resolveInput(const std::string& arg) {
  if (!arg.empty() && arg.front() == '@') return readFile(arg.substr(1));
  return arg;
}

std::string trimmed(std::string s) {
  const auto notspace = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  return s;
}

std::optional<std::vector<std::vector<trideriv::Integer>>> loadBasis(const std::string& arg,
                                                                     const trideriv::TrinomialSpec& s) {
  if (arg.empty()) return std::nullopt;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(resolveInput(arg));
  } catch (const nlohmann::json::parse_error& e) {
    throw trideriv::SyntaxError(std::string("basis file is not valid JSON: ") + e.what());
  }
  return trideriv::parseBasisTarget(j, s);
}

std::uint64_t capFromEnvironment(std::uint64_t fallback) {
  const char* env = std::getenv("TRIDERIV_CAP");
  if (!env || !*env) return fallback;
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(env, &pos);
    if (pos != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw IoError(std::string("TRIDERIV_CAP is not a count: ") + env);
  }
}

bool endsWith(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homogeneous locally nilpotent derivations of trinomial algebras"};
  app.require_subcommand(1);

  std::string input, format = "json", basis_arg, out_path;
  std::size_t bound = 0, probe_degree = 6;

  auto* analyze = app.add_subcommand("analyze", "Classify one trinomial");
  analyze->add_option("--input", input, "Trinomial, structured exponents, or @file")->required();
  analyze->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  analyze->add_option("--basis", basis_arg, "Target degrees for a change of basis (@file or JSON)");
  analyze->add_option("--bound", bound, "Nilpotency iteration bound")->check(CLI::PositiveNumber);
  analyze->add_option("--probe-degree", probe_degree, "Max degree of probed kernel monomials");

  int max_ni = 1, max_exp = 1;
  unsigned jobs = 1;
  bool dedupe = false;
  auto* scan = app.add_subcommand("scan", "Scan every trinomial within bounds");
  scan->add_option("--max-ni", max_ni, "Largest n_i")->required()->check(CLI::PositiveNumber);
  scan->add_option("--max-exp", max_exp, "Largest exponent")->required()->check(CLI::PositiveNumber);
  scan->add_option("--out", out_path, "Output file (.csv or JSON lines)")->required();
  scan->add_flag("--dedupe", dedupe, "One row per symmetry class");
  scan->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* cone = app.add_subcommand("cone", "Weight cone plot data");
  cone->add_option("--input", input, "Trinomial, structured exponents, or @file")->required();
  cone->add_option("--basis", basis_arg, "Target degrees for a change of basis (@file or JSON)");
  cone->add_option("--out", out_path, "Output JSON file")->required();
  cone->add_option("--probe-degree", probe_degree, "Largest k in the T^k probes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParseError;
  }

  try {
    if (*analyze) {
      const auto spec = trideriv::parseTrinomial(trimmed(resolveInput(input)));
      trideriv::AnalyzeOptions opts;
      if (bound > 0) opts.nilpotency_bound = bound;
      opts.probe_degree = probe_degree;
      opts.basis_target = loadBasis(basis_arg, spec);
      const auto report = trideriv::analyze(spec, opts);
      if (format == "text") {
        std::cout << trideriv::reportToText(report);
      } else {
        std::cout << trideriv::reportToJson(report).dump(2) << "\n";
      }
      if (!report.allVerified()) {
        std::cerr << "error: a constructed family failed its own verification\n";
        return kVerificationFailure;
      }
      return kOk;
    }

    if (*scan) {
      trideriv::ScanOptions opts;
      opts.max_ni = max_ni;
      opts.max_exp = max_exp;
      opts.dedupe = dedupe;
      opts.jobs = jobs;
      opts.cap = capFromEnvironment(opts.cap);
      trideriv::ScanSummary summary;
      const auto rows = trideriv::scan(opts, summary);
      writeFile(out_path, endsWith(out_path, ".csv") ? trideriv::scanRowsToCsv(rows)
                                                     : trideriv::scanRowsToJsonLines(rows));
      std::cout << trideriv::scanSummaryToJson(summary).dump(2) << "\n";
      if (!summary.consistent()) {
        std::cerr << "error: corpus scan found inconsistent rows\n";
        return kVerificationFailure;
      }
      return kOk;
    }

    const auto spec = trideriv::parseTrinomial(trimmed(resolveInput(input)));
    const auto data = trideriv::conePlotData(spec, loadBasis(basis_arg, spec), probe_degree);
    writeFile(out_path, data.dump(2) + "\n");
    if (data.contains("basis_isomorphism") && !data["basis_isomorphism"].get<bool>())
      std::cerr << "warning: the target degrees do not define a change of basis\n";
    return kOk;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const trideriv::CapExceeded& e) {
    std::cerr << "error: " << e.what() << " (raise TRIDERIV_CAP to allow it)\n";
    return kIoError;
  } catch (const trideriv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  }
}
