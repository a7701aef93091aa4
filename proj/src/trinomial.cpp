#include "trideriv/trinomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <set>

#include "trideriv/errors.hpp"

namespace trideriv {

std::string varName(VarIndex v) { return "T" + std::to_string(v.i) + std::to_string(v.j); }

VarLayout::VarLayout(std::array<int, 3> counts) : counts_(counts) {
  size_ = 0;
  for (int c : counts_) {
    if (c < 1) throw IndexError("every monomial needs at least one variable");
    size_ += static_cast<std::size_t>(c);
  }
}

std::size_t VarLayout::flat(VarIndex v) const {
  if (v.i < 0 || v.i > 2 || v.j < 1 || v.j > counts_[static_cast<std::size_t>(v.i)])
    throw IndexError("variable " + varName(v) + " out of range");
  std::size_t offset = 0;
  for (int k = 0; k < v.i; ++k) offset += static_cast<std::size_t>(counts_[static_cast<std::size_t>(k)]);
  return offset + static_cast<std::size_t>(v.j - 1);
}

VarIndex VarLayout::var(std::size_t flat) const {
  for (int i = 0; i < 3; ++i) {
    const auto c = static_cast<std::size_t>(counts_[static_cast<std::size_t>(i)]);
    if (flat < c) return {i, static_cast<int>(flat) + 1};
    flat -= c;
  }
  throw IndexError("flat variable index out of range");
}

TrinomialSpec::TrinomialSpec(std::array<std::vector<int>, 3> exponents) : l_(std::move(exponents)) {
  std::array<int, 3> counts{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (l_[i].empty()) throw IndexError("monomial " + std::to_string(i) + " has no variables");
    for (int e : l_[i])
      if (e < 1) throw ExponentError("exponents must be positive, got " + std::to_string(e));
    counts[i] = static_cast<int>(l_[i].size());
  }
  layout_ = VarLayout(counts);
}

int TrinomialSpec::exponent(VarIndex v) const {
  layout_.flat(v);
  return l_[static_cast<std::size_t>(v.i)][static_cast<std::size_t>(v.j - 1)];
}

int TrinomialSpec::maxExponent() const {
  int m = 0;
  for (const auto& t : l_)
    for (int e : t) m = std::max(m, e);
  return m;
}

namespace {

std::string stripSpace(std::string_view text) {
  std::string out;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

bool allDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

long parseSignedInt(std::string_view s, std::string_view what) {
  std::string_view body = s;
  bool neg = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    neg = body.front() == '-';
    body.remove_prefix(1);
  }
  if (!allDigits(body) || body.size() > 9)
    throw SyntaxError("malformed " + std::string(what) + " '" + std::string(s) + "'");
  long v = std::stol(std::string(body));
  return neg ? -v : v;
}

TrinomialSpec parseStructured(const std::string& text) {
  std::array<std::optional<std::vector<int>>, 3> tuples;
  int seen = 0;
  for (const auto& clause : split(text, ';')) {
    if (clause.empty()) continue;
    const auto eq = clause.find('=');
    if (eq == std::string::npos || clause.size() < 2 || clause[0] != 'l')
      throw SyntaxError("expected 'l<i>=<exponents>' but got '" + clause + "'");
    const std::string key = clause.substr(1, eq - 1);
    if (!allDigits(key)) throw SyntaxError("bad monomial key '" + clause.substr(0, eq) + "'");
    const long i = std::stol(key);
    if (i > 2) throw IndexError("monomial index " + key + " not in {0,1,2}");
    auto& slot = tuples[static_cast<std::size_t>(i)];
    if (slot) throw SyntaxError("monomial l" + key + " given twice");
    std::vector<int> exps;
    const std::string list = clause.substr(eq + 1);
    if (list.empty()) throw SyntaxError("empty exponent list for l" + key);
    for (const auto& item : split(list, ',')) {
      if (item.empty()) throw SyntaxError("empty exponent in l" + key);
      const long e = parseSignedInt(item, "exponent");
      if (e < 1) throw ExponentError("exponent " + item + " is less than 1");
      exps.push_back(static_cast<int>(e));
    }
    slot = std::move(exps);
    ++seen;
  }
  if (seen != 3)
    throw MonomialCountError("expected exactly 3 monomials, got " + std::to_string(seen));
  return TrinomialSpec({*tuples[0], *tuples[1], *tuples[2]});
}

TrinomialSpec parsePolynomialForm(const std::string& text) {
  const auto monomials = split(text, '+');
  for (const auto& m : monomials)
    if (m.empty()) throw SyntaxError("empty monomial in '" + text + "'");
  if (monomials.size() != 3)
    throw MonomialCountError("expected exactly 3 monomials, got " +
                             std::to_string(monomials.size()));

  std::array<std::vector<int>, 3> l;
  for (std::size_t k = 0; k < 3; ++k) {
    std::vector<std::pair<long, int>> factors;  // (j, exponent)
    for (const auto& factor : split(monomials[k], '*')) {
      if (factor.size() < 3 || factor[0] != 'T')
        throw SyntaxError("expected a variable T<i><j>, got '" + factor + "'");
      const auto caret = factor.find('^');
      const std::string name = factor.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
      if (!allDigits(name) || name.size() < 2)
        throw SyntaxError("malformed variable name 'T" + name + "'");
      const int i = name[0] - '0';
      if (i > 2) throw IndexError("monomial index " + std::to_string(i) + " not in {0,1,2}");
      if (static_cast<std::size_t>(i) != k)
        throw IndexError("variable T" + name + " appears in monomial " + std::to_string(k));
      const std::string jtext = name.substr(1);
      if (jtext.size() > 6) throw IndexError("variable index too large in T" + name);
      const long j = std::stol(jtext);
      if (j < 1) throw IndexError("variable positions start at 1, got T" + name);
      int e = 1;
      if (caret != std::string::npos) {
        const std::string etext = factor.substr(caret + 1);
        const long ev = parseSignedInt(etext, "exponent");
        if (ev < 1) throw ExponentError("exponent " + etext + " is less than 1");
        e = static_cast<int>(ev);
      }
      factors.emplace_back(j, e);
    }
    std::sort(factors.begin(), factors.end());
    for (std::size_t p = 0; p < factors.size(); ++p) {
      if (factors[p].first != static_cast<long>(p + 1))
        throw IndexError("variables of monomial " + std::to_string(k) +
                         " must be numbered 1..n_i without gaps or repeats");
      l[k].push_back(factors[p].second);
    }
  }
  return TrinomialSpec(std::move(l));
}

}  // namespace

TrinomialSpec parseTrinomial(std::string_view text) {
  const std::string s = stripSpace(text);
  if (s.empty()) throw SyntaxError("empty input");
  for (char ch : s)
    if (static_cast<unsigned char>(ch) > 127) throw SyntaxError("non-ASCII input");
  if (s.find('=') != std::string::npos) return parseStructured(s);
  return parsePolynomialForm(s);
}

std::string renderPolynomial(const TrinomialSpec& s) {
  std::string out;
  for (int i = 0; i < 3; ++i) {
    if (i) out += " + ";
    for (int j = 1; j <= s.n(i); ++j) {
      if (j > 1) out += "*";
      out += varName({i, j});
      const int e = s.exponent({i, j});
      if (e != 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

std::string renderStructured(const TrinomialSpec& s) {
  std::string out;
  for (int i = 0; i < 3; ++i) {
    if (i) out += "; ";
    out += "l" + std::to_string(i) + "=";
    for (int j = 0; j < s.n(i); ++j) {
      if (j) out += ",";
      out += std::to_string(s.exponents(i)[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

IntMatrix exponentMatrixL(const TrinomialSpec& s) {
  IntMatrix m(2, s.n());
  const auto& layout = s.layout();
  for (int j = 1; j <= s.n(0); ++j) {
    const auto c = layout.flat({0, j});
    m(0, c) = -s.exponent({0, j});
    m(1, c) = -s.exponent({0, j});
  }
  for (int j = 1; j <= s.n(1); ++j) m(0, layout.flat({1, j})) = s.exponent({1, j});
  for (int j = 1; j <= s.n(2); ++j) m(1, layout.flat({2, j})) = s.exponent({2, j});
  return m;
}

std::array<int, 3> monomialGcds(const TrinomialSpec& s) {
  std::array<int, 3> d{};
  for (int i = 0; i < 3; ++i) {
    int g = 0;
    for (int e : s.exponents(i)) g = std::gcd(g, e);
    d[static_cast<std::size_t>(i)] = g;
  }
  return d;
}

bool hasLinearTerm(const TrinomialSpec& s) {
  for (int i = 0; i < 3; ++i)
    if (s.n(i) == 1 && s.exponent({i, 1}) == 1) return true;
  return false;
}

bool isFactorial(const TrinomialSpec& s) {
  if (hasLinearTerm(s))
    throw LinearTermError("g = " + renderPolynomial(s) +
                          " has a linear term; its hypersurface is an affine space");
  const auto d = monomialGcds(s);
  return std::gcd(d[0], d[1]) == 1 && std::gcd(d[0], d[2]) == 1 && std::gcd(d[1], d[2]) == 1;
}

bool theoremHypothesis(const TrinomialSpec& s) {
  int with_one = 0;
  for (int i = 0; i < 3; ++i) {
    const auto& t = s.exponents(i);
    if (std::find(t.begin(), t.end(), 1) != t.end()) ++with_one;
  }
  return with_one <= 1;
}

bool rigidityCriterion(const TrinomialSpec& s) {
  for (const auto& t : s.allExponents())
    for (int e : t)
      if (e < 2) return false;
  return true;
}

bool existenceCriterion(const TrinomialSpec& s) { return !rigidityCriterion(s); }

TrinomialSpec canonicalForm(const TrinomialSpec& s) {
  auto l = s.allExponents();
  for (auto& t : l) std::sort(t.begin(), t.end());
  std::sort(l.begin(), l.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return TrinomialSpec(std::move(l));
}

}  // namespace trideriv
