#include "trideriv/poly.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "trideriv/errors.hpp"

namespace trideriv {

Coeff Coeff::operator/(const Coeff& o) const {
  if (o.isZero()) throw Error("division by zero coefficient");
  const Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
  return {(re_ * o.re_ + im_ * o.im_) / norm, (im_ * o.re_ - re_ * o.im_) / norm};
}

namespace {

std::string imaginaryLiteral(const Rational& magnitude) {
  return magnitude == 1 ? std::string("i") : magnitude.get_str() + "i";
}

}  // namespace

std::string Coeff::toString() const {
  if (isReal()) return re_.get_str();
  if (re_ == 0) return (im_ < 0 ? "-" : "") + imaginaryLiteral(abs(im_));
  return "(" + re_.get_str() + (im_ < 0 ? "-" : "+") + imaginaryLiteral(abs(im_)) + ")";
}

bool MonomialOrder::operator()(const Exponents& a, const Exponents& b) const {
  std::uint64_t da = 0, db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da < db;
  // Ties: the later variable is the larger one.
  for (std::size_t k = a.size(); k-- > 0;)
    if (a[k] != b[k]) return a[k] < b[k];
  return false;
}

Poly Poly::constant(const VarLayout& layout, const Coeff& c) {
  return monomial(layout, Exponents(layout.size(), 0), c);
}

Poly Poly::variable(const VarLayout& layout, VarIndex v) {
  Exponents e(layout.size(), 0);
  e[layout.flat(v)] = 1;
  return monomial(layout, std::move(e), Coeff(1));
}

Poly Poly::monomial(const VarLayout& layout, Exponents exps, const Coeff& c) {
  if (exps.size() != layout.size()) throw VariableSetMismatch("exponent vector has wrong length");
  Poly p(layout);
  p.addTerm(exps, c);
  return p;
}

const Poly::Terms::value_type& Poly::leadingTerm() const {
  if (terms_.empty()) throw ZeroPolynomial("the zero polynomial has no leading term");
  return *terms_.rbegin();
}

void Poly::addTerm(const Exponents& exps, const Coeff& c) {
  if (c.isZero()) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
  }
}

void Poly::checkLayout(const Poly& o) const {
  if (!(layout_ == o.layout_)) throw VariableSetMismatch("polynomials over different variable sets");
}

Poly& Poly::operator+=(const Poly& o) {
  checkLayout(o);
  for (const auto& [e, c] : o.terms_) addTerm(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  checkLayout(o);
  for (const auto& [e, c] : o.terms_) addTerm(e, -c);
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  Poly out = *this;
  out += o;
  return out;
}

Poly Poly::operator-(const Poly& o) const {
  Poly out = *this;
  out -= o;
  return out;
}

Poly Poly::operator-() const { return *this * Coeff(-1); }

Poly Poly::operator*(const Poly& o) const {
  checkLayout(o);
  Poly out(layout_);
  Exponents e(layout_.size());
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out.addTerm(e, ca * cb);
    }
  return out;
}

Poly Poly::operator*(const Coeff& c) const {
  Poly out(layout_);
  if (c.isZero()) return out;
  for (const auto& [e, x] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, x * c);
  return out;
}

Poly operator*(const Coeff& c, const Poly& p) { return p * c; }

Poly Poly::pow(unsigned k) const {
  Poly result = constant(layout_, Coeff(1));
  Poly base = *this;
  while (k) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k) base = base * base;
  }
  return result;
}

std::string Poly::toString() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [exps, c] = *it;
    std::string mono;
    for (std::size_t k = 0; k < exps.size(); ++k) {
      if (exps[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += varName(layout_.var(k));
      if (exps[k] != 1) mono += "^" + std::to_string(exps[k]);
    }
    bool negative = false;
    std::string mag;
    if (c.isReal()) {
      negative = c.re() < 0;
      const Rational a = abs(c.re());
      if (!(a == 1 && !mono.empty())) mag = a.get_str();
    } else if (c.re() == 0) {
      negative = c.im() < 0;
      mag = imaginaryLiteral(abs(c.im()));
    } else {
      mag = c.toString();
    }
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    out += mag;
    if (!mag.empty() && !mono.empty()) out += "*";
    out += mono;
    first = false;
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const VarLayout& layout) : layout_(layout) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) src_.push_back(ch);
  }

  Poly parse() {
    if (src_.empty()) throw SyntaxError("empty polynomial");
    Poly p = expr();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg + " at offset " + std::to_string(pos_) + " in '" + src_ + "'");
  }
  bool peek(char c) const { return pos_ < src_.size() && src_[pos_] == c; }
  bool digit() const { return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])); }

  std::string digits() {
    std::string d;
    while (digit()) d.push_back(src_[pos_++]);
    return d;
  }

  Poly expr() {
    Poly acc(layout_);
    bool negate = false;
    if (peek('+') || peek('-')) negate = src_[pos_++] == '-';
    Poly t = term();
    acc += negate ? -t : t;
    while (peek('+') || peek('-')) {
      negate = src_[pos_++] == '-';
      t = term();
      acc += negate ? -t : t;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (peek('*') || peek('/')) {
      const bool div = src_[pos_++] == '/';
      Poly rhs = factor();
      if (!div) {
        acc = acc * rhs;
        continue;
      }
      if (rhs.isZero()) fail("division by zero");
      const auto& [e, c] = rhs.leadingTerm();
      if (rhs.termCount() != 1 || std::any_of(e.begin(), e.end(), [](auto x) { return x != 0; }))
        fail("only division by constants is supported");
      acc = acc * (Coeff(1) / c);
    }
    return acc;
  }

  Poly factor() {
    if (peek('-')) {
      ++pos_;
      return -factor();
    }
    Poly base = atom();
    if (peek('^')) {
      ++pos_;
      const std::string d = digits();
      if (d.empty() || d.size() > 6) fail("expected a nonnegative integer exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(d)));
    }
    return base;
  }

  Poly atom() {
    if (peek('(')) {
      ++pos_;
      Poly inner = expr();
      if (!peek(')')) fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (peek('i')) {
      ++pos_;
      return Poly::constant(layout_, Coeff::imaginaryUnit());
    }
    if (peek('T')) {
      ++pos_;
      const std::string d = digits();
      if (d.size() < 2 || d.size() > 7) fail("malformed variable name");
      const VarIndex v{d[0] - '0', std::stoi(d.substr(1))};
      if (v.i > 2 || v.j < 1 || v.j > layout_.count(v.i))
        throw IndexError("variable T" + d + " is not part of this trinomial");
      return Poly::variable(layout_, v);
    }
    if (digit()) {
      Rational value(digits());
      if (peek('/') && pos_ + 1 < src_.size() &&
          std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
        ++pos_;
        const Rational den(digits());
        if (den == 0) fail("zero denominator");
        value /= den;
      }
      value.canonicalize();
      if (peek('i')) {
        ++pos_;
        return Poly::constant(layout_, Coeff(Rational(0), value));
      }
      return Poly::constant(layout_, Coeff(value));
    }
    fail("expected a term");
  }

  const VarLayout& layout_;
  std::string src_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parsePoly(std::string_view text, const VarLayout& layout) {
  return PolyParser(text, layout).parse();
}

Poly trinomialPoly(const TrinomialSpec& s) {
  Poly g(s.layout());
  for (int i = 0; i < 3; ++i) {
    Exponents e(s.n(), 0);
    for (int j = 1; j <= s.n(i); ++j)
      e[s.layout().flat({i, j})] = static_cast<std::uint32_t>(s.exponent({i, j}));
    g.addTerm(e, Coeff(1));
  }
  return g;
}

Poly partialDerivative(const Poly& p, std::size_t flat_var) {
  Poly out(p.layout());
  if (flat_var >= p.layout().size()) throw IndexError("variable index out of range");
  for (const auto& [e, c] : p.terms()) {
    if (e[flat_var] == 0) continue;
    Exponents d = e;
    d[flat_var] -= 1;
    out.addTerm(d, c * Coeff(static_cast<long>(e[flat_var])));
  }
  return out;
}

Poly partialDerivative(const Poly& p, VarIndex v) {
  return partialDerivative(p, p.layout().flat(v));
}

DivisionResult divide(const Poly& p, const Poly& divisor) {
  if (!(p.layout() == divisor.layout()))
    throw VariableSetMismatch("polynomials over different variable sets");
  const auto& [lead_exp, lead_coeff] = divisor.leadingTerm();
  DivisionResult out{Poly(p.layout()), Poly(p.layout())};
  Poly work = p;
  Exponents shift(lead_exp.size());
  while (!work.isZero()) {
    const auto [exps, c] = work.leadingTerm();
    bool divisible = true;
    for (std::size_t k = 0; k < exps.size(); ++k) {
      if (exps[k] < lead_exp[k]) {
        divisible = false;
        break;
      }
      shift[k] = exps[k] - lead_exp[k];
    }
    if (!divisible) {
      out.remainder.addTerm(exps, c);
      work.addTerm(exps, -c);
      continue;
    }
    const Coeff factor = c / lead_coeff;
    out.quotient.addTerm(shift, factor);
    Exponents e(shift.size());
    for (const auto& [de, dc] : divisor.terms()) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = de[k] + shift[k];
      work.addTerm(e, -(factor * dc));
    }
  }
  return out;
}

std::optional<Poly> exactQuotient(const Poly& p, const Poly& divisor) {
  auto r = divide(p, divisor);
  if (!r.remainder.isZero()) return std::nullopt;
  return std::move(r.quotient);
}

Poly normalFormModG(const Poly& p, const TrinomialSpec& s) {
  return divide(p, trinomialPoly(s)).remainder;
}

GroupElement monomialDegree(const Exponents& exps, const KGrading& g) {
  std::vector<Integer> v(exps.begin(), exps.end());
  return g.projection(v);
}

std::map<GroupElement, Poly, GroupElementLess> homogeneousComponents(const Poly& p,
                                                                     const KGrading& g) {
  std::map<GroupElement, Poly, GroupElementLess> out;
  for (const auto& [e, c] : p.terms()) {
    auto it = out.try_emplace(monomialDegree(e, g), Poly(p.layout())).first;
    it->second.addTerm(e, c);
  }
  return out;
}

std::optional<GroupElement> kDegreeOf(const Poly& p, const KGrading& g) {
  if (p.isZero()) throw ZeroPolynomial("the zero polynomial has no degree");
  std::optional<GroupElement> deg;
  for (const auto& [e, c] : p.terms()) {
    GroupElement d = monomialDegree(e, g);
    if (!deg) {
      deg = std::move(d);
    } else if (!(*deg == d)) {
      return std::nullopt;
    }
  }
  return deg;
}

}  // namespace trideriv
