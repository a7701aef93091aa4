#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "trideriv/abelian.hpp"
#include "trideriv/analysis.hpp"
#include "trideriv/derivation.hpp"
#include "trideriv/errors.hpp"
#include "trideriv/grading.hpp"
#include "trideriv/poly.hpp"
#include "trideriv/trinomial.hpp"

namespace py = pybind11;
using namespace trideriv;

namespace {

py::int_ toPy(const Integer& x) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

Integer fromPy(const py::handle& h) { return Integer(py::str(h).cast<std::string>()); }

py::list toPy(const std::vector<Integer>& v) {
  py::list out;
  for (const auto& x : v) out.append(toPy(x));
  return out;
}

py::list toPy(const IntMatrix& m) {
  py::list out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.append(toPy(m.row(r)));
  return out;
}

IntMatrix matrixFromPy(const py::sequence& rows) {
  const std::size_t nr = py::len(rows);
  const std::size_t nc = nr ? py::len(rows[0]) : 0;
  IntMatrix m(nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    py::sequence row = rows[r];
    if (py::len(row) != nc) throw DimensionMismatch("ragged matrix");
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = fromPy(row[c]);
  }
  return m;
}

std::optional<std::vector<std::vector<Integer>>> basisFromPy(const py::object& basis) {
  if (basis.is_none()) return std::nullopt;
  std::vector<std::vector<Integer>> out;
  for (auto row : basis) {
    std::vector<Integer> v;
    for (auto x : row) v.push_back(fromPy(x));
    out.push_back(std::move(v));
  }
  return out;
}

Beta betaFromPy(const std::vector<std::string>& beta, const VarLayout& layout) {
  if (beta.size() != 3) throw DimensionMismatch("beta needs three entries");
  Beta out;
  for (std::size_t i = 0; i < 3; ++i) {
    const Poly p = parsePoly(beta[i], layout);
    if (p.isZero()) {
      out[i] = Coeff(0);
    } else if (p.termCount() == 1 && p.leadingTerm().first == Exponents(layout.size(), 0)) {
      out[i] = p.leadingTerm().second;
    } else {
      throw SyntaxError("beta entries must be constants");
    }
  }
  return out;
}

ElementaryFamily familyFromPy(const std::string& type, std::array<int, 3> c, std::optional<int> i0) {
  ElementaryFamily f;
  if (type == "I") {
    f.type = FamilyType::I;
  } else if (type == "II") {
    f.type = FamilyType::II;
    if (!i0) throw BetaPatternError("a Type II family needs i0");
    f.immaterial = {*i0};
    c[static_cast<std::size_t>(*i0)] = 1;
  } else {
    throw SyntaxError("family type must be \"I\" or \"II\"");
  }
  f.c = c;
  f.i0 = i0;
  return f;
}

std::vector<std::string> imagesOf(const Derivation& d) {
  std::vector<std::string> out;
  for (const auto& p : d.images()) out.push_back(p.toString());
  return out;
}

}  // namespace

PYBIND11_MODULE(_trideriv, m) {
  m.doc() = "Homogeneous locally nilpotent derivations of trinomial algebras";
  m.attr("SCHEMA") = kSchema;

  static py::exception<Error> base(m, "TriderivError", PyExc_ValueError);
  static py::exception<ParseError> parse(m, "ParseError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  py::class_<TrinomialSpec>(m, "Trinomial")
      .def(py::init([](const std::string& text) { return parseTrinomial(text); }), py::arg("text"))
      .def_property_readonly("exponents",
                             [](const TrinomialSpec& s) {
                               std::vector<std::vector<int>> out;
                               for (const auto& t : s.allExponents()) out.push_back(t);
                               return out;
                             })
      .def_property_readonly("n", py::overload_cast<>(&TrinomialSpec::n, py::const_))
      .def("polynomial", &renderPolynomial)
      .def("structured", &renderStructured)
      .def("gcds", &monomialGcds)
      .def("has_linear_term", &hasLinearTerm)
      .def("is_factorial", &isFactorial)
      .def("rigidity_criterion", &rigidityCriterion)
      .def("existence_criterion", &existenceCriterion)
      .def("theorem_hypothesis", &theoremHypothesis)
      .def("canonical", &canonicalForm)
      .def("__eq__", [](const TrinomialSpec& a, const TrinomialSpec& b) { return a == b; })
      .def("__hash__", [](const TrinomialSpec& s) { return py::hash(py::str(renderStructured(s))); })
      .def("__repr__", [](const TrinomialSpec& s) { return "Trinomial('" + renderPolynomial(s) + "')"; });

  py::implicitly_convertible<py::str, TrinomialSpec>();

  m.def(
      "smith_normal_form",
      [](const py::sequence& rows) {
        const SnfResult r = smithNormalForm(matrixFromPy(rows));
        return py::dict(py::arg("diagonal") = toPy(r.diagonal()), py::arg("rank") = r.rank,
                        py::arg("d") = toPy(r.d), py::arg("u") = toPy(r.u), py::arg("v") = toPy(r.v));
      },
      py::arg("matrix"), "D = U * M * V with unimodular U, V");

  m.def(
      "grading",
      [](const TrinomialSpec& s) {
        const KGrading g = computeGrading(s);
        py::dict degrees;
        for (std::size_t v = 0; v < s.n(); ++v)
          degrees[py::str(varName(s.layout().var(v)))] = toPy(g.degrees[v].coordinates());
        return py::dict(py::arg("free_rank") = g.group->freeRank(),
                        py::arg("torsion") = toPy(g.group->torsionOrders()),
                        py::arg("group") = g.group->toString(), py::arg("degrees") = degrees,
                        py::arg("mu") = toPy(g.mu.coordinates()));
      },
      py::arg("spec"));

  m.def(
      "cone_contains",
      [](const std::vector<std::vector<std::string>>& generators, const std::vector<std::string>& point) {
        WeightCone c;
        c.ambient_dim = point.size();
        for (const auto& g : generators) {
          std::vector<Rational> v;
          for (const auto& x : g) v.emplace_back(x);
          for (auto& x : v) x.canonicalize();
          c.generators.push_back(std::move(v));
        }
        std::vector<Rational> p;
        for (const auto& x : point) p.emplace_back(x);
        for (auto& x : p) x.canonicalize();
        return coneContains(c, p);
      },
      py::arg("generators"), py::arg("point"),
      "Exact cone membership; coordinates are rational strings such as \"3/2\"");

  m.def(
      "normal_form",
      [](const std::string& poly, const TrinomialSpec& s) {
        return normalFormModG(parsePoly(poly, s.layout()), s).toString();
      },
      py::arg("poly"), py::arg("spec"));

  m.def(
      "families",
      [](const TrinomialSpec& s) {
        py::list out;
        for (const auto& f : enumerateElementaryFamilies(s)) {
          const Derivation d = makeElementary(s, f, defaultBeta(f));
          py::dict row(py::arg("type") = f.type == FamilyType::I ? "I" : "II",
                       py::arg("C") = f.c, py::arg("description") = describe(f),
                       py::arg("images") = imagesOf(d));
          row["i0"] = f.i0 ? py::object(py::int_(*f.i0)) : py::object(py::none());
          out.append(row);
        }
        return out;
      },
      py::arg("spec"));

  m.def(
      "elementary_derivation",
      [](const TrinomialSpec& s, const std::string& type, std::array<int, 3> c, std::optional<int> i0,
         const std::vector<std::string>& beta) {
        const ElementaryFamily f = familyFromPy(type, c, i0);
        return imagesOf(makeElementary(s, f, betaFromPy(beta, s.layout())));
      },
      py::arg("spec"), py::arg("type"), py::arg("C"), py::arg("i0") = py::none(), py::arg("beta"));

  m.def(
      "apply_derivation",
      [](const TrinomialSpec& s, const std::vector<std::string>& images, const std::string& poly) {
        std::vector<Poly> imgs;
        for (const auto& t : images) imgs.push_back(parsePoly(t, s.layout()));
        return applyDerivation(Derivation(s, std::move(imgs)), parsePoly(poly, s.layout())).toString();
      },
      py::arg("spec"), py::arg("images"), py::arg("poly"), "delta(poly) reduced modulo g");

  m.def(
      "nilpotency",
      [](const TrinomialSpec& s, const std::vector<std::string>& images, std::optional<std::size_t> bound) {
        std::vector<Poly> imgs;
        for (const auto& t : images) imgs.push_back(parsePoly(t, s.layout()));
        const auto v = boundedNilpotency(Derivation(s, std::move(imgs)),
                                         bound.value_or(defaultNilpotencyBound(s)));
        return py::dict(py::arg("status") = toString(v.status), py::arg("bound") = v.bound,
                        py::arg("indices") = v.indices);
      },
      py::arg("spec"), py::arg("images"), py::arg("bound") = py::none());

  m.def(
      "analyze_json",
      [](const TrinomialSpec& s, std::optional<std::size_t> bound, std::size_t probe_degree,
         const py::object& basis) {
        AnalyzeOptions opts;
        opts.nilpotency_bound = bound;
        opts.probe_degree = probe_degree;
        opts.basis_target = basisFromPy(basis);
        py::gil_scoped_release release;
        return reportToJson(analyze(s, opts)).dump();
      },
      py::arg("spec"), py::arg("bound") = py::none(), py::arg("probe_degree") = 6,
      py::arg("basis") = py::none());

  m.def(
      "cone_plot_json",
      [](const TrinomialSpec& s, const py::object& basis, std::size_t probe_degree) {
        return conePlotData(s, basisFromPy(basis), probe_degree).dump();
      },
      py::arg("spec"), py::arg("basis") = py::none(), py::arg("probe_degree") = 6);

  m.def(
      "scan_json",
      [](int max_ni, int max_exp, bool dedupe, unsigned jobs, std::uint64_t cap) {
        ScanOptions opts{max_ni, max_exp, dedupe, jobs, cap, true};
        ScanSummary summary;
        std::vector<ScanRow> rows;
        {
          py::gil_scoped_release release;
          rows = scan(opts, summary);
        }
        return py::make_tuple(scanRowsToJsonLines(rows), scanSummaryToJson(summary).dump());
      },
      py::arg("max_ni"), py::arg("max_exp"), py::arg("dedupe") = false, py::arg("jobs") = 1,
      py::arg("cap") = 200000);
}
