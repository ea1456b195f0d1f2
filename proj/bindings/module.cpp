#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "degseq/asymptotics.hpp"
#include "degseq/degree_sequence.hpp"
#include "degseq/errors.hpp"
#include "degseq/exact.hpp"
#include "degseq/graphical.hpp"
#include "degseq/models.hpp"
#include "degseq/operators.hpp"

namespace py = pybind11;
using namespace degseq;

namespace {

PairConstraint constraint_from(int n, const std::vector<std::pair<int, int>>& forbid,
                               const std::vector<std::pair<int, int>>& force) {
  PairConstraint c(n);
  for (auto [a, b] : forbid) c.forbid(a, b);
  for (auto [a, b] : force) c.force(a, b);
  return c;
}

py::object py_int(const Int& v) { return py::module_::import("builtins").attr("int")(v.str()); }

py::object py_fraction(const Rat& r) {
  auto fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(numer(r).str() + "/" + denom(r).str());
}

Oracle& shared_oracle(int cap) {
  static Oracle small(Oracle::kDefaultCap);
  static Oracle large(24);
  return cap <= Oracle::kDefaultCap ? small : large;
}

py::dict stats_dict(const Seq& degrees) {
  DegreeSequence d(degrees);
  auto s = stats(d);
  py::dict out;
  out["n"] = s.n;
  out["m1"] = py_int(s.m1);
  out["m2"] = py_int(s.m2);
  out["mean"] = py_fraction(s.mean);
  out["mu"] = s.mu ? py_fraction(*s.mu) : py::none();
  out["sigma2"] = py_fraction(s.sigma2);
  out["gamma2"] = py_fraction(s.gamma2);
  out["delta"] = s.delta;
  if (s.eps) {
    py::list eps;
    for (const auto& e : *s.eps) eps.append(py_fraction(e));
    out["eps"] = eps;
  } else {
    out["eps"] = py::none();
  }
  return out;
}

py::dict formula_dict(const FormulaResult& f) {
  py::dict out;
  out["log_value"] = f.log_value;
  out["value"] = f.value;
  return out;
}

}  // namespace

PYBIND11_MODULE(_degseq, m) {
  m.doc() = "exact and asymptotic counting of graphs by degree sequence";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_OverflowError);
  py::register_exception<SingularityError>(m, "SingularityError", PyExc_ArithmeticError);
  py::register_exception<UndefinedError>(m, "UndefinedError", PyExc_ArithmeticError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("stats", &stats_dict, py::arg("degrees"),
        "exact summary statistics of a degree sequence");

  m.def(
      "is_graphical",
      [](const Seq& d) { return erdos_gallai(d); },
      py::arg("degrees"), "Erdos-Gallai graphicality test");
  m.def(
      "koren_graphical", [](const Seq& d) { return koren_graphical(d); }, py::arg("degrees"));

  m.def(
      "count",
      [](const Seq& d, const std::vector<std::pair<int, int>>& forbid,
         const std::vector<std::pair<int, int>>& force, int cap) {
        auto c = constraint_from(static_cast<int>(d.size()), forbid, force);
        return py_int(shared_oracle(cap).count(DegreeSequence(d), c));
      },
      py::arg("degrees"), py::arg("forbid") = std::vector<std::pair<int, int>>{},
      py::arg("force") = std::vector<std::pair<int, int>>{}, py::arg("cap") = Oracle::kDefaultCap,
      "exact number of simple graphs realizing the degree sequence");

  m.def(
      "edge_prob",
      [](const Seq& d, int a, int v, int cap) {
        return py_fraction(shared_oracle(cap).edge_prob(DegreeSequence(d), a, v));
      },
      py::arg("degrees"), py::arg("a"), py::arg("v"), py::arg("cap") = Oracle::kDefaultCap,
      "exact probability that edge av appears in a uniform realization");

  m.def(
      "path_prob",
      [](const Seq& d, int a, int v, int b, int cap) {
        return py_fraction(shared_oracle(cap).path_prob(DegreeSequence(d), a, v, b));
      },
      py::arg("degrees"), py::arg("a"), py::arg("v"), py::arg("b"),
      py::arg("cap") = Oracle::kDefaultCap);

  m.def(
      "ratio",
      [](const Seq& d, int a, int b, int cap) {
        return py_fraction(shared_oracle(cap).ratio(DegreeSequence(d), a, b));
      },
      py::arg("degrees"), py::arg("a"), py::arg("b"), py::arg("cap") = Oracle::kDefaultCap,
      "exact count ratio N(d - e_a)/N(d - e_b)");

  m.def(
      "switching_bound",
      [](const Seq& d) -> py::object {
        auto b = switching_bound(DegreeSequence(d));
        return b ? py_fraction(*b) : py::none();
      },
      py::arg("degrees"), "edge-probability bound; None encodes +infinity");

  // closed-form evaluators
  m.def("binom_model_prob",
        [](const Seq& d) { return formula_dict(binom_model_prob(DegreeSequence(d))); });
  m.def("h_formula", [](const Seq& d) { return formula_dict(h_formula(DegreeSequence(d))); });
  m.def("conjectured_count",
        [](const Seq& d) { return formula_dict(conjectured_count(DegreeSequence(d))); });
  m.def("regular_count_formula",
        [](int n, int deg) { return formula_dict(regular_count_formula(n, deg)); });
  m.def("conj_ratio",
        [](const Seq& d, int a, int b) { return conj_ratio(DegreeSequence(d), a, b); });
  m.def("pgr", [](const Seq& d, int a, int v) { return pgr(DegreeSequence(d), a, v); });
  m.def("rgr", [](const Seq& d, int a, int b) { return rgr(DegreeSequence(d), a, b); });
  m.def("edge_prob_formula",
        [](const Seq& d, int a, int b) { return edge_prob_formula(DegreeSequence(d), a, b); });
  m.def("sparse_edge_prob",
        [](const Seq& d, int a, int v) { return sparse_edge_prob(DegreeSequence(d), a, v); });
  m.def("sparse_ratio",
        [](const Seq& d, int a, int b) { return sparse_ratio(DegreeSequence(d), a, b); });
  m.def(
      "pi",
      [](const std::string& variant, double eps_a, double eps_v, double mu, double sigma2,
         double dbar, int n) {
        auto v = variant == "appendixA" ? PiRhoVariant::appendixA : PiRhoVariant::section7;
        return pi_formula(v, eps_a, eps_v, mu, sigma2, dbar, n);
      },
      py::arg("variant"), py::arg("eps_a"), py::arg("eps_v"), py::arg("mu"), py::arg("sigma2"),
      py::arg("dbar"), py::arg("n"));
  m.def(
      "rho",
      [](const std::string& variant, double eps_a, double eps_b, double mu, double sigma2,
         double dbar, int n) {
        auto v = variant == "appendixA" ? PiRhoVariant::appendixA : PiRhoVariant::section7;
        return rho_formula(v, eps_a, eps_b, mu, sigma2, dbar, n);
      },
      py::arg("variant"), py::arg("eps_a"), py::arg("eps_b"), py::arg("mu"), py::arg("sigma2"),
      py::arg("dbar"), py::arg("n"));
  m.def(
      "error_envelope",
      [](const Seq& d, int k0, double eps) {
        auto e = error_envelope(DegreeSequence(d), k0, eps);
        py::dict out;
        out["eta1"] = e.eta1;
        out["eta2"] = e.eta2;
        out["xi"] = e.xi;
        out["delta"] = e.delta;
        out["eps"] = e.eps;
        return out;
      },
      py::arg("degrees"), py::arg("k0"), py::arg("eps"));

  // random models
  m.def(
      "sample",
      [](const std::string& model, int n, long long mm, double p, std::size_t count,
         std::uint64_t seed, int threads) {
        ModelSpec spec;
        spec.kind = model_kind_from_string(model);
        spec.n = n;
        spec.m = mm;
        spec.p = p;
        spec.seed = seed;
        std::vector<Seq> out;
        out.reserve(count);
        for (auto& s : sample(spec, count, threads)) out.push_back(std::move(s.degrees));
        return out;
      },
      py::arg("model"), py::arg("n"), py::arg("m") = -1, py::arg("p") = -1.0,
      py::arg("count") = 1, py::arg("seed") = 0, py::arg("threads") = 1,
      "draw degree sequences; deterministic in (seed, index) regardless of threads");

  m.def(
      "compare",
      [](const std::string& model_a, const std::string& model_b, int n, long long m_a,
         long long m_b, double p_a, double p_b, const std::string& stat, std::size_t count,
         std::uint64_t seed, int bootstrap, int threads) {
        ModelSpec a{model_kind_from_string(model_a), n, m_a, p_a, seed};
        ModelSpec b{model_kind_from_string(model_b), n, m_b, p_b, seed ^ 1};
        auto rep = compare(a, b, statistic_from_string(stat), count, bootstrap, threads);
        py::dict out;
        out["statistic"] = rep.statistic;
        out["tv"] = rep.tv;
        out["half_width"] = rep.half_width;
        out["samples"] = rep.samples;
        return out;
      },
      py::arg("model_a"), py::arg("model_b"), py::arg("n"), py::arg("m_a") = -1,
      py::arg("m_b") = -1, py::arg("p_a") = -1.0, py::arg("p_b") = -1.0,
      py::arg("stat") = "median", py::arg("count") = 10000, py::arg("seed") = 0,
      py::arg("bootstrap") = 200, py::arg("threads") = 1);

  m.def(
      "sigma_concentration",
      [](const std::string& model, int n, long long mm, double alpha, std::size_t count,
         std::uint64_t seed, int threads) {
        ModelSpec spec{model_kind_from_string(model), n, mm, -1.0, seed};
        auto rep = sigma_concentration(spec, count, alpha, threads);
        py::dict out;
        out["var_d1"] = rep.var_d1;
        out["threshold"] = rep.threshold;
        out["exceed_count"] = rep.exceed_count;
        out["rate"] = rep.rate;
        return out;
      },
      py::arg("model"), py::arg("n"), py::arg("m"), py::arg("alpha"), py::arg("count") = 10000,
      py::arg("seed") = 0, py::arg("threads") = 1);

  m.def(
      "exact_vs_formula",
      [](int n, long long mm, int cap) {
        auto table = exact_vs_formula(n, mm, shared_oracle(cap));
        py::list rows;
        for (const auto& row : table.rows) {
          py::dict r;
          r["degrees"] = row.degrees;
          r["perms"] = py_int(row.perms);
          r["exact_prob"] = py_fraction(row.exact_prob);
          r["formula_log"] = row.formula_log;
          r["ratio"] = row.ratio;
          rows.append(r);
        }
        py::dict out;
        out["rows"] = rows;
        out["prob_sum"] = py_fraction(table.prob_sum);
        return out;
      },
      py::arg("n"), py::arg("m"), py::arg("cap") = Oracle::kDefaultCap);

  // operator machinery, exposed at the level python smoke tests exercise
  m.def(
      "fixpoint_chi",
      [](const Seq& root, int k0, int steps, const std::string& init, long long radius,
         int threads) {
        const int n = static_cast<int>(root.size());
        PairConstraint full(n);
        OperatorConfig cfg{k0};
        DomainLadder ladder{root, radius};
        py::list out;
        if (init == "exact") {
          auto p0 = exact_edge_function(shared_oracle(Oracle::kDefaultCap), full);
          auto res = iterate_fixed_point(p0, steps, full, cfg, ladder, threads);
          for (const auto& s : res.steps) out.append(py::make_tuple(s.step, s.level, s.chi_consecutive));
        } else {
          auto p0 = init == "pi" ? pi_function(PiRhoVariant::section7) : pgr_function();
          auto res = iterate_fixed_point(p0, steps, full, cfg, ladder, threads);
          for (const auto& s : res.steps) out.append(py::make_tuple(s.step, s.level, s.chi_consecutive));
        }
        return out;
      },
      py::arg("root"), py::arg("k0") = 1, py::arg("steps") = 1, py::arg("init") = "pgr",
      py::arg("radius") = 8, py::arg("threads") = 1,
      "per-step chi distances of the compositional operator iteration");
}
