#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "stbc/codes.hpp"
#include "stbc/decoder.hpp"
#include "stbc/equiv_channel.hpp"
#include "stbc/experiments.hpp"
#include "stbc/io.hpp"
#include "stbc/kernel_checks.hpp"

namespace py = pybind11;
using namespace stbc;

namespace {

using ComplexArray = py::array_t<Complex, py::array::forcecast>;
using RealArray = py::array_t<double, py::array::forcecast>;

ComplexMatrix to_complex_matrix(const ComplexArray& a) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-D array");
  auto v = a.unchecked<2>();
  ComplexMatrix m(static_cast<std::size_t>(v.shape(0)), static_cast<std::size_t>(v.shape(1)));
  for (py::ssize_t r = 0; r < v.shape(0); ++r)
    for (py::ssize_t c = 0; c < v.shape(1); ++c) m(r, c) = v(r, c);
  return m;
}

RealMatrix to_real_matrix(const RealArray& a) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-D array");
  auto v = a.unchecked<2>();
  RealMatrix m(static_cast<std::size_t>(v.shape(0)), static_cast<std::size_t>(v.shape(1)));
  for (py::ssize_t r = 0; r < v.shape(0); ++r)
    for (py::ssize_t c = 0; c < v.shape(1); ++c) m(r, c) = v(r, c);
  return m;
}

template <typename T>
py::array_t<T> to_array(const DenseMatrix<T>& m) {
  py::array_t<T> out({m.rows(), m.cols()});
  auto v = out.template mutable_unchecked<2>();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v(r, c) = m(r, c);
  return out;
}

FamilyParams family_params(const std::string& family, std::size_t n, std::size_t t) {
  return FamilyParams{parse_family(family), n, t};
}

py::dict decode_dict(const DecodeResult& r) {
  py::dict d;
  d["s_hat"] = r.s_hat;
  d["cost"] = r.cost;
  d["nodes_visited"] = r.nodes_visited;
  d["outer_candidates"] = r.outer_candidates;
  return d;
}

}  // namespace

PYBIND11_MODULE(_stbclab, m) {
  m.doc() = "Equivalent-channel rank analysis and ML decoding for linear-dispersion STBCs";

  py::register_exception<CodeError>(m, "CodeError", PyExc_ValueError);
  py::register_exception<LinalgError>(m, "LinalgError", PyExc_ValueError);
  py::register_exception<DecodeError>(m, "DecodeError", PyExc_RuntimeError);

  py::class_<WeightSet>(m, "WeightSet")
      .def_property_readonly("name", &WeightSet::name)
      .def_property_readonly("t", &WeightSet::t)
      .def_property_readonly("n", &WeightSet::n)
      .def_property_readonly("k", &WeightSet::k)
      .def_property_readonly("groups", &WeightSet::groups)
      .def_property_readonly("rate", &WeightSet::rate)
      .def("matrices",
           [](const WeightSet& w) {
             py::list out;
             for (const auto& a : w.matrices()) out.append(to_array(a));
             return out;
           })
      .def("to_json", [](const WeightSet& w) { return weight_set_to_json(w).dump(2); })
      .def_static("from_json", [](const std::string& text) { return weight_set_from_json(nlohmann::json::parse(text)); })
      .def("__repr__", [](const WeightSet& w) {
        std::ostringstream s;
        s << "<WeightSet " << w.name() << " T=" << w.t() << " N=" << w.n() << " K=" << w.k()
          << " groups=" << w.num_groups() << '>';
        return s.str();
      });

  m.def("make_code", [](const std::string& family, std::size_t n, std::size_t t) {
    return make_code(family_params(family, n, t));
  }, py::arg("family"), py::arg("n") = 0, py::arg("t") = 0);

  m.def("validate_weight_set", [](const WeightSet& w) {
    const ValidationReport r = validate_weight_set(w);
    py::dict d;
    d["linearly_independent"] = r.linearly_independent;
    d["realified_rank"] = r.realified_rank;
    d["max_cross_group_residual"] = r.max_cross_group_residual;
    d["passed"] = r.passed;
    return d;
  });

  m.def("f_rank", &f_rank, py::arg("n"), py::arg("m"));
  m.def("predict_rank", [](const std::string& family, std::size_t n, std::size_t m, std::size_t t) {
    const RankPrediction p = predict_rank(family_params(family, n, t), m);
    py::dict d;
    d["k"] = p.k;
    d["total"] = p.total;
    d["group_sizes"] = p.group_sizes;
    d["group_ranks"] = p.group_ranks;
    d["singular"] = p.singular;
    return d;
  }, py::arg("family"), py::arg("n") = 0, py::arg("m") = 1, py::arg("t") = 0);
  m.def("table_exponent", [](const std::string& family, std::size_t n, std::size_t m, std::size_t t) {
    return table_exponent(family_params(family, n, t), m);
  }, py::arg("family"), py::arg("n") = 0, py::arg("m") = 1, py::arg("t") = 0);

  m.def("sample_channel", [](std::size_t n, std::size_t cols, std::uint64_t seed) {
    RandomSource rng(seed);
    return to_array(sample_channel(n, cols, rng));
  }, py::arg("n"), py::arg("m"), py::arg("seed") = 1);

  m.def("equivalent_channel", [](const WeightSet& w, const ComplexArray& h) {
    return to_array(build_equiv_channel(w, to_complex_matrix(h)).g);
  }, py::arg("code"), py::arg("h"));

  m.def("numerical_rank", [](const RealArray& a, double tol) { return numerical_rank(to_real_matrix(a), tol); },
        py::arg("a"), py::arg("rel_tol") = kDefaultRankTolerance);

  m.def("rank_monte_carlo", [](const WeightSet& w, std::size_t cols, std::size_t trials, std::uint64_t seed) {
    const RankStats s = rank_monte_carlo(w, cols, trials, RandomSource(seed));
    return s.histogram;
  }, py::arg("code"), py::arg("m"), py::arg("trials") = 200, py::arg("seed") = 1);

  m.def("simulate", [](const WeightSet& w, const ComplexArray& h, int q, double snr_db, std::uint64_t seed) {
    RandomSource rng(seed);
    const TransmissionInstance t = simulate_transmission(w, SignalSet(q), to_complex_matrix(h), snr_db, rng);
    py::dict d;
    d["s"] = t.s_true;
    d["y"] = t.y;
    d["noise_variance"] = t.noise_variance;
    return d;
  }, py::arg("code"), py::arg("h"), py::arg("q") = 2, py::arg("snr_db") = INFINITY, py::arg("seed") = 1);

  m.def("decode", [](const WeightSet& w, const ComplexArray& h, const std::vector<double>& y, int q,
                     const std::string& method) {
    const EquivChannel ec = build_equiv_channel(w, to_complex_matrix(h));
    const SignalSet sig(q);
    if (method == "rank_deficient") return decode_dict(rank_deficient_decode(ec, sig, y));
    if (method == "multigroup") return decode_dict(multigroup_decode(ec, sig, y));
    if (method == "brute_force") return decode_dict(brute_force_ml(ec, sig, y));
    throw py::value_error("method must be rank_deficient, multigroup or brute_force");
  }, py::arg("code"), py::arg("h"), py::arg("y"), py::arg("q") = 2, py::arg("method") = "rank_deficient");

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs an stbc-lab subcommand; returns (exit_code, stdout, stderr).");
}
