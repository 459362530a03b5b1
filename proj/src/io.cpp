#include "stbc/io.hpp"

#include <fstream>

namespace stbc {

using nlohmann::json;

namespace {

json complex_pair(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex pair_to_complex(const json& p) {
  if (!p.is_array() || p.size() != 2) throw CodeError("expected a [re, im] pair");
  return {p.at(0).get<double>(), p.at(1).get<double>()};
}

}  // namespace

json weight_set_to_json(const WeightSet& w) {
  json groups = json::array();
  for (const auto& g : w.groups()) {
    json one = json::array();
    for (std::size_t idx : g) one.push_back(idx + 1);
    groups.push_back(std::move(one));
  }
  json matrices = json::array();
  for (const auto& a : w.matrices()) {
    json entries = json::array();
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c) entries.push_back(complex_pair(a(r, c)));
    matrices.push_back(std::move(entries));
  }
  return json{{"name", w.name()}, {"T", w.t()},         {"N", w.n()},
              {"K", w.k()},       {"groups", groups}, {"matrices", matrices}};
}

WeightSet weight_set_from_json(const json& j) {
  try {
    const auto t = j.at("T").get<std::size_t>();
    const auto n = j.at("N").get<std::size_t>();
    const auto k = j.at("K").get<std::size_t>();
    std::vector<ComplexMatrix> matrices;
    for (const auto& entries : j.at("matrices")) {
      if (entries.size() != t * n) throw CodeError("weight matrix entry count is not T*N");
      ComplexMatrix a(t, n);
      std::size_t idx = 0;
      for (std::size_t r = 0; r < t; ++r)
        for (std::size_t c = 0; c < n; ++c) a(r, c) = pair_to_complex(entries.at(idx++));
      if (!a.all_finite()) throw CodeError("weight matrix has non-finite entries");
      matrices.push_back(std::move(a));
    }
    if (matrices.size() != k) throw CodeError("K does not match the number of matrices");
    GroupPartition groups;
    for (const auto& g : j.at("groups")) {
      std::vector<std::size_t> one;
      for (const auto& idx : g) {
        const auto v = idx.get<std::size_t>();
        if (v == 0) throw CodeError("group indices are 1-based");
        one.push_back(v - 1);
      }
      groups.push_back(std::move(one));
    }
    return WeightSet(j.value("name", std::string("imported")), t, n, std::move(matrices), std::move(groups));
  } catch (const json::exception& e) {
    throw CodeError(std::string("malformed weight-set JSON: ") + e.what());
  }
}

json matrix_to_json(const ComplexMatrix& a) {
  json entries = json::array();
  for (const auto& z : a.data()) entries.push_back(complex_pair(z));
  return json{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", entries}};
}

ComplexMatrix matrix_from_json(const json& j) {
  try {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (rows == 0 || cols == 0) throw CodeError("matrix dimensions must be positive");
    if (entries.size() != rows * cols) throw CodeError("matrix entry count is not rows*cols");
    std::vector<Complex> data;
    data.reserve(entries.size());
    for (const auto& p : entries) data.push_back(pair_to_complex(p));
    return ComplexMatrix(rows, cols, std::move(data));
  } catch (const json::exception& e) {
    throw CodeError(std::string("malformed matrix JSON: ") + e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CodeError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw CodeError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

ComplexMatrix load_channel_fixture(const std::filesystem::path& path) {
  return matrix_from_json(read_json_file(path));
}

}  // namespace stbc
