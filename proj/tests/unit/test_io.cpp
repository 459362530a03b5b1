#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "stbc/codes.hpp"
#include "stbc/io.hpp"
#include "support.hpp"

using namespace stbc;
using nlohmann::json;

TEST_CASE("weight sets round trip through JSON") {
  for (const WeightSet& w : {fgd_ren_code(), block_diagonal_g2_code(3), ryggz_basis_set(2, 6)}) {
    const json j = weight_set_to_json(w);
    CHECK(j.at("K").get<std::size_t>() == w.k());
    const WeightSet back = weight_set_from_json(json::parse(j.dump()));
    CHECK(back.name() == w.name());
    CHECK(back.t() == w.t());
    CHECK(back.n() == w.n());
    CHECK(back.groups() == w.groups());
    for (std::size_t i = 0; i < w.k(); ++i) CHECK(back.matrices()[i] == w.matrices()[i]);
  }
}

TEST_CASE("weight-set JSON layout: 1-based groups and row-major entries") {
  const json j = weight_set_to_json(fgd_ren_code());
  CHECK(j.at("groups").at(0) == json::array({1}));
  CHECK(j.at("groups").at(1).at(0) == 2);
  // A2 = i Z (x) I: entry (0,0) is i, entry (0,1) is 0.
  CHECK(j.at("matrices").at(1).at(0) == json::array({0.0, 1.0}));
  CHECK(j.at("matrices").at(1).at(1) == json::array({0.0, 0.0}));
}

TEST_CASE("malformed weight-set JSON is rejected") {
  json good = weight_set_to_json(hermitian_basis_code(2));
  json zero_index = good;
  zero_index["groups"] = json::array({json::array({0, 1, 2, 3})});
  CHECK_THROWS_AS(weight_set_from_json(zero_index), CodeError);
  json wrong_k = good;
  wrong_k["K"] = 5;
  CHECK_THROWS_AS(weight_set_from_json(wrong_k), CodeError);
  json short_matrix = good;
  short_matrix["matrices"][0].erase(0);
  CHECK_THROWS_AS(weight_set_from_json(short_matrix), CodeError);
  CHECK_THROWS_AS(weight_set_from_json(json::object()), CodeError);
}

TEST_CASE("channel fixtures load column-major entries") {
  const ComplexMatrix h = load_channel_fixture(test::fixture("herm3_h_3x2.json"));
  CHECK(h.rows() == 3);
  CHECK(h.cols() == 2);
  CHECK(h(0, 0) == Complex(-0.5688, -0.8117));
  CHECK(h(0, 1) == Complex(-0.1723, 1.8282));
  CHECK(h(2, 1) == Complex(-0.8244, 0.1325));
  const ComplexMatrix h4 = load_channel_fixture(test::fixture("natarajan_g2_n3_h_6x2.json"));
  CHECK(h4.rows() == 6);
  CHECK(h4(5, 1) == Complex(0.5228, -0.8541));
  const ComplexMatrix h1 = load_channel_fixture(test::fixture("fgd_ren_h_4x3.json"));
  CHECK(h1(2, 2) == Complex(-2.0819, -0.1166));
}

TEST_CASE("matrix JSON round trip and errors") {
  const ComplexMatrix a{{Complex(1, 2), 3.0}, {0.5, Complex(0, -1)}};
  CHECK(matrix_from_json(matrix_to_json(a)) == a);
  CHECK_THROWS_AS(matrix_from_json(json{{"rows", 2}, {"cols", 2}, {"entries", json::array()}}), CodeError);
  CHECK_THROWS_AS(load_channel_fixture("/nonexistent/h.json"), CodeError);
  const std::string path = "stbc_test_bad.json";
  {
    std::ofstream out(path);
    out << "{not json";
  }
  CHECK_THROWS_AS(load_channel_fixture(path), CodeError);
  std::remove(path.c_str());
}
