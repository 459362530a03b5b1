#pragma once

#include <filesystem>

#include <json.hpp>

#include "stbc/codes.hpp"
#include "stbc/linalg.hpp"

namespace stbc {

// {name, T, N, K, groups (1-based indices), matrices: each a row-major list of [re, im]}
nlohmann::json weight_set_to_json(const WeightSet& w);
WeightSet weight_set_from_json(const nlohmann::json& j);

// {rows, cols, entries: [[re, im], ...] column-major}
nlohmann::json matrix_to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);
ComplexMatrix load_channel_fixture(const std::filesystem::path& path);

}  // namespace stbc
