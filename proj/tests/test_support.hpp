#pragma once

#include "nhdyn/types.hpp"

#include <json.hpp>

#include <fstream>
#include <string>

namespace test_support {

inline const nlohmann::json& derived() {
  static const nlohmann::json values = [] {
    std::ifstream in(std::string(NHDYN_TEST_DATA_DIR) + "/derived_values.json");
    return nlohmann::json::parse(in);
  }();
  return values;
}

inline nhdyn::cplx as_cplx(const nlohmann::json& pair) {
  return {pair.at(0).get<double>(), pair.at(1).get<double>()};
}

}  // namespace test_support
