#ifndef FORMALFLOWS_JSON_IO_HPP
#define FORMALFLOWS_JSON_IO_HPP

#include <nlohmann/json.hpp>

#include "formalflows/blockmatrix.hpp"
#include "formalflows/map.hpp"
#include "formalflows/sumfn.hpp"

namespace formalflows {

inline constexpr const char* kJsonFormat = "formalflows/1";

inline nlohmann::json series_to_json(const Series& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, v] : s.terms())
    terms.push_back({{"exponents", m.exponents}, {"coeff", v.str()}});
  return terms;
}

inline nlohmann::json map_to_json(const FormalMap& g, const std::string& name) {
  nlohmann::json components = nlohmann::json::array();
  for (const Series& s : g.components()) components.push_back(series_to_json(s));
  return {{"format", kJsonFormat},
          {"ring", g.ring().name()},
          {"dim", g.dim()},
          {"cap", g.cap()},
          {"name", name},
          {"components", components}};
}

inline nlohmann::json sumfn_to_json(const SumFunction& h) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const Value& v : h.coeffs()) coeffs.push_back(v.str());
  return {{"format", kJsonFormat},
          {"ring", h.ring().name()},
          {"coeffs", coeffs}};
}

inline nlohmann::json matrix_to_json(const BlockMatrix& b) {
  return {{"format", kJsonFormat},
          {"char", b.characteristic()},
          {"level", b.level()},
          {"rows", b.entries()}};
}

}  // namespace formalflows

#endif
