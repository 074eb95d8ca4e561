#pragma once

#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "specvaran/core.hpp"

namespace specvaran {

using json = nlohmann::json;

/// {"n": int, "rows": [[...], ...]}; the loader symmetrizes.
inline SymmetricMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("rows")) {
    throw InputError("matrix needs 'n' and 'rows'");
  }
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
    throw InputError("'n' must be a positive integer");
  }
  const auto n = static_cast<Index>(j["n"].get<long long>());
  const json& rows = j["rows"];
  if (!rows.is_array() || static_cast<Index>(rows.size()) != n) {
    throw InputError("'rows' must hold n rows");
  }
  Matrix a(n, n);
  for (Index i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw InputError("every row must hold n numbers");
    }
    for (Index k = 0; k < n; ++k) {
      const json& e = row[static_cast<std::size_t>(k)];
      if (!e.is_number()) throw InputError("matrix entries must be numbers");
      a(i, k) = e.get<double>();
    }
  }
  return SymmetricMatrix(a);
}

inline json matrix_to_json(const SymmetricMatrix& x) {
  json rows = json::array();
  for (Index i = 0; i < x.n(); ++i) {
    json row = json::array();
    for (Index k = 0; k < x.n(); ++k) row.push_back(x(i, k));
    rows.push_back(row);
  }
  return {{"n", x.n()}, {"rows", rows}};
}

inline json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

/// +inf has no JSON literal; it is written as the string "+inf".
inline json ext_to_json(ExtendedReal x) {
  return x.is_finite() ? json(x.value()) : json("+inf");
}

struct ObjectiveSpec {
  std::string kind;  // "linear" or "quadratic"
  SymmetricMatrix C;
  double weight = 0.0;
  std::optional<SymmetricMatrix> X0;
};

struct Scenario {
  std::string theta;
  SymmetricMatrix X;
  std::optional<SymmetricMatrix> Y, H, W;
  std::optional<ObjectiveSpec> phi;
  json expect = json::object();
};

inline Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw InputError("scenario must be an object");
  if (!j.contains("theta") || !j["theta"].is_string()) throw InputError("scenario needs 'theta'");
  if (!j.contains("X")) throw InputError("scenario needs 'X'");
  Scenario s;
  s.theta = j["theta"].get<std::string>();
  s.X = matrix_from_json(j["X"]);
  const auto opt = [&](const char* key, std::optional<SymmetricMatrix>& out) {
    if (!j.contains(key)) return;
    out = matrix_from_json(j[key]);
    if (out->n() != s.X.n()) throw InputError(std::string("'") + key + "' has the wrong size");
  };
  opt("Y", s.Y);
  opt("H", s.H);
  opt("W", s.W);
  if (j.contains("phi")) {
    const json& p = j["phi"];
    if (!p.is_object() || !p.contains("kind") || !p.contains("C")) {
      throw InputError("'phi' needs 'kind' and 'C'");
    }
    ObjectiveSpec o;
    o.kind = p["kind"].get<std::string>();
    o.C = matrix_from_json(p["C"]);
    if (o.kind == "quadratic") {
      if (!p.contains("weight") || !p["weight"].is_number()) throw InputError("quadratic phi needs 'weight'");
      o.weight = p["weight"].get<double>();
      o.X0 = p.contains("X0") ? matrix_from_json(p["X0"]) : SymmetricMatrix::zero(s.X.n());
    } else if (o.kind != "linear") {
      throw InputError("phi kind must be 'linear' or 'quadratic'");
    }
    s.phi = o;
  }
  if (j.contains("expect")) s.expect = j["expect"];
  return s;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError(std::string("scenario is not valid JSON: ") + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace specvaran
