#pragma once

// JSON shapes for tables, certificates, polynomials, verdicts and
// reconstruction reports. Big integers (and 64-bit residues) are always
// decimal strings.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "charpoly.hpp"
#include "invariants.hpp"
#include "isomatch.hpp"
#include "reconstruct.hpp"

namespace walkinv {

using json = nlohmann::ordered_json;

namespace detail {

inline json big_array(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

inline json header(std::size_t n, std::size_t kmax, std::optional<std::uint64_t> modulus) {
  json h;
  h["n"] = n;
  h["kmax"] = kmax;
  h["modulus"] = modulus ? json(std::to_string(*modulus)) : json(nullptr);
  return h;
}

inline BigInt parse_big(const json& j) {
  const auto& s = j.get_ref<const std::string&>();
  if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos)
    throw std::invalid_argument("expected a decimal integer string, got \"" + s + "\"");
  return BigInt(s);
}

}  // namespace detail

/// {"header": {n, kmax, modulus: null}, "rows": [[d(1,i), ..., d(kmax,i)] per vertex i]}
inline json to_json(const InvariantTable& t) {
  json out;
  out["header"] = detail::header(t.size(), t.kmax(), std::nullopt);
  json rows = json::array();
  for (Vertex i = 0; i < t.size(); ++i) rows.push_back(detail::big_array(t.vertex_vector(i)));
  out["rows"] = std::move(rows);
  return out;
}

inline json to_json(const ModularTable& t) {
  json out;
  out["header"] = detail::header(t.n, t.kmax(), t.modulus);
  json rows = json::array();
  for (Vertex i = 0; i < t.n; ++i) {
    json r = json::array();
    for (std::size_t k = 1; k <= t.kmax(); ++k) r.push_back(std::to_string(t.at(k, i)));
    rows.push_back(std::move(r));
  }
  out["rows"] = std::move(rows);
  return out;
}

/// Accepts the exact-table shape written by to_json (modulus must be null).
inline InvariantTable table_from_json(const json& j) {
  if (!j.contains("header") || !j.contains("rows"))
    throw std::invalid_argument("walk table JSON needs \"header\" and \"rows\"");
  const auto& h = j.at("header");
  if (h.contains("modulus") && !h.at("modulus").is_null())
    throw std::invalid_argument("walk table JSON: a modular table cannot be used as an exact table");
  const auto n = h.at("n").get<std::size_t>();
  const auto kmax = h.at("kmax").get<std::size_t>();
  const auto& rows = j.at("rows");
  if (rows.size() != n) throw std::invalid_argument("walk table JSON: row count differs from n");
  std::vector<std::vector<BigInt>> by_power(kmax, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != kmax) throw std::invalid_argument("walk table JSON: row length differs from kmax");
    for (std::size_t k = 0; k < kmax; ++k) by_power[k][i] = detail::parse_big(rows[i][k]);
  }
  return InvariantTable(n, std::move(by_power));
}

template <class T>
json to_json(const BasicCertificate<T>& c) {
  json out;
  json rows = json::array();
  for (const auto& r : c.rows) {
    json row = json::array();
    for (const auto& x : r) {
      if constexpr (std::is_same_v<T, BigInt>)
        row.push_back(x.str());
      else
        row.push_back(std::to_string(x));
    }
    rows.push_back(std::move(row));
  }
  out["rows"] = std::move(rows);
  out["order"] = c.order.map();
  return out;
}

inline json to_json(const ExtendedProfile& p) {
  json out = json::array();
  for (const auto& vp : p.vertices) {
    json v;
    v["diagonal"] = detail::big_array(vp.diagonal);
    json tuples = json::array();
    for (const auto& t : vp.tuples) tuples.push_back(detail::big_array(t));
    v["tuples"] = std::move(tuples);
    out.push_back(std::move(v));
  }
  return out;
}

/// {"degree": n, "coeffs": [a_0, ..., a_n], "text": "..."}
inline json to_json(const Polynomial& p) {
  json out;
  out["degree"] = p.degree();
  out["coeffs"] = detail::big_array(p.coeffs());
  out["text"] = p.to_string();
  return out;
}

inline json to_json(const IsoResult& r) {
  json out;
  out["verdict"] = to_string(r.verdict);
  out["permutation"] = r.permutation ? json(r.permutation->map()) : json(nullptr);
  json w;
  w["kind"] = to_string(r.witness);
  const bool positional = r.witness == Witness::CertificateMismatch ||
                          r.witness == Witness::ModularCertificateMismatch ||
                          r.witness == Witness::SizeMismatch;
  if (positional && r.position.row != CertificateComparison::shape_mismatch) {
    w["row"] = r.position.row;
    w["power"] = r.position.column + 1;
  } else {
    w["row"] = nullptr;
    w["power"] = nullptr;
  }
  out["witness"] = std::move(w);
  json stats;
  stats["nodes"] = r.stats.nodes;
  stats["classes"] = r.stats.classes;
  out["stats"] = std::move(stats);
  return out;
}

inline json to_json(const ReconstructionResult& r) {
  json out;
  out["status"] = to_string(r.status);
  out["eigenvalues"] = r.spectrum.eigenvalues;
  out["gaps"] = r.spectrum.gaps;
  out["min_gap"] = r.spectrum.min_gap;
  out["residuals"] = r.residuals;
  out["orthogonality_error"] = r.orthogonality_error;
  out["rounding_error"] = r.rounding_error;
  out["graph6"] = r.adj ? json(write_graph6(*r.adj)) : json(nullptr);
  out["alternative_graph6"] = r.alternative ? json(write_graph6(*r.alternative)) : json(nullptr);
  out["survivors"] = r.survivors;
  out["note"] = r.note;
  return out;
}

}  // namespace walkinv
