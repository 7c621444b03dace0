// Copyright 2026 The fockbasis Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cctype>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fockbasis/basis_builder.hpp"
#include "fockbasis/hamiltonian_bounds.hpp"
#include "fockbasis/operator_poly.hpp"
#include "fockbasis/projection_rdm.hpp"

namespace fockbasis::io {

using nlohmann::json;

inline constexpr const char* kOperatorFormat = "fockbasis-operator-v1";

/// Serialize one term list: 1-based strictly increasing index lists plus
/// [re, im] coefficients, ordered by (A, B) bitmask for reproducible bytes.
inline json terms_to_json(const OperatorPoly& poly) {
  json terms = json::array();
  const int n = poly.n();
  for (const auto& [key, coeff] : poly.terms()) {
    json term;
    term["A"] = OrbitalSet(key.A, n).orbitals();
    term["B"] = OrbitalSet(key.B, n).orbitals();
    term["coeff"] = {coeff.real(), coeff.imag()};
    terms.push_back(std::move(term));
  }
  return terms;
}

inline json operator_to_json(const OperatorPoly& poly) {
  json doc;
  doc["format"] = kOperatorFormat;
  doc["n"] = poly.n();
  doc["terms"] = terms_to_json(poly);
  return doc;
}

inline OperatorPoly operator_from_json(const json& doc) {
  if (!doc.contains("format") || doc["format"] != kOperatorFormat)
    throw std::runtime_error("operator file: unknown format tag");
  const int n = doc.at("n").get<int>();
  OperatorPoly poly(n);
  for (const json& term : doc.at("terms")) {
    const auto read_side = [&](const char* side) {
      std::vector<int> indices = term.at(side).get<std::vector<int>>();
      for (std::size_t i = 0; i + 1 < indices.size(); ++i)
        if (indices[i] >= indices[i + 1])
          throw std::runtime_error("operator file: index list not strictly increasing");
      return OrbitalSet::from_orbitals(indices, n);
    };
    const OrbitalSet A = read_side("A");
    const OrbitalSet B = read_side("B");
    const auto& c = term.at("coeff");
    if (poly.coefficient(A.bits(), B.bits()) != Complex(0))
      throw std::runtime_error("operator file: duplicate (A,B) key");
    poly.add_term(A.bits(), B.bits(),
                  Complex(c.at(0).get<double>(), c.at(1).get<double>()));
  }
  return poly;
}

inline void write_operator_file(const std::string& path, const OperatorPoly& poly) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << operator_to_json(poly).dump(2) << "\n";
}

inline OperatorPoly read_operator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  json doc;
  in >> doc;
  return operator_from_json(doc);
}

inline json projection_report_to_json(const ProjectionReport& report) {
  json doc;
  doc["k"] = report.k;
  doc["family"] = family_tag(report.family);
  doc["inputNorm"] = report.input_norm;
  doc["outputNorm"] = report.output_norm;
  doc["residualNorm"] = report.residual_norm;
  return doc;
}

inline json bound_report_to_json(const BoundReport& report) {
  json doc;
  doc["E0_full"] = report.e0_full;
  doc["E0_truncated"] = report.e0_truncated;
  doc["gapMatrixMinEig"] = report.gap_min_eig;
  doc["certificate"] = report.certificate;
  doc["coreEnergy"] = report.core_energy;
  doc["basisSubsetId"] = report.subset_ids;
  return doc;
}

namespace detail {

inline std::vector<int> parse_index_list(const std::string& text, std::size_t& pos,
                                         const std::string& id) {
  if (pos >= text.size() || text[pos] != '[')
    throw std::runtime_error("bad basis id (expected '['): " + id);
  ++pos;
  std::vector<int> out;
  while (pos < text.size() && text[pos] != ']') {
    int value = 0;
    bool any = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = 10 * value + (text[pos++] - '0');
      any = true;
    }
    if (!any) throw std::runtime_error("bad basis id (expected digit): " + id);
    out.push_back(value);
    if (pos < text.size() && text[pos] == ',') ++pos;
  }
  if (pos >= text.size()) throw std::runtime_error("bad basis id (expected ']'): " + id);
  ++pos;
  return out;
}

inline std::vector<int> parse_named_list(const std::string& text, std::size_t& pos,
                                         char name, const std::string& id) {
  if (pos + 1 >= text.size() || text[pos] != name || text[pos + 1] != '=')
    throw std::runtime_error(std::string("bad basis id (expected '") + name + "='): " + id);
  pos += 2;
  return parse_index_list(text, pos, id);
}

}  // namespace detail

/// Parse a stable identifier ("B:K=[2];I=[1];J=[3]", "BR:+:K=[];I=[1];J=[2]",
/// "M:J=[1,4,5,6]") back into the full basis element.
inline BasisElement parse_basis_id(const std::string& id, int n) {
  std::size_t pos = 0;
  const auto expect = [&](char c) {
    if (pos >= id.size() || id[pos] != c)
      throw std::runtime_error("bad basis id: " + id);
    ++pos;
  };
  if (id.rfind("BR:", 0) == 0) {
    pos = 3;
    if (pos >= id.size() || (id[pos] != '+' && id[pos] != '-'))
      throw std::runtime_error("bad basis id (expected parity): " + id);
    const int parity = id[pos] == '+' ? +1 : -1;
    ++pos;
    expect(':');
    const auto K = detail::parse_named_list(id, pos, 'K', id);
    expect(';');
    const auto I = detail::parse_named_list(id, pos, 'I', id);
    expect(';');
    const auto J = detail::parse_named_list(id, pos, 'J', id);
    return make_element_BReal(OrbitalSet::from_orbitals(K, n),
                              OrbitalSet::from_orbitals(I, n),
                              OrbitalSet::from_orbitals(J, n), parity);
  }
  if (id.rfind("B:", 0) == 0) {
    pos = 2;
    const auto K = detail::parse_named_list(id, pos, 'K', id);
    expect(';');
    const auto I = detail::parse_named_list(id, pos, 'I', id);
    expect(';');
    const auto J = detail::parse_named_list(id, pos, 'J', id);
    return make_element_B(OrbitalSet::from_orbitals(K, n),
                          OrbitalSet::from_orbitals(I, n),
                          OrbitalSet::from_orbitals(J, n));
  }
  if (id.rfind("M:", 0) == 0) {
    pos = 2;
    const auto J = detail::parse_named_list(id, pos, 'J', id);
    std::uint32_t mask = 0;
    for (int idx : J) {
      if (idx < 1 || idx > 2 * n)
        throw std::runtime_error("bad basis id (Majorana index out of range): " + id);
      mask |= 1u << (idx - 1);
    }
    return make_element_Majorana(mask, n);
  }
  throw std::runtime_error("bad basis id (unknown family): " + id);
}

}  // namespace fockbasis::io
