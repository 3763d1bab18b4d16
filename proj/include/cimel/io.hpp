// JSON system descriptions and machine-readable result serialization.
// All integers and rationals are serialized as decimal strings so that
// consumers never lose precision to doubles.
#pragma once

#include <nlohmann/json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cimel/matrix.hpp"
#include "cimel/system.hpp"

namespace cim {

using json = nlohmann::json;

inline LaurentSystem parse_system(const json& j) {
  LaurentSystem s;
  s.name = j.value("name", "unnamed");
  for (auto& v : j.at("variables")) s.variables.push_back(v.get<std::string>());
  std::size_t nv = s.variables.size();
  std::vector<bool> deformed(j.at("polynomials").size(), true);
  if (j.contains("deformed")) {
    auto& d = j.at("deformed");
    if (d.size() != deformed.size())
      throw std::runtime_error("deformed list must match polynomial count");
    for (std::size_t i = 0; i < deformed.size(); ++i) deformed[i] = d[i].get<bool>();
  }
  std::size_t bi = 0;
  for (auto& poly : j.at("polynomials")) {
    Block b;
    b.deformed = deformed[bi++];
    for (auto& mono : poly) {
      std::vector<Int> e(nv, Int(0));
      for (auto& [var, exp] : mono.items()) {
        std::size_t idx = nv;
        for (std::size_t i = 0; i < nv; ++i)
          if (s.variables[i] == var) idx = i;
        if (idx == nv) throw std::runtime_error("unknown variable: " + var);
        if (exp.is_string())
          e[idx] = Int(exp.get<std::string>());
        else
          e[idx] = Int(exp.get<long>());
      }
      b.monomials.push_back(std::move(e));
    }
    s.blocks.push_back(std::move(b));
  }
  if (j.contains("aux_placement"))
    for (auto& t : j.at("aux_placement")) s.aux_placement.push_back(t.get<std::size_t>());
  if (j.contains("mirror_partition"))
    for (auto& part : j.at("mirror_partition")) {
      std::vector<std::size_t> p;
      for (auto& v : part) p.push_back(v.get<std::size_t>());
      s.mirror_partition.push_back(p);
    }
  return s;
}

inline LaurentSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return parse_system(j);
}

inline json to_json(const Int& x) { return x.get_str(); }

inline json to_json(const Rat& x) {
  Rat c = x;
  c.canonicalize();
  return c.get_str();
}

inline json to_json(const IMat& m) {
  json rows = json::array();
  for (auto& r : m.a) {
    json row = json::array();
    for (auto& x : r) row.push_back(to_json(x));
    rows.push_back(row);
  }
  return rows;
}

inline json to_json(const QMat& m) {
  json rows = json::array();
  for (auto& r : m.a) {
    json row = json::array();
    for (auto& x : r) row.push_back(to_json(x));
    rows.push_back(row);
  }
  return rows;
}

template <class T>
json vec_json(const std::vector<T>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(to_json(x));
  return a;
}

}  // namespace cim
