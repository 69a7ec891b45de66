#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "plic/systems.hpp"

namespace plic::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "plic/1";

inline json report(const char* kind) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = kind;
  return j;
}

inline Domain parse_domain(const std::string& s) {
  if (s == "[-1,1]") return Domain::Symmetric;
  if (s == "[0,1]") return Domain::Unit;
  fail(ErrorKind::ParseError, "domain must be \"[-1,1]\" or \"[0,1]\", got \"" + s + "\"");
}

inline json to_json(const PLMap& f) {
  json pts = json::array();
  for (const auto& b : f.breakpoints()) pts.push_back({{"x", b.x.str()}, {"y", b.y.str()}});
  return {{"domain", domain_str(f.domain())}, {"breakpoints", pts}};
}

inline Rational rational_at(const json& j, const std::string& where) {
  if (!j.is_string()) fail(ErrorKind::ParseError, where + ": expected a \"p/q\" string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const Error& e) {
    fail(ErrorKind::ParseError, where + ": " + e.what());
  }
}

inline PLMap map_from_json(const json& j, const std::string& where = "map") {
  if (!j.is_object() || !j.contains("domain") || !j.contains("breakpoints"))
    fail(ErrorKind::ParseError, where + ": expected {\"domain\", \"breakpoints\"}");
  if (!j["domain"].is_string()) fail(ErrorKind::ParseError, where + ".domain: expected a string");
  Domain d = parse_domain(j["domain"].get<std::string>());
  const json& arr = j["breakpoints"];
  if (!arr.is_array()) fail(ErrorKind::ParseError, where + ".breakpoints: expected an array");
  std::vector<Breakpoint> pts;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string at = where + ".breakpoints[" + std::to_string(i) + "]";
    if (!arr[i].is_object() || !arr[i].contains("x") || !arr[i].contains("y"))
      fail(ErrorKind::ParseError, at + ": expected {\"x\", \"y\"}");
    pts.push_back({rational_at(arr[i]["x"], at + ".x"), rational_at(arr[i]["y"], at + ".y")});
  }
  try {
    return PLMap(d, std::move(pts));
  } catch (const Error& e) {
    fail(ErrorKind::ParseError, where + ": " + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::ParseError, "cannot write " + path);
  out << text;
}

inline PLMap read_map(const std::string& path) { return map_from_json(read_json_file(path), path); }

inline InverseSystemPrefix system_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorKind::ParseError, "system: expected an array of maps");
  InverseSystemPrefix sys;
  for (std::size_t i = 0; i < j.size(); ++i) sys.maps.push_back(map_from_json(j[i], "system[" + std::to_string(i) + "]"));
  return sys;
}

inline json to_json(const InverseSystemPrefix& sys) {
  json arr = json::array();
  for (const auto& f : sys.maps) arr.push_back(to_json(f));
  return arr;
}

/// Comma-separated rationals.
inline std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) fail(ErrorKind::ParseError, "empty entry in list '" + text + "'");
    out.push_back(Rational::parse(item.substr(b, e - b + 1)));
  }
  if (out.empty()) fail(ErrorKind::ParseError, "empty list");
  return out;
}

inline FiniteGrid parse_grid(const std::string& text) { return FiniteGrid(parse_rational_list(text)); }

inline json to_json(const FiniteGrid& V) {
  json arr = json::array();
  for (const auto& p : V.points()) arr.push_back(p.str());
  return arr;
}

inline json to_json(const IntervalQ& I) {
  return {{"lo", I.lo.str()}, {"hi", I.hi.str()}, {"lo_open", I.lo_open}, {"hi_open", I.hi_open}};
}

inline json to_json(const DepartureRun& r) {
  return {{"interval", to_json(r.interval)}, {"orientation", to_string(r.orientation)}, {"values", to_json(r.value_range)}};
}

inline json to_json(const ContourPoint& c) {
  return {{"alpha", c.alpha.str()}, {"value", c.value.str()}, {"orientation", to_string(c.orientation)}};
}

inline json to_json(const MioReport& r) {
  json j;
  j["pass"] = r.pass;
  j["max_dev1"] = r.max_dev1.str();
  j["max_dev2"] = r.max_dev2.str();
  j["triples"] = r.entries.size();
  if (auto f = r.first_failure())
    j["first_failure"] = {{"j", f->j}, {"k", f->k}, {"l", f->l}, {"dev1", f->dev1.str()}, {"dev2", f->dev2.str()},
                          {"eps", f->eps.str()}};
  return j;
}

inline json to_json(const StageState& st) {
  return {{"k", st.k},
          {"J_window", st.J},
          {"window", st.window},
          {"eps_k", st.eps_k.str()},
          {"delta_k", st.delta_k.str()},
          {"V_k_size", st.V_k.size()},
          {"V_k1_size", st.V_k1.size()},
          {"V_prime_k2_size", st.V_prime_k2.size()},
          {"t_k", to_json(st.t_k)},
          {"t_prime_k2", to_json(st.t_prime_k2)},
          {"s_bridge", to_json(st.s_bridge)},
          {"bridge_nodes", st.bridge_nodes}};
}

inline json to_json(const ClaimReport& r) {
  json c3 = json::array();
  for (const auto& [k, c] : r.claim3) c3.push_back({{"k", k}, {"census", to_string(c)}});
  json j;
  j["window"] = r.window;
  j["claim1"] = to_json(r.claim1);
  j["claim2"] = r.claim2 ? to_json(*r.claim2) : json(nullptr);
  j["claim3"] = {{"pass", r.claim3_pass}, {"gammas", c3}};
  if (r.claim3_witness)
    j["claim3"]["witness"] = {{"y1", r.claim3_witness->first.str()}, {"y2", r.claim3_witness->second.str()}};
  j["pass"] = r.pass();
  return j;
}

}  // namespace plic::io
