#include "aft/instance_io.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "aft/errors.hpp"

namespace aft {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ParseError(field + ": " + message);
}

Rational capacity_from_json(const json& value, const std::string& field) {
  if (value.is_number_integer()) {
    return Rational(value.get<long long>());
  }
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(field, e.what());
    }
  }
  fail(field, "expected integer or rational string");
}

TimeStep integer_from_json(const json& value, const std::string& field) {
  if (!value.is_number_integer()) fail(field, "expected integer");
  return value.get<TimeStep>();
}

void require_keys(const json& object, const std::set<std::string>& allowed,
                  const std::string& field) {
  for (const auto& [key, _] : object.items()) {
    if (!allowed.count(key)) fail(field + "." + key, "unknown key");
  }
}

json rational_to_json(const Rational& value) {
  return json(format_rational(value));
}

Rational rational_from_json(const json& value, const std::string& field) {
  return capacity_from_json(value, field);
}

}  // namespace

InstanceDocument parse_instance(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("$", "expected object");
  require_keys(root, {"elements", "paths", "horizon"}, "$");
  if (!root.contains("elements") || !root["elements"].is_array()) {
    fail("elements", "missing or not an array");
  }
  if (!root.contains("paths") || !root["paths"].is_array()) {
    fail("paths", "missing or not an array");
  }
  if (!root.contains("horizon")) fail("horizon", "missing");

  InstanceDocument doc;
  doc.horizon = integer_from_json(root["horizon"], "horizon");
  if (doc.horizon < 1) fail("horizon", "must be positive");

  std::set<std::string> names;
  for (std::size_t i = 0; i < root["elements"].size(); ++i) {
    const std::string field = "elements[" + std::to_string(i) + "]";
    const json& entry = root["elements"][i];
    if (!entry.is_object()) fail(field, "expected object");
    require_keys(entry, {"name", "capacity", "transit"}, field);
    if (!entry.contains("name") || !entry["name"].is_string()) {
      fail(field + ".name", "missing or not a string");
    }
    InstanceElement element;
    element.name = entry["name"].get<std::string>();
    if (element.name.empty()) fail(field + ".name", "must be nonempty");
    if (!names.insert(element.name).second) {
      fail(field + ".name", "duplicate element name '" + element.name + "'");
    }
    if (!entry.contains("capacity")) fail(field + ".capacity", "missing");
    element.capacity = capacity_from_json(entry["capacity"], field + ".capacity");
    if (element.capacity < 0) fail(field + ".capacity", "must be nonnegative");
    if (!entry.contains("transit")) fail(field + ".transit", "missing");
    element.transit = integer_from_json(entry["transit"], field + ".transit");
    if (element.transit < 0) fail(field + ".transit", "must be nonnegative");
    doc.elements.push_back(std::move(element));
  }

  for (std::size_t i = 0; i < root["paths"].size(); ++i) {
    const std::string field = "paths[" + std::to_string(i) + "]";
    const json& entry = root["paths"][i];
    if (!entry.is_array() || entry.empty()) {
      fail(field, "expected nonempty array of element names");
    }
    std::vector<std::string> path;
    std::set<std::string> seen;
    for (std::size_t j = 0; j < entry.size(); ++j) {
      if (!entry[j].is_string()) {
        fail(field + "[" + std::to_string(j) + "]", "expected string");
      }
      const std::string name = entry[j].get<std::string>();
      if (!names.count(name)) {
        fail(field + "[" + std::to_string(j) + "]",
             "undeclared element '" + name + "'");
      }
      if (!seen.insert(name).second) {
        fail(field, "element '" + name + "' repeats within the path");
      }
      path.push_back(name);
    }
    doc.paths.push_back(std::move(path));
  }
  return doc;
}

void canonicalize_instance(InstanceDocument& doc) {
  std::sort(doc.elements.begin(), doc.elements.end(),
            [](const InstanceElement& a, const InstanceElement& b) {
              return a.name < b.name;
            });
  std::sort(doc.paths.begin(), doc.paths.end());
}

std::string serialize_instance(const InstanceDocument& doc) {
  json root;
  root["horizon"] = doc.horizon;
  root["elements"] = json::array();
  for (const InstanceElement& e : doc.elements) {
    json entry;
    entry["name"] = e.name;
    entry["capacity"] = rational_to_json(e.capacity);
    entry["transit"] = e.transit;
    root["elements"].push_back(entry);
  }
  root["paths"] = json::array();
  for (const auto& path : doc.paths) root["paths"].push_back(path);
  return root.dump(2) + "\n";
}

std::string instance_digest(const InstanceDocument& doc) {
  InstanceDocument canonical = doc;
  canonicalize_instance(canonical);
  const std::string bytes = serialize_instance(canonical);
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char ch : bytes) {
    hash ^= ch;
    hash *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[hash & 0xF];
    hash >>= 4;
  }
  return out;
}

AbstractNetwork to_network(const InstanceDocument& doc) {
  std::vector<Element> elements;
  elements.reserve(doc.elements.size());
  for (const InstanceElement& e : doc.elements) {
    elements.push_back({e.name, e.capacity, e.transit});
  }
  return AbstractNetwork(elements, doc.paths);
}

InstanceDocument example1_instance() {
  InstanceDocument doc;
  for (const char* name : {"1", "2", "3", "4", "a", "b", "c", "d"}) {
    doc.elements.push_back({name, Rational(1), 1});
  }
  doc.paths = {{"1", "2", "3", "4"}, {"a", "2", "c"}, {"b", "3", "d"},
               {"1", "c"},           {"1", "d"},      {"a", "4"},
               {"b", "4"}};
  doc.horizon = 6;
  canonicalize_instance(doc);
  return doc;
}

InstanceDocument example2_instance() {
  InstanceDocument doc;
  for (const char* name : {"s", "a", "b", "t"}) {
    doc.elements.push_back({name, Rational(1), 1});
  }
  // The printed form of this family has (a,b,t) as its fourth path, which
  // fails the switching property at four triples; the intended network uses
  // (s,b,t).  Its time expansion still loses the switching property at
  // horizon 6 (see the expansion checks).
  doc.paths = {{"s", "a", "b", "t"},
               {"s", "b", "a", "t"},
               {"s", "a", "t"},
               {"s", "b", "t"}};
  doc.horizon = 6;
  canonicalize_instance(doc);
  return doc;
}

std::string serialize_certificate(const Certificate& cert,
                                  const AbstractNetwork& net,
                                  const std::string& digest) {
  json root;
  root["format"] = "aft-certificate-1";
  root["instance_digest"] = digest;
  root["horizon"] = cert.horizon;
  root["static_objective"] = rational_to_json(cert.static_solution.objective);
  root["flow_value"] = rational_to_json(cert.flow_value);
  root["cut_capacity"] = rational_to_json(cert.cut_capacity);
  root["oracle_strict"] = rational_to_json(cert.oracle_strict_optimum);
  root["oracle_waiting"] = cert.oracle_waiting_optimum.has_value()
                               ? rational_to_json(*cert.oracle_waiting_optimum)
                               : json(nullptr);
  root["all_equal"] = cert.all_equal;

  json coverage;
  coverage["strict_ok"] = cert.strict_coverage.ok();
  coverage["waiting_ok"] = cert.waiting_coverage.ok();
  coverage["uncovered_strict"] = json::array();
  for (const TemporalPath& tp : cert.strict_coverage.uncovered) {
    coverage["uncovered_strict"].push_back(net.path_label(tp.path) + "@" +
                                           std::to_string(tp.start));
  }
  coverage["avoiding_waiting"] = json::array();
  for (const WaitingSchedule& ws : cert.waiting_coverage.avoiding) {
    json item;
    item["path"] = net.path_label(ws.path);
    item["wait"] = ws.wait;
    coverage["avoiding_waiting"].push_back(item);
  }
  root["coverage"] = coverage;

  json validation;
  validation["ok"] = cert.validation.ok();
  validation["zero_transit_paths"] = json::array();
  for (int p : cert.zero_transit_warnings) {
    validation["zero_transit_paths"].push_back(net.path_label(p));
  }
  validation["out_of_horizon_elements"] = json::array();
  for (int e : cert.out_of_horizon_warnings) {
    validation["out_of_horizon_elements"].push_back(net.element(e).id);
  }
  root["validation"] = validation;

  root["elements"] = json::array();
  for (std::size_t e = 0; e < net.element_count(); ++e) {
    json entry;
    entry["name"] = net.element(static_cast<int>(e)).id;
    entry["capacity"] =
        rational_to_json(net.element(static_cast<int>(e)).capacity);
    entry["transit"] = net.element(static_cast<int>(e)).transit;
    entry["dual"] = cert.static_solution.dual[e];
    entry["alpha"] = cert.cut.alpha[e].has_value() ? json(*cert.cut.alpha[e])
                                                   : json(nullptr);
    root["elements"].push_back(entry);
  }

  root["paths"] = json::array();
  for (std::size_t p = 0; p < net.path_count(); ++p) {
    json entry;
    entry["elements"] = net.path_ids(static_cast<int>(p));
    entry["weight"] = rational_to_json(
        Rational(cert.horizon - net.total_transit(static_cast<int>(p))));
    entry["flow"] = rational_to_json(cert.static_solution.flow[p]);
    root["paths"].push_back(entry);
  }
  return root.dump(2) + "\n";
}

CertificateDocument parse_certificate(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("$", "expected object");
  if (root.value("format", "") != "aft-certificate-1") {
    fail("format", "unknown certificate format");
  }

  CertificateDocument doc;
  doc.instance_digest = root.at("instance_digest").get<std::string>();
  doc.horizon = integer_from_json(root.at("horizon"), "horizon");
  doc.static_objective =
      rational_from_json(root.at("static_objective"), "static_objective");
  doc.flow_value = rational_from_json(root.at("flow_value"), "flow_value");
  doc.cut_capacity =
      rational_from_json(root.at("cut_capacity"), "cut_capacity");
  doc.oracle_strict_optimum =
      rational_from_json(root.at("oracle_strict"), "oracle_strict");
  if (!root.at("oracle_waiting").is_null()) {
    doc.oracle_waiting_optimum =
        rational_from_json(root["oracle_waiting"], "oracle_waiting");
  }
  doc.strict_coverage_ok = root.at("coverage").at("strict_ok").get<bool>();
  doc.waiting_coverage_ok = root.at("coverage").at("waiting_ok").get<bool>();
  doc.all_equal = root.at("all_equal").get<bool>();

  for (std::size_t e = 0; e < root.at("elements").size(); ++e) {
    const json& entry = root["elements"][e];
    const std::string field = "elements[" + std::to_string(e) + "]";
    doc.element_names.push_back(entry.at("name").get<std::string>());
    doc.capacities.push_back(
        rational_from_json(entry.at("capacity"), field + ".capacity"));
    doc.transits.push_back(
        integer_from_json(entry.at("transit"), field + ".transit"));
    doc.duals.push_back(entry.at("dual").get<long long>());
    doc.alphas.push_back(entry.at("alpha").is_null()
                             ? std::optional<TimeStep>{}
                             : std::optional<TimeStep>{integer_from_json(
                                   entry["alpha"], field + ".alpha")});
  }
  for (std::size_t p = 0; p < root.at("paths").size(); ++p) {
    const json& entry = root["paths"][p];
    const std::string field = "paths[" + std::to_string(p) + "]";
    doc.paths.push_back(entry.at("elements").get<std::vector<std::string>>());
    doc.weights.push_back(
        rational_from_json(entry.at("weight"), field + ".weight"));
    doc.flows.push_back(rational_from_json(entry.at("flow"), field + ".flow"));
  }

  // Audit every recomputable quantity.
  std::map<std::string, std::size_t> element_index;
  for (std::size_t e = 0; e < doc.element_names.size(); ++e) {
    element_index[doc.element_names[e]] = e;
  }
  auto path_transit = [&](std::size_t p) {
    TimeStep total = 0;
    for (const std::string& name : doc.paths[p]) {
      auto it = element_index.find(name);
      if (it == element_index.end()) {
        fail("paths[" + std::to_string(p) + "]",
             "references unknown element '" + name + "'");
      }
      total += doc.transits[it->second];
    }
    return total;
  };

  Rational objective_from_paths = 0;
  Rational flow_value = 0;
  for (std::size_t p = 0; p < doc.paths.size(); ++p) {
    const TimeStep transit = path_transit(p);
    if (doc.weights[p] != Rational(doc.horizon - transit)) {
      fail("paths[" + std::to_string(p) + "].weight",
           "does not equal horizon minus transit");
    }
    objective_from_paths += doc.weights[p] * doc.flows[p];
    if (transit < doc.horizon) {
      flow_value += Rational(doc.horizon - transit) * doc.flows[p];
    }
  }
  Rational dual_cost = 0;
  for (std::size_t e = 0; e < doc.element_names.size(); ++e) {
    dual_cost += doc.capacities[e] * Rational(doc.duals[e]);
  }
  if (objective_from_paths != doc.static_objective) {
    fail("static_objective", "does not match sum of weight times flow");
  }
  if (dual_cost != doc.static_objective) {
    fail("static_objective", "does not match sum of capacity times dual");
  }
  if (dual_cost != doc.cut_capacity) {
    fail("cut_capacity", "does not match sum of capacity times dual");
  }
  if (flow_value != doc.flow_value) {
    fail("flow_value", "does not match repeated static flow value");
  }

  // α must be the min over containing paths of the delayed prefix sums.
  std::vector<std::optional<TimeStep>> alpha(doc.element_names.size());
  for (std::size_t p = 0; p < doc.paths.size(); ++p) {
    TimeStep delayed = 0;
    for (const std::string& name : doc.paths[p]) {
      const std::size_t e = element_index.at(name);
      if (!alpha[e].has_value() || delayed < *alpha[e]) alpha[e] = delayed;
      delayed += doc.transits[e] + doc.duals[e];
    }
  }
  for (std::size_t e = 0; e < doc.element_names.size(); ++e) {
    if (alpha[e] != doc.alphas[e]) {
      fail("elements[" + std::to_string(e) + "].alpha",
           "does not match recomputed entry time");
    }
  }

  const bool expect_all_equal =
      doc.flow_value == doc.cut_capacity &&
      doc.cut_capacity == doc.oracle_strict_optimum &&
      (!doc.oracle_waiting_optimum.has_value() ||
       *doc.oracle_waiting_optimum == doc.oracle_strict_optimum);
  if (doc.all_equal != expect_all_equal) {
    fail("all_equal", "inconsistent with the reported optima");
  }
  return doc;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string temp = path + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open '" + temp + "' for writing");
    }
    out << contents;
    if (!out.flush()) {
      throw std::runtime_error("write to '" + temp + "' failed");
    }
  }
  std::filesystem::rename(temp, path);
}

}  // namespace aft
