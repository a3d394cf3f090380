#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aft/core_model.hpp"
#include "aft/dynamic_flow.hpp"

namespace aft {

struct InstanceElement {
  std::string name;
  Rational capacity;
  TimeStep transit = 0;
};

// On-disk description of an instance: ground set, path family, horizon.
struct InstanceDocument {
  std::vector<InstanceElement> elements;
  std::vector<std::vector<std::string>> paths;
  TimeStep horizon = 1;
};

// Parses the JSON schema {"elements": [{"name","capacity","transit"}...],
// "paths": [["a","b"]...], "horizon": T}.  Capacities may be JSON integers or
// rational strings "p/q".  Schema violations throw ParseError naming the
// field; the document is structurally checked (unique names, declared
// references, no duplicates within a path) but not canonicalized.
InstanceDocument parse_instance(const std::string& text);

// Canonical form: elements sorted by name, paths sorted lexicographically by
// their name sequences (after element sorting the two orders agree).
void canonicalize_instance(InstanceDocument& doc);

// Canonical serialization: two-space indent, sorted keys, rationals as
// strings.  parse ∘ serialize is the identity on canonical documents.
std::string serialize_instance(const InstanceDocument& doc);

// FNV-1a 64-bit digest of the canonical serialization, as 16 hex digits.
std::string instance_digest(const InstanceDocument& doc);

AbstractNetwork to_network(const InstanceDocument& doc);

// Built-in fixture instances (unit capacities, unit transit times, horizon 6).
InstanceDocument example1_instance();
InstanceDocument example2_instance();

// Renders a certify() result as a reproducible JSON document; `digest` is the
// instance digest the certificate refers to.  The document embeds enough of
// the instance (capacities, transit times, weights) to re-derive every sum.
std::string serialize_certificate(const Certificate& cert,
                                  const AbstractNetwork& net,
                                  const std::string& digest);

// Certificate as re-read from disk, with name-keyed columns.
struct CertificateDocument {
  std::string instance_digest;
  TimeStep horizon = 0;
  Rational static_objective;
  Rational flow_value;
  Rational cut_capacity;
  Rational oracle_strict_optimum;
  std::optional<Rational> oracle_waiting_optimum;
  bool strict_coverage_ok = false;
  bool waiting_coverage_ok = false;
  bool all_equal = false;
  std::vector<std::string> element_names;
  std::vector<Rational> capacities;
  std::vector<TimeStep> transits;
  std::vector<long long> duals;
  std::vector<std::optional<TimeStep>> alphas;
  std::vector<std::vector<std::string>> paths;
  std::vector<Rational> weights;
  std::vector<Rational> flows;
};

// Parses and *audits* a certificate: all recomputable sums (objective from
// weights and flows, dual cost from capacities and duals, flow value from
// horizon and transit times, the all-equal flag) are recomputed and must
// match, otherwise ParseError.
CertificateDocument parse_certificate(const std::string& text);

// Writes via a temp file in the same directory followed by an atomic rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace aft
