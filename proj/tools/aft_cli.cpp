// Command line front end: validate instances, solve them end to end with
// certificates, inspect time expansions, run brute-force oracles, and
// generate random instances and the built-in fixture files.
//
// Exit codes: 0 success, 1 invalid instance or usage, 2 theorem violation
// detected, 3 size bound exceeded.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aft/core_model.hpp"
#include "aft/dynamic_flow.hpp"
#include "aft/errors.hpp"
#include "aft/generators.hpp"
#include "aft/instance_io.hpp"
#include "aft/oracle.hpp"
#include "aft/static_flow.hpp"
#include "aft/time_expansion.hpp"

namespace {

using namespace aft;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

InstanceDocument load_instance(const std::string& path,
                               std::optional<TimeStep> horizon_override) {
  InstanceDocument doc = parse_instance(read_file(path));
  if (horizon_override) doc.horizon = *horizon_override;
  return doc;
}

std::string triple_text(const AbstractNetwork& net, const SwitchTriple& t) {
  return "P=" + net.path_label(t.p) + " Q=" + net.path_label(t.q) +
         " pivot=" + net.element(t.pivot).id;
}

int run_validate(const std::string& path) {
  const InstanceDocument doc = load_instance(path, std::nullopt);
  const AbstractNetwork net = to_network(doc);
  const ValidationReport report = validate_switching(net);
  if (!report.ok()) {
    std::cout << "switching property violated (" << report.violations.size()
              << " triples):\n";
    for (const SwitchTriple& t : report.violations) {
      std::cout << "  " << triple_text(net, t) << "\n";
    }
    return 1;
  }
  std::cout << "switching: ok (" << net.element_count() << " elements, "
            << net.path_count() << " paths)\n";
  for (int p : report.zero_transit_paths) {
    std::cerr << "warning: path " << net.path_label(p)
              << " has zero total transit time\n";
  }

  int failures = 0;
  const WeightFunction weights = build_horizon_weights(net, doc.horizon);
  const auto supermodular = check_supermodular(net, weights);
  if (supermodular.empty()) {
    std::cout << "supermodularity of horizon weights (T=" << doc.horizon
              << "): ok\n";
  } else {
    ++failures;
    std::cout << "supermodularity of horizon weights (T=" << doc.horizon
              << "): " << supermodular.size() << " violations\n";
    for (const auto& v : supermodular) {
      std::cout << "  P=" << net.path_label(v.p) << " Q=" << net.path_label(v.q)
                << " pivot=" << net.element(v.pivot).id
                << " switched=" << format_rational(v.switched_sum)
                << " original=" << format_rational(v.original_sum) << "\n";
    }
  }

  const AbstractNetwork reduced = reduce_assumption2(net);
  std::cout << "reduction: " << net.path_count() << " paths -> "
            << reduced.path_count() << " paths\n";
  std::vector<std::pair<int, int>> inclusions;
  if (check_no_inclusion(reduced, &inclusions)) {
    std::cout << "no inclusions after reduction: ok\n";
  } else {
    ++failures;
    std::cout << "inclusions remain after reduction:\n";
    for (const auto& [p, q] : inclusions) {
      std::cout << "  " << reduced.path_label(p) << " contains "
                << reduced.path_label(q) << "\n";
    }
  }

  const OrderPreservationReport order = check_order_preservation(reduced);
  if (order.ok()) {
    std::cout << "order preservation of canonical switches: ok\n";
  } else {
    ++failures;
    std::cout << "order preservation violations:\n";
    for (const OrderViolation& v : order.violations) {
      std::cout << "  P=" << reduced.path_label(v.p)
                << " Q=" << reduced.path_label(v.q)
                << " pivot=" << reduced.element(v.pivot).id << " elements "
                << reduced.element(v.first).id << ","
                << reduced.element(v.second).id << " swapped in the "
                << (v.in_prefix ? "prefix" : "suffix") << " part\n";
    }
  }
  return failures == 0 ? 0 : 2;
}

int run_solve(const std::string& path, std::optional<TimeStep> horizon,
              const std::string& output, bool integral_primal,
              const std::string& waiting) {
  InstanceDocument doc = load_instance(path, horizon);
  const AbstractNetwork net = to_network(doc);

  CertifyOptions options;
  options.integral_primal = integral_primal;
  options.waiting = waiting == "on"    ? CertifyOptions::Waiting::on
                    : waiting == "off" ? CertifyOptions::Waiting::off
                                       : CertifyOptions::Waiting::automatic;
  const Certificate cert = certify(net, Horizon(doc.horizon), options);

  canonicalize_instance(doc);
  const std::string text =
      serialize_certificate(cert, net, instance_digest(doc));

  std::ostream& summary = output.empty() ? std::cerr : std::cout;
  if (output.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(output, text);
    summary << "wrote " << output << "\n";
  }
  summary << "horizon:        " << cert.horizon << "\n"
          << "static optimum: " << format_rational(cert.static_solution.objective)
          << "\n"
          << "flow value:     " << format_rational(cert.flow_value) << "\n"
          << "cut capacity:   " << format_rational(cert.cut_capacity) << "\n"
          << "oracle strict:  " << format_rational(cert.oracle_strict_optimum)
          << "\n";
  if (cert.oracle_waiting_optimum) {
    summary << "oracle waiting: "
            << format_rational(*cert.oracle_waiting_optimum) << "\n";
  } else {
    summary << "oracle waiting: skipped\n";
  }
  summary << "coverage:       strict "
          << (cert.strict_coverage.ok() ? "ok" : "FAILED") << ", waiting "
          << (cert.waiting_coverage.ok() ? "ok" : "FAILED") << "\n"
          << "all equal:      " << (cert.all_equal ? "yes" : "NO") << "\n";
  for (int p : cert.zero_transit_warnings) {
    std::cerr << "warning: path " << net.path_label(p)
              << " has zero total transit time\n";
  }
  for (int e : cert.out_of_horizon_warnings) {
    std::cerr << "warning: cut pays for element " << net.element(e).id
              << " entirely at or beyond the horizon\n";
  }
  const bool ok = cert.all_equal && cert.strict_coverage.ok() &&
                  cert.waiting_coverage.ok();
  return ok ? 0 : 2;
}

int run_expand(const std::string& path, std::optional<TimeStep> horizon,
               bool check_switching) {
  const InstanceDocument doc = load_instance(path, horizon);
  const AbstractNetwork net = to_network(doc);
  const Horizon h(doc.horizon);
  const std::vector<TemporalPath> paths = expand(net, h);
  std::cout << paths.size() << " admissible temporal paths (horizon "
            << h.steps << "):\n";
  for (const TemporalPath& tp : paths) {
    std::cout << "  " << net.path_label(tp.path) << " start=" << tp.start
              << " arrival=" << arrival_time(net, tp) << "\n";
  }
  if (check_switching) {
    const ExpansionSwitchingReport report =
        check_expansion_switching(net, h);
    if (report.ok()) {
      std::cout << "expansion switching: ok\n";
    } else {
      std::cout << "expansion switching: " << report.violations.size()
                << " violations\n";
      for (const ExpansionViolation& v : report.violations) {
        std::cout << "  P=" << net.path_label(v.p.path) << "@" << v.p.start
                  << " Q=" << net.path_label(v.q.path) << "@" << v.q.start
                  << " pivot=(" << net.element(v.pivot.element).id << ","
                  << v.pivot.time << ")\n";
      }
    }
  }
  return 0;  // diagnostic either way
}

int run_oracle(const std::string& path, std::optional<TimeStep> horizon,
               const std::string& mode) {
  const InstanceDocument doc = load_instance(path, horizon);
  const AbstractNetwork net = to_network(doc);
  const Horizon h(doc.horizon);
  if (mode == "strict" || mode == "both") {
    std::cout << "strict optimum:  "
              << format_rational(oracle_strict(net, h).optimum) << "\n";
  }
  if (mode == "waiting" || mode == "both") {
    std::cout << "waiting optimum: "
              << format_rational(oracle_waiting(net, h).optimum) << "\n";
  }
  return 0;
}

int run_generate(bool dag, bool closure, std::uint64_t seed, int nodes,
                 int arcs, const std::string& output) {
  if (dag == closure) {
    std::cerr << "error: choose exactly one of --dag or --closure\n";
    return 1;
  }
  InstanceDocument doc;
  if (dag) {
    DagOptions options;
    options.nodes = nodes;
    options.arcs = arcs;
    options.seed = seed;
    doc = generate_dag(options);
  } else {
    ClosureOptions options;
    options.seed = seed;
    doc = generate_closure(options);
  }
  const std::string text = serialize_instance(doc);
  if (output.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(output, text);
    std::cout << "wrote " << output << " (digest " << instance_digest(doc)
              << ")\n";
  }
  return 0;
}

int run_fixtures(const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::vector<std::pair<std::string, InstanceDocument>> fixtures = {
      {"example1.json", example1_instance()},
      {"example2.json", example2_instance()},
  };
  for (auto [name, doc] : fixtures) {
    canonicalize_instance(doc);
    const std::string path = (std::filesystem::path(dir) / name).string();
    write_file_atomic(path, serialize_instance(doc));
    std::cout << "wrote " << path << " (digest " << instance_digest(doc)
              << ")\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact abstract flows over time: validation, solving, "
               "certificates, oracles and instance generation"};
  app.require_subcommand(1);

  std::string instance_path;
  std::optional<TimeStep> horizon;
  std::string output;
  bool integral_primal = false;
  std::string waiting = "auto";
  bool check_switching = false;
  std::string oracle_mode = "strict";
  bool gen_dag = false;
  bool gen_closure = false;
  std::uint64_t seed = 0;
  int nodes = 6;
  int arcs = 8;
  std::string fixtures_dir = ".";

  CLI::App* validate =
      app.add_subcommand("validate",
                         "Check the switching property plus the structural "
                         "theorems (supermodularity, reduction, inclusion, "
                         "order preservation)");
  validate->add_option("instance", instance_path, "instance file")->required();

  CLI::App* solve = app.add_subcommand(
      "solve",
      "Solve exactly, build the repeated flow and the cut over time, verify "
      "coverage, compare with the brute-force optimum, emit a certificate");
  solve->add_option("instance", instance_path, "instance file")->required();
  solve->add_option("--horizon", horizon, "override the instance horizon");
  solve->add_option("-o,--output", output,
                    "write the certificate here instead of stdout");
  solve->add_flag("--integral-primal", integral_primal,
                  "also require an integral optimal flow");
  solve->add_option("--waiting", waiting, "waiting-schedule oracle: on/off/auto")
      ->check(CLI::IsMember({"auto", "on", "off"}));

  CLI::App* expand_cmd = app.add_subcommand(
      "expand", "List the admissible temporal paths of the time expansion");
  expand_cmd->add_option("instance", instance_path, "instance file")
      ->required();
  expand_cmd->add_option("--horizon", horizon, "override the instance horizon");
  expand_cmd->add_flag("--check-switching", check_switching,
                       "also report switching violations of the expansion "
                       "(diagnostic; does not change the exit code)");

  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "Brute-force optimum on the time expansion");
  oracle_cmd->add_option("instance", instance_path, "instance file")
      ->required();
  oracle_cmd->add_option("--horizon", horizon, "override the instance horizon");
  oracle_cmd->add_option("--mode", oracle_mode, "strict, waiting or both")
      ->check(CLI::IsMember({"strict", "waiting", "both"}));

  CLI::App* generate = app.add_subcommand(
      "generate", "Generate a random instance (DAG paths or switching closure)");
  generate->add_flag("--dag", gen_dag, "all source-sink paths of a random DAG");
  generate->add_flag("--closure", gen_closure,
                     "random paths closed under the switching rule");
  generate->add_option("--seed", seed, "random seed");
  generate->add_option("--nodes", nodes, "DAG node count");
  generate->add_option("--arcs", arcs, "DAG arc count");
  generate->add_option("-o,--output", output, "write the instance here");

  CLI::App* fixtures = app.add_subcommand(
      "fixtures", "Write the built-in example instance files");
  fixtures->add_option("--dir", fixtures_dir, "target directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*validate) return run_validate(instance_path);
    if (*solve)
      return run_solve(instance_path, horizon, output, integral_primal,
                       waiting);
    if (*expand_cmd) return run_expand(instance_path, horizon, check_switching);
    if (*oracle_cmd) return run_oracle(instance_path, horizon, oracle_mode);
    if (*generate)
      return run_generate(gen_dag, gen_closure, seed, nodes, arcs, output);
    if (*fixtures) return run_fixtures(fixtures_dir);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const SwitchingViolationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const TdiViolationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const StructuralInconsistencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ScaleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const GenerationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
