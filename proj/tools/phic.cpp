// phic.cpp
// Copyright (c) 2026, phic contributors
// Licensed under the Apache License Version 2.0.
//
// Command-line front end: eval, graph, translate, desugar, check, props.
//
// Exit codes: 0 success, 1 usage or input error, 2 stuck (or open term for
// `check`), 3 fuel exhausted or cycle.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "phic/errors.hpp"
#include "phic/lambda.hpp"
#include "phic/props.hpp"
#include "phic/reduction.hpp"
#include "phic/surface.hpp"
#include "phic/tap.hpp"

using json = nlohmann::json;
using namespace phic;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kStuck = 2;
constexpr int kNoResult = 3;

struct Input {
  std::string expr;
  std::string file;
};

struct Options {
  std::string strategy = "normal";
  std::size_t fuel = kDefaultFuel;
  bool app_phi = false;
  std::string output = "text";
  bool json_flag = false;
  bool trace = false;
  bool indented = false;
  std::size_t max_nodes = kDefaultMaxNodes;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
};

void add_input(CLI::App* cmd, Input& in) {
  auto* e = cmd->add_option("-e,--expr", in.expr, "Term given on the command line");
  auto* f = cmd->add_option("file", in.file, "Source file, or - for standard input");
  e->excludes(f);
  f->excludes(e);
}

std::string read_source(const Input& in) {
  if (!in.expr.empty()) return in.expr;
  if (in.file.empty()) throw CLI::ValidationError("input", "give a FILE, - or -e EXPR");
  if (in.file == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream f(in.file);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot open " + in.file);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool want_json(const Options& o) { return o.json_flag || o.output == "json"; }

std::string show(const Term& t, const Options& o) {
  return pretty(t, o.indented ? Style::Indented : Style::Compact);
}

int status_exit(EvalStatus s) {
  switch (s) {
    case EvalStatus::Normal:
    case EvalStatus::WeakHead: return kOk;
    case EvalStatus::Stuck: return kStuck;
    case EvalStatus::FuelExhausted:
    case EvalStatus::Cycle: return kNoResult;
  }
  return kOk;
}

json machine_config_json(std::size_t step, int rule, const Configuration& c) {
  ConfigurationView v = view(c);
  return {{"step", step}, {"rule", rule}, {"focus", v.focus}, {"actions", v.actions},
          {"parents", v.parents}};
}

int cmd_eval(const Input& in, const Options& o) {
  Term t = parse_term(read_source(in));
  if (o.strategy == "machine") {
    MachineRun m = run(t, o.fuel, o.trace, o.app_phi);
    Term result = decode(m.final);
    const int code = m.status == MachineStatus::Terminal ? kOk : kNoResult;
    if (want_json(o)) {
      json j{{"status", to_string(m.status)}, {"term", pretty(result)}, {"steps", m.steps}};
      if (m.trace) {
        j["trace"] = json::array();
        for (const auto& e : *m.trace) j["trace"].push_back(machine_config_json(e.step, e.rule, e.config));
      }
      std::cout << j.dump(2) << "\n";
      return code;
    }
    if (m.trace) {
      for (const auto& e : *m.trace) {
        std::cout << e.step << "  (" << e.rule << ")  " << to_string(e.config) << "\n";
      }
    }
    std::cout << show(result, o) << "\nstatus: " << to_string(m.status) << "\nsteps: " << m.steps
              << "\n";
    return code;
  }

  Reducer reducer(o.app_phi);
  Strategy s = o.strategy == "head" ? Strategy::HeadOnly : Strategy::NormalOrder;
  EvalOutcome r = reducer.evaluate(t, s, o.fuel, o.trace);
  if (want_json(o)) {
    json j{{"status", to_string(r.status)}, {"term", pretty(r.term)}, {"steps", r.steps}};
    if (r.stuck_label) j["stuck_label"] = r.stuck_label->str();
    if (r.trace) {
      j["trace"] = json::array();
      std::size_t k = 0;
      for (const auto& e : *r.trace) {
        j["trace"].push_back({{"step", ++k}, {"rule", to_string(e.rule)}, {"path", to_string(e.path)},
                              {"term", pretty(e.term)}});
      }
    }
    std::cout << j.dump(2) << "\n";
    return status_exit(r.status);
  }
  if (r.trace) {
    std::size_t k = 0;
    for (const auto& e : *r.trace) {
      std::cout << ++k << "  " << to_string(e.rule) << "  " << to_string(e.path) << "  "
                << pretty(e.term) << "\n";
    }
  }
  std::cout << show(r.term, o) << "\nstatus: " << to_string(r.status) << "\nsteps: " << r.steps
            << "\n";
  if (r.stuck_label) std::cerr << "stuck at label " << r.stuck_label->str() << "\n";
  return status_exit(r.status);
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

int cmd_graph(const Input& in, const Options& o) {
  Term t = parse_term(read_source(in));
  Reducer reducer(o.app_phi);
  ReductionGraph g = reducer.reduction_graph(t, o.max_nodes);
  std::vector<std::size_t> sinks = g.sinks();
  auto is_sink = [&](std::size_t n) { return std::find(sinks.begin(), sinks.end(), n) != sinks.end(); };

  if (want_json(o)) {
    json j{{"truncated", g.truncated}, {"nodes", json::array()}, {"edges", json::array()}};
    for (std::size_t n = 0; n < g.nodes.size(); ++n) {
      j["nodes"].push_back({{"id", n}, {"term", pretty(g.nodes[n])}, {"sink", is_sink(n)},
                            {"expanded", bool(g.expanded[n])}});
    }
    for (const auto& e : g.edges) {
      j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"rule", to_string(e.rule)},
                            {"path", to_string(e.path)}, {"back_edge", e.back_edge}});
    }
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  if (o.output == "dot") {
    std::cout << "digraph reductions {\n  node [shape=box, fontname=\"monospace\"];\n";
    for (std::size_t n = 0; n < g.nodes.size(); ++n) {
      std::cout << "  n" << n << " [label=\"" << dot_escape(pretty(g.nodes[n])) << "\""
                << (is_sink(n) ? ", peripheries=2" : "") << "];\n";
    }
    for (const auto& e : g.edges) {
      std::cout << "  n" << e.from << " -> n" << e.to << " [label=\"" << to_string(e.rule) << "\""
                << (e.back_edge ? ", style=dashed, constraint=false" : "") << "];\n";
    }
    std::cout << "}\n";
    return kOk;
  }
  std::cout << "nodes: " << g.nodes.size() << (g.truncated ? " (truncated)" : "") << "\n";
  for (std::size_t n = 0; n < g.nodes.size(); ++n) {
    std::cout << "  " << n << (is_sink(n) ? " *" : "  ") << " " << pretty(g.nodes[n]) << "\n";
  }
  std::cout << "edges: " << g.edges.size() << "\n";
  for (const auto& e : g.edges) {
    std::cout << "  " << e.from << " -> " << e.to << "  " << to_string(e.rule) << " at "
              << to_string(e.path) << (e.back_edge ? "  (back edge)" : "") << "\n";
  }
  return kOk;
}

int cmd_translate(const Input& in, const Options& o) {
  LamTerm e = phi_to_lambda(parse_term(read_source(in)));
  if (want_json(o)) {
    std::cout << json{{"lambda", to_string(e)}}.dump(2) << "\n";
  } else {
    std::cout << to_string(e) << "\n";
  }
  return kOk;
}

int cmd_desugar(const Input& in, const Options& o) {
  Term t = parse_term(read_source(in));
  if (want_json(o)) {
    std::cout << json{{"term", pretty(t)}}.dump(2) << "\n";
  } else {
    std::cout << show(t, o) << "\n";
  }
  return kOk;
}

int cmd_check(const Input& in, const Options& o) {
  // Parsing already rejects duplicate labels and unresolved names.
  Term t = parse_term(read_source(in));
  auto free = max_free_locator(t);
  if (want_json(o)) {
    json j{{"closed", !free.has_value()}, {"size", t.size()}};
    if (free) j["max_free_locator"] = *free;
    std::cout << j.dump(2) << "\n";
  } else if (free) {
    std::cout << "open: free locator up to ^" << *free << "\n";
  } else {
    std::cout << "ok: closed term of size " << t.size() << "\n";
  }
  return free ? kStuck : kOk;
}

int cmd_props(const Options& o) {
  bool ok = true;
  json reports = json::array();
  for (const auto& r : props::run_all(o.samples, o.seed)) {
    ok = ok && r.ok();
    if (want_json(o)) {
      json j{{"name", r.name}, {"samples", r.samples}, {"passed", r.passed},
             {"inconclusive", r.inconclusive}, {"violations", r.violations},
             {"skipped", r.skipped}, {"seconds", r.seconds}};
      if (r.first_violation) j["first_violation"] = *r.first_violation;
      reports.push_back(j);
    } else {
      std::cout << props::format(r) << "\n";
    }
  }
  if (want_json(o)) std::cout << reports.dump(2) << "\n";
  return ok ? kOk : kStuck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for the φ-calculus of decorated objects"};
  app.require_subcommand(1);

  Options o;
  if (const char* env = std::getenv("PHIC_FUEL")) {
    try {
      o.fuel = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: PHIC_FUEL must be a natural number\n";
      return kInputError;
    }
  }
  Input in;

  auto common = [&](CLI::App* cmd) {
    add_input(cmd, in);
    cmd->add_option("--output", o.output, "Output format")
        ->check(CLI::IsMember({"text", "json", "dot"}));
    cmd->add_flag("--json", o.json_flag, "Same as --output json");
    cmd->add_flag("--app-phi", o.app_phi, "Enable decorated instantiation (APP_phi)");
    cmd->add_flag("--indent", o.indented, "Indented term output");
  };

  auto* eval = app.add_subcommand("eval", "Evaluate a term");
  common(eval);
  eval->add_option("--strategy", o.strategy, "normal, head or machine")
      ->check(CLI::IsMember({"normal", "head", "machine"}));
  eval->add_option("--fuel", o.fuel, "Step limit (default 10000, or PHIC_FUEL)")
      ->check(CLI::PositiveNumber);
  eval->add_flag("--trace", o.trace, "Print every step");

  auto* graph = app.add_subcommand("graph", "Explore all reductions of a term");
  common(graph);
  graph->add_option("--max-nodes", o.max_nodes, "Node budget")->check(CLI::PositiveNumber);

  auto* translate = app.add_subcommand("translate", "Translate to λ-calculus with records");
  common(translate);
  auto* desugar = app.add_subcommand("desugar", "Resolve attribute names, $ and positional sugar");
  common(desugar);
  auto* check = app.add_subcommand("check", "Check that a term parses and is closed");
  common(check);

  auto* props_cmd = app.add_subcommand("props", "Run the randomized property suites");
  props_cmd->add_option("--samples", o.samples, "Instances per suite")->check(CLI::PositiveNumber);
  props_cmd->add_option("--seed", o.seed, "Random seed");
  props_cmd->add_flag("--json", o.json_flag, "JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (eval->parsed()) {
      if (o.strategy == "machine" && o.app_phi) {
        throw Error(ErrorKind::UnsupportedVariant, "the machine strategy does not support --app-phi");
      }
      return cmd_eval(in, o);
    }
    if (graph->parsed()) return cmd_graph(in, o);
    if (translate->parsed()) return cmd_translate(in, o);
    if (desugar->parsed()) return cmd_desugar(in, o);
    if (check->parsed()) return cmd_check(in, o);
    if (props_cmd->parsed()) return cmd_props(o);
  } catch (const SourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kInputError;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
