#include "gsp/config.hpp"
#include "gsp/experiments.hpp"
#include "gsp/io.hpp"
#include "gsp/types.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Invocation {
  std::string config_file;
  std::vector<std::string> overrides;
  std::string out_file;
  std::string svg_file;
  std::map<std::string, std::string> flags;  // key -> value from typed flags
};

// Typed convenience flags; each maps onto the config key of the same meaning.
const std::vector<std::pair<std::string, std::string>> kFlags = {
    {"--seed", "seed"},         {"--graph", "graph"},       {"--graph-file", "graph_file"}, {"--shift", "shift"},
    {"--band", "band"},         {"--criterion", "criterion"}, {"--method", "method"},       {"--samples", "samples"},
    {"--noise", "noise"},       {"--mu", "mu"},             {"--alpha-bar", "alpha_bar"},   {"--gamma", "gamma"},
    {"-T,--iterations", "iterations"}, {"--p", "p"},        {"--comm-graph", "comm_graph"}, {"--trials", "trials"},
};

void emit(const std::string& command, const gsp::Config& cfg, const gsp::experiments::Output& out, std::ostream& os) {
  std::vector<std::string> comments{"gsp " + command + " " + cfg.provenance()};
  comments.insert(comments.end(), out.notes.begin(), out.notes.end());
  if (!out.text.empty()) {
    for (const auto& c : comments) os << "# " << c << '\n';
    os << out.text;
  } else {
    gsp::io::write_csv(os, comments, out.table);
  }
}

int execute(const std::string& command, const Invocation& inv) {
  gsp::Config cfg = inv.config_file.empty() ? gsp::Config() : gsp::Config::from_file(inv.config_file);
  for (const auto& [key, value] : inv.flags) cfg.set(key, value);
  for (const auto& a : inv.overrides) cfg.set_assignment(a);

  const gsp::experiments::Output out = gsp::experiments::run(command, cfg);
  cfg.reject_unused();

  if (inv.out_file.empty()) {
    emit(command, cfg, out, std::cout);
  } else {
    std::ofstream os(inv.out_file, std::ios::binary);
    if (!os) throw gsp::ConfigError("cannot write '" + inv.out_file + "'");
    emit(command, cfg, out, os);
  }
  if (!inv.svg_file.empty()) {
    if (out.plot.empty()) throw gsp::ConfigError("command '" + command + "' has no plot output");
    std::ofstream os(inv.svg_file, std::ios::binary);
    if (!os) throw gsp::ConfigError("cannot write '" + inv.svg_file + "'");
    gsp::io::write_svg(os, out.title, out.x_label, out.y_label, out.plot, out.log_y);
  }
  return 0;
}

const std::map<std::string, std::string> kSummaries{
    {"decompose", "spectrum (and optionally eigenvectors) of the graph shift"},
    {"select", "sampling set by greedy, exhaustive or relaxed design"},
    {"recover", "reconstruct a signal from its samples"},
    {"mse-curve", "MSE versus sample count or bandwidth per strategy"},
    {"l1-sweep", "l1 reconstruction error versus number of corrupted samples"},
    {"lms-run", "learning curve of the adaptive LMS estimator"},
    {"design-p", "minimum-rate sampling probabilities for a target rate and MSE"},
    {"diffuse-run", "per-node error of distributed adapt-then-combine estimation"},
    {"gen-graph", "write a generated graph as an edge list"}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling, reconstruction and adaptive tracking of bandlimited graph signals"};
  app.require_subcommand(1);

  std::map<std::string, Invocation> invocations;
  std::map<std::string, std::map<std::string, std::string>> flag_values;
  for (const auto& name : gsp::experiments::commands()) {
    CLI::App* sub = app.add_subcommand(name, kSummaries.at(name));
    Invocation& inv = invocations[name];
    sub->add_option("-c,--config", inv.config_file, "key=value config file")->check(CLI::ExistingFile);
    sub->add_option("-s,--set", inv.overrides, "override as key=value (repeatable)");
    sub->add_option("-o,--out", inv.out_file, "output file (default stdout)");
    sub->add_option("--svg", inv.svg_file, "also write an SVG line plot");
    for (const auto& [flag, key] : kFlags) sub->add_option(flag, flag_values[name][key], "sets config key '" + key + "'");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  for (CLI::App* sub : app.get_subcommands()) {
    const std::string name = sub->get_name();
    Invocation& inv = invocations[name];
    for (const auto& [flag, key] : kFlags) {
      if (sub->get_option(flag.substr(flag.find("--")))->count() > 0) inv.flags[key] = flag_values[name][key];
    }
    try {
      return execute(name, inv);
    } catch (const gsp::ConfigError& e) {
      std::cerr << "gsp " << name << ": configuration error: " << e.what() << '\n';
      return kExitConfig;
    } catch (const gsp::DimensionError& e) {
      std::cerr << "gsp " << name << ": configuration error: " << e.what() << '\n';
      return kExitConfig;
    } catch (const gsp::NumericalError& e) {
      std::cerr << "gsp " << name << ": numerical error: " << e.what() << " (residual " << e.residual() << ")\n";
      return kExitNumerical;
    } catch (const std::exception& e) {
      std::cerr << "gsp " << name << ": " << e.what() << '\n';
      return 1;
    }
  }
  return 0;
}
