#pragma once

// Experiment runners behind the CLI subcommands. Each reads its settings from
// a Config (recording every resolved value) and returns the finished table;
// nothing here touches the filesystem except the explicit file inputs.

#include "gsp/config.hpp"
#include "gsp/io.hpp"

#include <string>
#include <vector>

namespace gsp::experiments {

struct Output {
  io::Table table;
  std::vector<std::string> notes;  ///< extra comment lines after the provenance line
  std::string text;                ///< raw body for non-CSV outputs (gen-graph)
  std::vector<io::Series> plot;
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
};

const std::vector<std::string>& commands();
bool known_command(const std::string& name);
Output run(const std::string& command, const Config& cfg);

Output decompose(const Config& cfg);
Output select(const Config& cfg);
Output recover(const Config& cfg);
Output mse_curve(const Config& cfg);
Output l1_sweep(const Config& cfg);
Output lms_run(const Config& cfg);
Output design_p(const Config& cfg);
Output diffuse_run(const Config& cfg);
Output gen_graph(const Config& cfg);

}  // namespace gsp::experiments
