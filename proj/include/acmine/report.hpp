#pragma once

#include <string>

#include "acmine/config.hpp"

namespace acmine {

// Subcommand entry points. Each loads the input, applies the cohort, writes
// its artifact files plus manifest.json and run.config into cfg.out_dir.
void cmd_mine(const RunConfig& cfg);
void cmd_rules(const RunConfig& cfg);
void cmd_chains(const RunConfig& cfg);
void cmd_cluster(const RunConfig& cfg);
void cmd_temporal(const RunConfig& cfg);
void cmd_report(const RunConfig& cfg);

}  // namespace acmine
