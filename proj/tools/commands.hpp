#pragma once

#include <string>

#include "run_config.hpp"

namespace tcv::cli {

// Runs one subcommand end to end: ingest the input, compute, write the
// output files plus a manifest into config.out. Partial outputs are
// removed if a stage fails. Diagnostics go to stderr; data goes to files.
void execute(const std::string& command, const RunConfig& config);

}  // namespace tcv::cli
