#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace degseq::cli {

/// Runs one CLI invocation. Reports go to `out` as JSON (or CSV/JSONL where
/// a subcommand says so); errors go to `err` as structured JSON.
/// Exit codes: 0 success, 2 parse error, 3 capacity error, 4 mathematical
/// singularity/domain error, 1 anything else.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace degseq::cli
