#pragma once

#include <string>

namespace hyst::cli {

/// Execute one scenario file: parse + validate, run the task, write
/// <out>/trace.csv and <out>/report.json.
/// Returns 0 on success, 2 on validation errors, 3 on numerical failures.
int run_scenario(const std::string& path, const std::string& out_override);

void print_builtins();

}  // namespace hyst::cli
