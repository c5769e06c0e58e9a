#pragma once

// Command-line front end: argument parsing and report generation for the
// qgc subcommands.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace qgc::cli {

enum class Status { Pass, Fail, Value };

struct Report {
  std::string command;
  Status status = Status::Value;
  nlohmann::json payload = nlohmann::json::object();
  double seconds = 0;

  nlohmann::json to_json() const;
  int exit_code() const { return status == Status::Fail ? 1 : 0; }
};

/// Runs one invocation.  Data goes to `out`, diagnostics to `err`.
/// Returns 0 on pass/value, 1 on fail, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qgc::cli
