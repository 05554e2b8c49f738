#pragma once
// Built-in invariant battery over the fixture families, used by the
// `verify` subcommand. Internal to the CLI target.

#include <string>
#include <vector>

namespace wcp::cli {

struct VerifyRow {
  std::string check;
  std::string config;
  bool pass = false;
  std::string detail;  // one short measurement, formatted deterministically
};

std::vector<VerifyRow> run_verify_battery();

}  // namespace wcp::cli
