#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fnq {

// Exit statuses.
inline constexpr int kExitHolds = 0;
inline constexpr int kExitCounterexamples = 1;
inline constexpr int kExitError = 2;

struct RunConfig {
  std::string subcommand;  // solve | verify | classify | symbolic | enumerate
  std::string target;      // verify: thm4 | prop1 | pexider | alien | thm5-symbolic
  std::string ring;        // inline JSON when it starts with '{', else a file path
  std::vector<std::string> equations;
  std::string equation_file;
  std::vector<std::string> classes;  // "f=leibniz", "h=sofy:2"
  std::vector<std::string> params;   // "name=int", rationals for symbolic
  std::optional<long long> eps, lambda, mu;
  std::string family;                    // symbolic: built-in family name
  std::vector<std::string> definitions;  // symbolic: "f(x) = ..."
  std::string f_values, h_values, k_values, map_values;  // classify
  std::string cls = "arbitrary";                         // enumerate
  bool no_pivot = false;
  std::string out = "json";  // json | csv | text
  std::string output;        // report path; stdout when empty
  int workers = 1;
  std::uint64_t budget = 0;  // 0: FNQ_BUDGET or the default
  std::size_t ring_budget = 0;
  bool dry_run = false;
  bool json_errors = false;
};

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (CLI11) and runs; usage errors exit with kExitError.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fnq
