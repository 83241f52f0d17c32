#pragma once

#include <map>
#include <ostream>
#include <string>

#include "qfrob/report.hpp"

namespace qfrob {

enum ExitCode : int { kExitOk = 0, kExitParse = 2, kExitHypothesis = 3, kExitCheckFailed = 4, kExitInternal = 5 };

struct RunConfig {
  std::string command;
  unsigned long p = 0;
  std::string alpha = "1/2";
  std::size_t degree = 0;  // 0: command default (2 p^2, capped at 120 for truncation)
  unsigned precision = 6;
  unsigned s_max = 2;
  std::uint64_t n_max = 10, m_max = 5;
  int i_max = 1;
  unsigned r_max = 2, conclusion_s_max = 1;
  unsigned h = 1;
  std::size_t terms = 2, deg = 0, window = 0;
  std::string format = "text";
  std::string json_path;
  std::string expr;
};

// key = value lines, '#' starts a comment
std::map<std::string, std::string> read_config_file(const std::string& path);

Json config_to_json(const RunConfig& c);
RunReport run_command(const RunConfig& c);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qfrob
