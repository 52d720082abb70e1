// The quadword command line, callable in-process so tests can drive it.
#ifndef QUADWORD_TOOLS_CLI_HPP_
#define QUADWORD_TOOLS_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace quadword::cli {

  // Everything a run needs, after command line and --config are merged.
  // Zero or empty means "not given".
  struct RunConfig {
    std::string   command;
    std::string   base;  // fibonacci | u
    std::string   slope;
    std::string   in;
    std::size_t   depth  = 0;
    std::uint64_t length = 0;
    std::size_t   nmax   = 0;
    std::uint64_t power  = 4;
    std::size_t   dmax   = 12;
    std::uint64_t growth = 2;
    std::string   rule   = "shortest";
    std::string   format = "json";
    std::string   out;
    std::string   trace;
    std::string   report;
    std::string   alphabet = "ab";
    std::string   forbidden;
    std::string   period;
    std::size_t   check_length = 30;
    std::string   config;
  };

  nlohmann::json to_json(RunConfig const& cfg);

  // Exit status: 0 when every check passes, 1 on a failed bound or
  // identity (or a library error), 2 on a usage error. args excludes the
  // program name.
  int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace quadword::cli

#endif  // QUADWORD_TOOLS_CLI_HPP_
