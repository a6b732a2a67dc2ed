#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "confgauss/acceptance.hpp"

namespace confgauss {

// Whitespace-separated generators composed left to right:
//   dil:<lambda>            x -> e^lambda x
//   rot:<ax>,<ay>,<az>,<angle> or rot:<x|y|z>,<angle>
//   inv                     x -> x / |x|^2
//   tra:<x>,<y>,<z>
// The empty word is the identity.
Mat5 parse_word(const std::string& word);

Domain parse_domain(const std::string& text);

enum class OutputFormat { json, csv, pretty };

struct RunConfig {
    std::string surface;
    std::map<std::string, double> params;
    int grid = 128;
    std::optional<Domain> domain;
    Tolerances tol;
    OutputFormat format = OutputFormat::json;
    std::string out_dir;
    std::string word;
};

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_transform(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_check_invariants(const AcceptanceConfig& cfg, OutputFormat format, const std::vector<int>& only,
                         std::ostream& out, std::ostream& err);
int cmd_list_surfaces(OutputFormat format, std::ostream& out);

// Exit codes: 0 determinate / all criteria pass, 2 indeterminate / tolerances not met, 1 error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace confgauss
