#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tropcurve::cli {

enum Exit : int {
    kOk = 0,
    kPropertyFalse = 1,
    kInputError = 2,
    kUnknownCommand = 64,
    kMalformedFile = 65,
};

// Runs one command line (args[0] is the subcommand) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::vector<std::string> subcommands();

}  // namespace tropcurve::cli
