#pragma once

#include <string>
#include <vector>

namespace endscope {

struct CliResult {
    int exit_code = 0;  // 0 success, 1 verification failure, 2 usage error
    std::string out;
    std::string err;
};

// Runs one CLI invocation; args exclude the program name.
CliResult run_cli(const std::vector<std::string>& args);

int cli_main(int argc, char** argv);

}  // namespace endscope
