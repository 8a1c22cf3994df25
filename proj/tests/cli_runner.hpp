#pragma once

// Runs the lhall binary through /bin/sh and captures stdout+stderr plus the
// exit code. Environment assignments can be prefixed in the usual shell way.

#include <cstdio>
#include <stdexcept>
#include <string>
#include <sys/wait.h>

namespace cli {

struct result {
    int exit_code = -1;
    std::string output;
};

inline result run(const std::string& binary, const std::string& args,
                  const std::string& env_prefix = "") {
    const std::string command = env_prefix + (env_prefix.empty() ? "" : " ") + binary + " " +
                                args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe)
        throw std::runtime_error("cannot spawn: " + command);
    result res;
    char buffer[4096];
    std::size_t got = 0;
    while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0)
        res.output.append(buffer, got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

} // namespace cli
