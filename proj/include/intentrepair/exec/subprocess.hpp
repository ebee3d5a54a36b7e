#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

namespace intentrepair::exec {

struct ProcessResult {
    int exit_code = -1;  // 128 + signal when killed by a signal
    bool timed_out = false;
    std::string output;  // stdout and stderr interleaved, tail-capped
    std::chrono::milliseconds wall_time{0};
};

/// Runs `command` with /bin/sh -c in `workdir`. Only the variables named in
/// `env_allowlist` are passed through. The whole process group is killed when
/// `timeout` elapses. Throws Environment when the process cannot be spawned.
ProcessResult run_shell(const std::string& command, const std::string& workdir, std::chrono::milliseconds timeout,
                        const std::vector<std::string>& env_allowlist, std::size_t output_cap = 64 * 1024);

}  // namespace intentrepair::exec
