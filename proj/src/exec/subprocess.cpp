#include "intentrepair/exec/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>

#include "intentrepair/error.hpp"

namespace intentrepair::exec {

namespace {

using Clock = std::chrono::steady_clock;

class Fd {
public:
    explicit Fd(int fd = -1) : fd_(fd) {}
    Fd(const Fd&) = delete;
    Fd& operator=(const Fd&) = delete;
    ~Fd() { reset(); }
    int get() const { return fd_; }
    void reset() {
        if (fd_ >= 0) ::close(fd_);
        fd_ = -1;
    }

private:
    int fd_;
};

void append_capped(std::string& out, const char* data, std::size_t n, std::size_t cap, bool& truncated) {
    out.append(data, n);
    if (out.size() > cap) {
        out.erase(0, out.size() - cap);
        truncated = true;
    }
}

int decode_status(int status) {
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    if (WIFSIGNALED(status)) return 128 + WTERMSIG(status);
    return -1;
}

}  // namespace

ProcessResult run_shell(const std::string& command, const std::string& workdir, std::chrono::milliseconds timeout,
                        const std::vector<std::string>& env_allowlist, std::size_t output_cap) {
    std::vector<std::string> env_storage;
    for (const auto& name : env_allowlist) {
        if (const char* v = std::getenv(name.c_str())) env_storage.push_back(name + "=" + v);
    }
    std::vector<char*> envp;
    for (auto& e : env_storage) envp.push_back(e.data());
    envp.push_back(nullptr);

    std::string sh = "/bin/sh";
    std::string dash_c = "-c";
    std::string cmd = command;
    char* argv[] = {sh.data(), dash_c.data(), cmd.data(), nullptr};

    int fds[2];
    if (::pipe2(fds, O_CLOEXEC) != 0) throw Error(ErrorKind::Environment, std::string("pipe: ") + std::strerror(errno));
    Fd read_end(fds[0]);
    Fd write_end(fds[1]);

    const auto start = Clock::now();
    const pid_t pid = ::fork();
    if (pid < 0) throw Error(ErrorKind::Environment, std::string("fork: ") + std::strerror(errno));
    if (pid == 0) {
        ::setpgid(0, 0);
        ::dup2(write_end.get(), STDOUT_FILENO);
        ::dup2(write_end.get(), STDERR_FILENO);
        int devnull = ::open("/dev/null", O_RDONLY);
        if (devnull >= 0) ::dup2(devnull, STDIN_FILENO);
        if (::chdir(workdir.c_str()) != 0) _exit(126);
        ::execve(argv[0], argv, envp.data());
        _exit(127);
    }
    ::setpgid(pid, pid);
    write_end.reset();

    ProcessResult result;
    bool truncated = false;
    const auto deadline = start + timeout;
    char buf[8192];
    bool eof = false;
    while (!eof) {
        const auto now = Clock::now();
        if (now >= deadline) {
            result.timed_out = true;
            break;
        }
        const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
        pollfd pfd{read_end.get(), POLLIN, 0};
        const int rc = ::poll(&pfd, 1, static_cast<int>(std::max<long long>(1, remaining)));
        if (rc < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (rc == 0) continue;
        const auto n = ::read(read_end.get(), buf, sizeof buf);
        if (n > 0) {
            append_capped(result.output, buf, static_cast<std::size_t>(n), output_cap, truncated);
        } else if (n == 0 || errno != EINTR) {
            eof = true;
        }
    }

    int status = 0;
    if (result.timed_out) {
        ::kill(-pid, SIGKILL);
        ::waitpid(pid, &status, 0);
    } else {
        // Output closed; the shell may still be exiting.
        while (true) {
            const pid_t w = ::waitpid(pid, &status, WNOHANG);
            if (w == pid) break;
            if (w < 0 && errno != EINTR) break;
            if (Clock::now() >= deadline) {
                result.timed_out = true;
                ::kill(-pid, SIGKILL);
                ::waitpid(pid, &status, 0);
                break;
            }
            ::usleep(1000);
        }
    }
    // Reap stragglers left in the group.
    ::kill(-pid, SIGKILL);

    result.exit_code = decode_status(status);
    result.wall_time = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
    if (truncated) result.output = "[... output truncated ...]\n" + result.output;
    return result;
}

}  // namespace intentrepair::exec
