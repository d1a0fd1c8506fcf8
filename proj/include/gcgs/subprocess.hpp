#pragma once

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <string>

#include "gcgs/errors.hpp"

namespace gcgs {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr, interleaved
  bool timed_out = false;
};

// Runs `command` under /bin/sh with a wall-clock deadline. The child gets its
// own process group so a timeout kills the whole tree.
inline RunResult run_command(const std::string& command, double timeout_seconds) {
  int fds[2];
  if (pipe(fds) != 0) throw SandboxError("pipe() failed");

  pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    throw SandboxError("fork() failed");
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(fds[1], STDOUT_FILENO);
    dup2(fds[1], STDERR_FILENO);
    close(fds[0]);
    close(fds[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), (char*)nullptr);
    _exit(127);
  }

  close(fds[1]);
  RunResult result;
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration<double>(timeout_seconds);
  char buf[4096];
  while (true) {
    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) {
      result.timed_out = true;
      kill(-pid, SIGKILL);
      break;
    }
    pollfd pfd{fds[0], POLLIN, 0};
    int rc = poll(&pfd, 1, static_cast<int>(remaining.count()));
    if (rc == 0) continue;  // re-check deadline
    if (rc < 0) break;
    ssize_t n = read(fds[0], buf, sizeof buf);
    if (n <= 0) break;  // EOF or error
    result.output.append(buf, static_cast<std::size_t>(n));
  }
  // drain after a kill so the child can exit
  while (true) {
    ssize_t n = read(fds[0], buf, sizeof buf);
    if (n <= 0) break;
    if (!result.timed_out) result.output.append(buf, static_cast<std::size_t>(n));
  }
  close(fds[0]);

  int status = 0;
  waitpid(pid, &status, 0);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  else if (WIFSIGNALED(status)) result.exit_code = 128 + WTERMSIG(status);
  return result;
}

}  // namespace gcgs
