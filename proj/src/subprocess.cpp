#include "accmine/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>

namespace accmine::subprocess {

RunResult run_process(const std::vector<std::string>& argv, double timeout_seconds) {
  if (argv.empty()) throw std::invalid_argument("run_process: empty argv");

  int pipefd[2];
  if (::pipe(pipefd) != 0) throw std::runtime_error("pipe() failed");

  auto start = std::chrono::steady_clock::now();
  pid_t pid = ::fork();
  if (pid < 0) {
    ::close(pipefd[0]);
    ::close(pipefd[1]);
    throw std::runtime_error("fork() failed");
  }

  if (pid == 0) {
    ::close(pipefd[0]);
    ::dup2(pipefd[1], STDOUT_FILENO);
    ::dup2(pipefd[1], STDERR_FILENO);
    ::close(pipefd[1]);
    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);
    ::execvp(cargv[0], cargv.data());
    ::fprintf(stderr, "exec failed: %s: %s\n", cargv[0], ::strerror(errno));
    ::_exit(127);
  }

  ::close(pipefd[1]);
  RunResult res;
  auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(timeout_seconds));
  char buf[4096];
  bool open = true;
  while (open) {
    auto now = std::chrono::steady_clock::now();
    int wait_ms = 0;
    if (now < deadline) {
      wait_ms = static_cast<int>(
          std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count());
      if (wait_ms < 1) wait_ms = 1;
    } else {
      res.timed_out = true;
      ::kill(pid, SIGKILL);
      break;
    }
    struct pollfd pfd{pipefd[0], POLLIN, 0};
    int rc = ::poll(&pfd, 1, wait_ms);
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (rc == 0) continue;  // deadline handled at loop top
    ssize_t n = ::read(pipefd[0], buf, sizeof(buf));
    if (n > 0)
      res.output.append(buf, static_cast<size_t>(n));
    else
      open = false;
  }
  // Drain whatever is left after a kill.
  if (res.timed_out) {
    ::fcntl(pipefd[0], F_SETFL, O_NONBLOCK);
    ssize_t n;
    while ((n = ::read(pipefd[0], buf, sizeof(buf))) > 0)
      res.output.append(buf, static_cast<size_t>(n));
  }
  ::close(pipefd[0]);

  int status = 0;
  ::waitpid(pid, &status, 0);
  if (WIFEXITED(status))
    res.exit_code = WEXITSTATUS(status);
  else if (WIFSIGNALED(status))
    res.exit_code = 128 + WTERMSIG(status);
  res.duration = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return res;
}

}  // namespace accmine::subprocess
