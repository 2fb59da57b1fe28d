#include "robusteval/adapter.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace robusteval {

namespace {

using Clock = std::chrono::steady_clock;

void ignore_sigpipe_once() {
  static std::once_flag flag;
  std::call_once(flag, [] { ::signal(SIGPIPE, SIG_IGN); });
}

struct Fd {
  int fd = -1;
  ~Fd() { reset(); }
  void reset() {
    if (fd >= 0) {
      ::close(fd);
      fd = -1;
    }
  }
  int release() {
    const int out = fd;
    fd = -1;
    return out;
  }
};

struct Child {
  pid_t pid = -1;
  Fd stdin_fd;
  Fd stdout_fd;
};

[[noreturn]] void child_exec(const std::vector<std::string>& command, int in_fd, int out_fd,
                             int err_fd) {
  // Own process group, so a timeout kill also reaps anything the adapter
  // spawned underneath itself.
  ::setpgid(0, 0);
  ::dup2(in_fd, STDIN_FILENO);
  ::dup2(out_fd, STDOUT_FILENO);
  std::vector<char*> argv;
  argv.reserve(command.size() + 1);
  for (const std::string& arg : command) {
    argv.push_back(const_cast<char*>(arg.c_str()));
  }
  argv.push_back(nullptr);
  ::execvp(argv[0], argv.data());
  // Report the exec errno through the CLOEXEC pipe.
  const int code = errno;
  ssize_t ignored = ::write(err_fd, &code, sizeof(code));
  (void)ignored;
  ::_exit(127);
}

Child spawn(const AdapterConfig& cfg) {
  int to_child[2];
  int from_child[2];
  int exec_err[2];
  if (::pipe(to_child) != 0 || ::pipe(from_child) != 0 || ::pipe(exec_err) != 0) {
    throw SpawnError("pipe() failed: " + std::string(std::strerror(errno)));
  }
  ::fcntl(exec_err[1], F_SETFD, FD_CLOEXEC);

  const pid_t pid = ::fork();
  if (pid < 0) {
    throw SpawnError("fork() failed: " + std::string(std::strerror(errno)));
  }
  if (pid == 0) {
    ::close(to_child[1]);
    ::close(from_child[0]);
    ::close(exec_err[0]);
    child_exec(cfg.command, to_child[0], from_child[1], exec_err[1]);
  }

  ::close(to_child[0]);
  ::close(from_child[1]);
  ::close(exec_err[1]);
  ::setpgid(pid, pid);  // no-op if the child got there first

  Child child;
  child.pid = pid;
  child.stdin_fd.fd = to_child[1];
  child.stdout_fd.fd = from_child[0];

  // EOF on the error pipe means exec succeeded.
  int exec_errno = 0;
  const ssize_t n = ::read(exec_err[0], &exec_errno, sizeof(exec_errno));
  ::close(exec_err[0]);
  if (n > 0) {
    int status = 0;
    ::waitpid(pid, &status, 0);
    throw SpawnError("cannot start adapter \"" + cfg.name + "\": " + cfg.command[0] +
                             ": " + std::strerror(exec_errno));
  }
  return child;
}

void set_nonblocking(int fd) {
  const int flags = ::fcntl(fd, F_GETFL, 0);
  ::fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

// Writes the whole string before the deadline; false on EPIPE/closed child
// or timeout.
bool write_with_deadline(int fd, const std::string& data, Clock::time_point deadline) {
  std::size_t written = 0;
  while (written < data.size()) {
    const auto remaining =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (remaining.count() <= 0) {
      return false;
    }
    struct pollfd pfd{fd, POLLOUT, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(remaining.count()));
    if (ready <= 0) {
      if (ready < 0 && errno == EINTR) {
        continue;
      }
      return false;
    }
    const ssize_t n = ::write(fd, data.data() + written, data.size() - written);
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) {
        continue;
      }
      return false;
    }
    written += static_cast<std::size_t>(n);
  }
  return true;
}

// Incremental block framing: lines accumulate until a blank line closes the
// block. Carriage returns are dropped before framing.
class BlockReader {
 public:
  // Feeds raw bytes; returns completed blocks (without the blank separator).
  std::vector<std::string> feed(const char* data, std::size_t size) {
    std::vector<std::string> blocks;
    for (std::size_t i = 0; i < size; ++i) {
      const char c = data[i];
      if (c == '\r') {
        continue;
      }
      if (c != '\n') {
        line_ += c;
        continue;
      }
      if (line_.empty()) {
        if (!block_.empty()) {
          blocks.push_back(std::move(block_));
          block_.clear();
        }
        // A blank line with no open block is skipped.
      } else {
        block_ += line_;
        block_ += '\n';
        line_.clear();
      }
    }
    return blocks;
  }

  // Called at EOF: an unterminated final block still counts.
  std::vector<std::string> finish() {
    std::vector<std::string> blocks;
    if (!line_.empty()) {
      block_ += line_;
      block_ += '\n';
      line_.clear();
    }
    if (!block_.empty()) {
      blocks.push_back(std::move(block_));
      block_.clear();
    }
    return blocks;
  }

 private:
  std::string line_;
  std::string block_;
};

}  // namespace

std::vector<ParseOutcome> run_external(const AdapterConfig& cfg,
                                       const std::vector<Sentence>& sentences) {
  if (cfg.command.empty()) {
    throw std::invalid_argument("adapter \"" + cfg.name + "\" has an empty command");
  }
  if (!(cfg.timeout_per_sentence > 0)) {
    throw std::invalid_argument("adapter \"" + cfg.name + "\" has a non-positive timeout");
  }
  if (sentences.empty()) {
    throw std::invalid_argument("no sentences to parse");
  }
  ignore_sigpipe_once();

  std::vector<std::string> lines;
  lines.reserve(sentences.size());
  for (const Sentence& s : sentences) {
    lines.push_back(detokenize(s) + "\n");
  }

  Child child = spawn(cfg);
  set_nonblocking(child.stdout_fd.fd);

  const auto timeout_ms =
      std::chrono::milliseconds(static_cast<long>(cfg.timeout_per_sentence * 1000.0));

  std::atomic<bool> stop_writer{false};
  std::thread writer;
  if (cfg.batch) {
    std::string all;
    for (const std::string& line : lines) {
      all += line;
    }
    set_nonblocking(child.stdin_fd.fd);
    // The writer owns stdin and closes it when done, so adapters that wait
    // for end of input get their EOF while we are still reading.
    const int fd = child.stdin_fd.release();
    writer = std::thread([fd, all = std::move(all), &stop_writer] {
      std::size_t written = 0;
      while (written < all.size() && !stop_writer.load()) {
        struct pollfd pfd{fd, POLLOUT, 0};
        const int ready = ::poll(&pfd, 1, 100);
        if (ready < 0 && errno != EINTR) {
          break;
        }
        if (ready <= 0) {
          continue;
        }
        const ssize_t n = ::write(fd, all.data() + written, all.size() - written);
        if (n < 0) {
          if (errno == EINTR || errno == EAGAIN) {
            continue;
          }
          break;  // child went away; the reader reports it
        }
        written += static_cast<std::size_t>(n);
      }
      ::close(fd);
    });
  }

  const std::size_t n = sentences.size();
  std::vector<ParseOutcome> outcomes;
  outcomes.reserve(n);

  BlockReader framing;
  std::string fail_rest;  // reason applied to every unanswered sentence
  auto deadline = Clock::now() + timeout_ms;

  bool sent_current = false;
  while (outcomes.size() < n && fail_rest.empty()) {
    if (!cfg.batch && !sent_current) {
      if (!write_with_deadline(child.stdin_fd.fd, lines[outcomes.size()], deadline)) {
        fail_rest = "process exited";
        break;
      }
      sent_current = true;
    }

    const auto remaining =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (remaining.count() <= 0) {
      fail_rest = "timeout";
      break;
    }
    struct pollfd pfd{child.stdout_fd.fd, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(remaining.count()));
    if (ready < 0) {
      if (errno == EINTR) {
        continue;
      }
      fail_rest = "process exited";
      break;
    }
    if (ready == 0) {
      fail_rest = "timeout";
      break;
    }

    char buf[4096];
    const ssize_t got = ::read(child.stdout_fd.fd, buf, sizeof(buf));
    if (got < 0) {
      if (errno == EINTR || errno == EAGAIN) {
        continue;
      }
      fail_rest = "process exited";
      break;
    }

    std::vector<std::string> blocks =
        got == 0 ? framing.finish() : framing.feed(buf, static_cast<std::size_t>(got));
    for (std::string& block : blocks) {
      if (outcomes.size() >= n) {
        break;  // surplus output is ignored
      }
      outcomes.push_back(read_conll_block(block, cfg.mode));
      deadline = Clock::now() + timeout_ms;
      sent_current = false;
    }
    if (got == 0 && outcomes.size() < n) {
      fail_rest = "process exited";
      break;
    }
  }

  if (!fail_rest.empty()) {
    while (outcomes.size() < n) {
      outcomes.push_back(ParseOutcome::failed(fail_rest));
    }
    ::kill(-child.pid, SIGKILL);
  }

  stop_writer.store(true);
  if (writer.joinable()) {
    writer.join();
  }
  child.stdin_fd.reset();

  // Give a finished child a moment to exit on its own, then make sure.
  int status = 0;
  const auto reap_deadline = Clock::now() + std::chrono::milliseconds(500);
  for (;;) {
    const pid_t reaped = ::waitpid(child.pid, &status, WNOHANG);
    if (reaped == child.pid || reaped < 0) {
      break;
    }
    if (Clock::now() >= reap_deadline) {
      ::kill(-child.pid, SIGKILL);
      ::waitpid(child.pid, &status, 0);
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }

  return outcomes;
}

}  // namespace robusteval
