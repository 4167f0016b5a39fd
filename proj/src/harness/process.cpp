// External candidates: spawn, feed stdin, collect stdout lines.
//
// Whether the candidate is waiting for input is read from /proc: a member of
// the candidate's process group sleeping in read() on our stdin pipe while
// the pipe is empty wants another value.
#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/ioctl.h>
#include <sys/stat.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "harness_internal.hpp"

extern char** environ;

namespace iospec::detail {

namespace {

using Clock = std::chrono::steady_clock;

#if defined(__x86_64__)
constexpr long kReadSyscalls[] = {0, 19};  // read, readv
#elif defined(__aarch64__)
constexpr long kReadSyscalls[] = {63, 65};
#else
constexpr long kReadSyscalls[] = {-1};
#endif

class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { reset(); }
  int get() const { return fd_; }
  void reset(int fd = -1) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = fd;
  }

 private:
  int fd_ = -1;
};

bool make_pipe(Fd& read_end, Fd& write_end) {
  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) return false;
  read_end.reset(fds[0]);
  write_end.reset(fds[1]);
  return true;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

bool fd_is_pipe(long pid, long fd, const std::string& pipe_link) {
  std::error_code ec;
  auto target = std::filesystem::read_symlink("/proc/" + std::to_string(pid) + "/fd/" + std::to_string(fd), ec);
  return !ec && target.string() == pipe_link;
}

bool waiting_on_pipe(long pid, const std::string& pipe_link) {
  const std::string base = "/proc/" + std::to_string(pid);
  std::istringstream sc(slurp(base + "/syscall"));
  std::string nr_text;
  if (sc >> nr_text && nr_text != "running") {
    std::string fd_text;
    sc >> fd_text;
    long nr = 0;
    try {
      nr = std::stol(nr_text);
    } catch (...) {
      return false;
    }
    for (long r : kReadSyscalls) {
      if (nr == r) return fd_is_pipe(pid, std::stol(fd_text, nullptr, 16), pipe_link);
    }
    return false;
  }
  // No syscall file: fall back to the wait channel and stdin.
  return slurp(base + "/wchan").find("pipe_read") != std::string::npos && fd_is_pipe(pid, 0, pipe_link);
}

bool group_waits_on_pipe(pid_t pgid, const std::string& pipe_link) {
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator("/proc", ec)) {
    const std::string name = entry.path().filename().string();
    if (name.empty() || name.find_first_not_of("0123456789") != std::string::npos) continue;
    const std::string stat = slurp(entry.path().string() + "/stat");
    const auto close_paren = stat.rfind(')');
    if (close_paren == std::string::npos) continue;
    std::istringstream fields(stat.substr(close_paren + 1));
    char state = 0;
    long ppid = 0, pgrp = 0;
    if (!(fields >> state >> ppid >> pgrp)) continue;
    if (pgrp != pgid || state != 'S') continue;
    if (waiting_on_pipe(std::stol(name), pipe_link)) return true;
  }
  return false;
}

// Bytes written to the pipe but not yet read by anyone.
int pipe_backlog(int fd) {
  int n = 0;
  if (::ioctl(fd, FIONREAD, &n) != 0) return 0;
  return n;
}

// Keeps SIGPIPE from killing us when a candidate exits with input pending.
class SigpipeBlock {
 public:
  SigpipeBlock() {
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGPIPE);
    pthread_sigmask(SIG_BLOCK, &set, &old_);
  }
  ~SigpipeBlock() {
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGPIPE);
    timespec zero{0, 0};
    while (sigtimedwait(&set, nullptr, &zero) > 0) {
    }
    pthread_sigmask(SIG_SETMASK, &old_, nullptr);
  }

 private:
  sigset_t old_;
};

RunError io_failure(const std::string& what) { return {RunErrorKind::IOFailure, 0, what}; }

class ExternalRun {
 public:
  ExternalRun(const ExternalProgram& prog, std::span<const std::int64_t> feed) : prog_(prog), feed_(feed) {}

  RunOutcome run() {
    if (prog_.command.empty()) return io_failure("empty command");
    if (prog_.timeout_ms <= 0) return io_failure("timeout must be positive");
    const bool inspect = proc_inspection_available();
    if (prog_.pacing == Pacing::Strict && !inspect) return io_failure("strict pacing needs /proc/<pid>/syscall");

    Fd in_r, in_w, out_r, out_w, err_r, err_w;
    if (!make_pipe(in_r, in_w) || !make_pipe(out_r, out_w) || !make_pipe(err_r, err_w)) {
      return io_failure(std::string("pipe: ") + std::strerror(errno));
    }
    struct stat st {};
    ::fstat(in_w.get(), &st);
    pipe_link_ = "pipe:[" + std::to_string(st.st_ino) + "]";

    SigpipeBlock guard;
    if (auto err = spawn(in_r.get(), out_w.get(), err_w.get())) return *err;
    in_r.reset();
    out_w.reset();
    err_w.reset();
    ::fcntl(in_w.get(), F_SETFL, O_NONBLOCK);
    ::fcntl(out_r.get(), F_SETFL, O_NONBLOCK);
    ::fcntl(err_r.get(), F_SETFL, O_NONBLOCK);

    if (prog_.pacing == Pacing::Eager) {
      for (auto v : feed_) pending_ += std::to_string(v) + "\n";
      written_total_ = pending_.size();
    }
    if (!inspect) close_after_write_ = true;

    const auto deadline = Clock::now() + std::chrono::milliseconds(prog_.timeout_ms);
    int idle_ms = 1;
    bool exited = false, out_eof = false, err_eof = false;
    int status = 0;
    std::size_t unconsumed_at_exit = 0;
    while (!(exited && out_eof && err_eof)) {
      if (!exited && ::waitpid(pid_, &status, WNOHANG) == pid_) {
        exited = true;
        unconsumed_at_exit = pending_.size() + static_cast<std::size_t>(pipe_backlog(in_w.get()));
        // Leftover group members would hold the pipes open.
        ::killpg(pid_, SIGKILL);
      }
      if (Clock::now() >= deadline) {
        kill_and_reap(exited);
        return RunError{RunErrorKind::Timeout, 0,
                        "no exit within " + std::to_string(prog_.timeout_ms) + " ms"};
      }
      bool active = flush_pending(in_w);

      pollfd fds[3];
      nfds_t n = 0;
      if (!out_eof) fds[n++] = {out_r.get(), POLLIN, 0};
      if (!err_eof) fds[n++] = {err_r.get(), POLLIN, 0};
      if (!pending_.empty() && in_w.get() >= 0) fds[n++] = {in_w.get(), POLLOUT, 0};
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
      ::poll(fds, n, static_cast<int>(std::max<long long>(0, std::min<long long>(idle_ms, left))));

      if (!out_eof) active |= drain(out_r.get(), out_buf_, out_eof, true);
      if (!err_eof) active |= drain(err_r.get(), err_buf_, err_eof, false);

      if (!exited && !active && inspect && pending_.empty() && in_w.get() >= 0 && pipe_backlog(in_w.get()) == 0 &&
          group_waits_on_pipe(pid_, pipe_link_)) {
        if (prog_.pacing == Pacing::Strict && next_value_ < feed_.size()) {
          const std::int64_t v = feed_[next_value_++];
          observed_.input(v);
          pending_ = std::to_string(v) + "\n";
          active = true;
        } else {
          kill_and_reap(false);
          return RunError{RunErrorKind::ExtraInputRequested, 0,
                          "still reading after " + std::to_string(feed_.size()) + " input(s)"};
        }
      }
      idle_ms = active ? 1 : std::min(idle_ms * 2, 16);
    }
    if (!out_buf_.empty()) emit_line(out_buf_);

    if (WIFSIGNALED(status)) {
      return RunError{RunErrorKind::NonzeroExit, 128 + WTERMSIG(status),
                      "killed by signal " + std::to_string(WTERMSIG(status)) + stderr_tail()};
    }
    if (WEXITSTATUS(status) != 0) {
      return RunError{RunErrorKind::NonzeroExit, WEXITSTATUS(status),
                      "exit code " + std::to_string(WEXITSTATUS(status)) + stderr_tail()};
    }
    if (prog_.pacing == Pacing::Strict) return observed_;

    // Eager: inputs are the lines the candidate took off the pipe.
    Trace t;
    const std::size_t consumed_bytes = written_total_ - std::min(written_total_, unconsumed_at_exit);
    std::size_t offset = 0;
    for (auto v : feed_) {
      if (offset >= consumed_bytes) break;
      t.input(v);
      offset += std::to_string(v).size() + 1;
    }
    for (auto& e : outputs_) t.output(std::move(e));
    return t;
  }

 private:
  static bool proc_inspection_available() {
    static const bool ok = [] {
      std::ifstream probe("/proc/self/syscall");
      std::string s;
      return static_cast<bool>(probe >> s);
    }();
    return ok;
  }

  std::optional<RunError> spawn(int in_fd, int out_fd, int err_fd) {
    posix_spawn_file_actions_t actions;
    posix_spawnattr_t attr;
    posix_spawn_file_actions_init(&actions);
    posix_spawnattr_init(&attr);
    posix_spawn_file_actions_adddup2(&actions, in_fd, 0);
    posix_spawn_file_actions_adddup2(&actions, out_fd, 1);
    posix_spawn_file_actions_adddup2(&actions, err_fd, 2);
    sigset_t none, defaults;
    sigemptyset(&none);
    sigemptyset(&defaults);
    sigaddset(&defaults, SIGPIPE);
    posix_spawnattr_setsigmask(&attr, &none);
    posix_spawnattr_setsigdefault(&attr, &defaults);
    posix_spawnattr_setpgroup(&attr, 0);
    posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP | POSIX_SPAWN_SETSIGMASK | POSIX_SPAWN_SETSIGDEF);

    std::vector<char*> argv;
    argv.push_back(const_cast<char*>(prog_.command.c_str()));
    for (const auto& a : prog_.args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    const int rc = ::posix_spawnp(&pid_, prog_.command.c_str(), &actions, &attr, argv.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    posix_spawnattr_destroy(&attr);
    if (rc != 0) return io_failure("cannot start '" + prog_.command + "': " + std::strerror(rc));
    return std::nullopt;
  }

  bool flush_pending(Fd& in_w) {
    if (in_w.get() < 0) return false;
    bool wrote = false;
    while (!pending_.empty()) {
      const ssize_t n = ::write(in_w.get(), pending_.data(), pending_.size());
      if (n > 0) {
        pending_.erase(0, static_cast<std::size_t>(n));
        wrote = true;
        continue;
      }
      if (n < 0 && errno == EPIPE) pending_.clear();  // nobody reads stdin any more
      break;
    }
    if (pending_.empty() && close_after_write_) in_w.reset();
    return wrote;
  }

  bool drain(int fd, std::string& buf, bool& eof, bool lines) {
    bool got = false;
    char chunk[4096];
    while (true) {
      const ssize_t n = ::read(fd, chunk, sizeof chunk);
      if (n > 0) {
        got = true;
        if (lines || buf.size() < 4096) buf.append(chunk, static_cast<std::size_t>(n));
        continue;
      }
      if (n == 0) eof = true;
      break;
    }
    if (lines) {
      std::size_t nl;
      while ((nl = buf.find('\n')) != std::string::npos) {
        emit_line(buf.substr(0, nl));
        buf.erase(0, nl + 1);
      }
    }
    return got;
  }

  void emit_line(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (prog_.pacing == Pacing::Strict) {
      observed_.output(line);
    } else {
      outputs_.push_back(std::move(line));
    }
  }

  void kill_and_reap(bool exited) {
    ::killpg(pid_, SIGKILL);
    if (!exited) {
      int status;
      ::waitpid(pid_, &status, 0);
    }
  }

  std::string stderr_tail() const {
    if (err_buf_.empty()) return "";
    std::string tail = err_buf_.substr(0, 400);
    while (!tail.empty() && (tail.back() == '\n' || tail.back() == '\r')) tail.pop_back();
    return "; stderr: " + tail;
  }

  const ExternalProgram& prog_;
  std::span<const std::int64_t> feed_;
  pid_t pid_ = -1;
  std::string pipe_link_;
  std::string pending_;
  std::size_t written_total_ = 0;
  std::size_t next_value_ = 0;
  bool close_after_write_ = false;
  std::string out_buf_, err_buf_;
  std::vector<std::string> outputs_;
  Trace observed_;
};

}  // namespace

RunOutcome run_external(const ExternalProgram& prog, std::span<const std::int64_t> feed) {
  return ExternalRun(prog, feed).run();
}

}  // namespace iospec::detail
