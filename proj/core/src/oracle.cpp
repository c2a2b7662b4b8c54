#include "rice/oracle.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstring>
#include <utility>

#include "rice/decimal.hpp"
#include "rice/errors.hpp"
#include "rice/eval.hpp"

namespace rice {

double rule_label(const FeatureVector& f) {
  int lights = (f.rd == 1.0) + (f.am == 1.0) + (f.gr == 1.0);
  if (lights != 1)
    throw IrregularStateError("the rule needs exactly one light on");
  if (f.rd == 1.0) return f.dist < 0.6 ? 0.0 : 1.0;
  if (f.am == 1.0) return (f.dist >= 0.1 && f.dist <= 0.8) ? 0.0 : 1.0;
  return 1.0;
}

ProgramOracle::ProgramOracle(Program program, Valence valence)
    : program_(std::move(program)), valence_(std::move(valence)) {}

double ProgramOracle::predict(const FeatureVector& f) {
  Binding input;
  for (const auto& name : valence_.in_names()) {
    const std::string& n = name.str();
    if (n == "rd")
      input.set(name, f.rd);
    else if (n == "am")
      input.set(name, f.am);
    else if (n == "gr")
      input.set(name, f.gr);
    else if (n == "dist")
      input.set(name, f.dist);
    else
      throw SignatureError("program oracle cannot fill in-name '" + n + "'");
  }
  auto result = evaluate(program_, input, valence_);
  if (!result)
    throw IncompleteExplanationError("program has no output for the queried input");
  return result->at(ArgName("go"));
}

struct ExternalProcessOracle::Impl {
  pid_t pid = -1;
  int to_child = -1;
  int from_child = -1;
  double timeout_seconds;
  std::string buffer;

  ~Impl() {
    if (to_child >= 0) {
      // Best effort polite shutdown.
      const char quit[] = "QUIT\n";
      ssize_t ignored = write(to_child, quit, sizeof(quit) - 1);
      (void)ignored;
      close(to_child);
    }
    if (from_child >= 0) close(from_child);
    if (pid > 0) {
      int status = 0;
      for (int i = 0; i < 50; ++i) {
        pid_t r = waitpid(pid, &status, WNOHANG);
        if (r == pid) {
          // The shell may leave grandchildren behind; sweep the group.
          kill(-pid, SIGKILL);
          return;
        }
        usleep(10'000);
      }
      kill(-pid, SIGKILL);
      waitpid(pid, &status, 0);
    }
  }

  std::string read_line() {
    while (true) {
      auto nl = buffer.find('\n');
      if (nl != std::string::npos) {
        std::string line = buffer.substr(0, nl);
        buffer.erase(0, nl + 1);
        return line;
      }
      struct pollfd pfd {};
      pfd.fd = from_child;
      pfd.events = POLLIN;
      int rc = poll(&pfd, 1, static_cast<int>(timeout_seconds * 1000));
      if (rc == 0) throw OracleIoError("oracle process timed out");
      if (rc < 0) throw OracleIoError("poll failed while waiting for the oracle");
      char chunk[256];
      ssize_t n = read(from_child, chunk, sizeof(chunk));
      if (n <= 0) throw OracleIoError("oracle process closed its output");
      buffer.append(chunk, static_cast<std::size_t>(n));
    }
  }
};

ExternalProcessOracle::ExternalProcessOracle(const std::string& command, double timeout_seconds)
    : impl_(std::make_unique<Impl>()) {
  // A write to a dead child must surface as OracleIoError, not SIGPIPE.
  static const bool sigpipe_ignored = [] {
    signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)sigpipe_ignored;
  impl_->timeout_seconds = timeout_seconds;

  int in_pipe[2];   // parent -> child
  int out_pipe[2];  // child -> parent
  if (pipe(in_pipe) != 0) throw OracleIoError("pipe failed");
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw OracleIoError("pipe failed");
  }

  pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    throw OracleIoError("fork failed");
  }
  if (pid == 0) {
    // Own process group so teardown can reap the shell's children too.
    setpgid(0, 0);
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  setpgid(pid, pid);  // mirror of the child's call; loser of the race is a no-op
  impl_->pid = pid;
  impl_->to_child = in_pipe[1];
  impl_->from_child = out_pipe[0];
}

ExternalProcessOracle::~ExternalProcessOracle() = default;

double ExternalProcessOracle::predict(const FeatureVector& f) {
  std::string request = format_constant(f.rd) + " " + format_constant(f.am) + " " +
                        format_constant(f.gr) + " " + format_constant(f.dist) + "\n";
  const char* data = request.data();
  std::size_t left = request.size();
  while (left > 0) {
    ssize_t n = write(impl_->to_child, data, left);
    if (n <= 0) throw OracleIoError("cannot write to the oracle process");
    data += n;
    left -= static_cast<std::size_t>(n);
  }
  std::string line = impl_->read_line();
  if (!line.empty() && line.back() == '\r') line.pop_back();
  double value = 0.0;
  try {
    value = parse_number(line);
  } catch (const ParseError&) {
    throw OracleIoError("oracle replied with a non-numeric line: '" + line + "'");
  }
  if (!(value >= 0.0 && value <= 1.0))
    throw OracleIoError("oracle reply " + line + " is outside [0,1]");
  return value;
}

}  // namespace rice
