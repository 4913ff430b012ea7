#include "cpath/oracle/command_oracle.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <stdexcept>

#include "json.hpp"

extern char** environ;

namespace cpath::oracle {
namespace {

// Owns a temporary file holding the PDF under test.
class TempPdf {
 public:
  explicit TempPdf(std::string_view bytes) {
    std::string templ = (std::filesystem::temp_directory_path() / "cpath-oracle-XXXXXX.pdf").string();
    int fd = mkstemps(templ.data(), 4);
    if (fd < 0) {
      throw Error(ErrorCode::kIo, "cannot create temporary PDF: " + std::string(std::strerror(errno)));
    }
    path_ = templ;
    size_t off = 0;
    while (off < bytes.size()) {
      ssize_t n = write(fd, bytes.data() + off, bytes.size() - off);
      if (n < 0) {
        if (errno == EINTR) continue;
        close(fd);
        throw Error(ErrorCode::kIo, "cannot write temporary PDF " + path_);
      }
      off += static_cast<size_t>(n);
    }
    close(fd);
  }
  ~TempPdf() { unlink(path_.c_str()); }
  TempPdf(const TempPdf&) = delete;
  TempPdf& operator=(const TempPdf&) = delete;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

Verdict ParseCommandOutput(std::string_view output) {
  using nlohmann::json;
  auto violation = [](const std::string& what) {
    return OracleError(OracleFailure::kProtocolViolation, what);
  };
  json doc;
  try {
    doc = json::parse(output);
  } catch (const json::parse_error&) {
    throw violation("stdout is not a single JSON object");
  }
  if (!doc.is_object() || !doc.contains("verdict") || !doc["verdict"].is_string() ||
      !doc.contains("signatures") || !doc["signatures"].is_array()) {
    throw violation("expected {\"verdict\": ..., \"signatures\": [...]}");
  }
  Verdict v;
  const std::string verdict = doc["verdict"].get<std::string>();
  if (verdict == "malicious") {
    v.outcome = Outcome::kMalicious;
  } else if (verdict != "benign") {
    throw violation("unknown verdict \"" + verdict + "\"");
  }
  for (const auto& s : doc["signatures"]) {
    if (!s.is_string()) throw violation("signatures must be strings");
    v.signatures.push_back(s.get<std::string>());
  }
  if (v.malicious() != !v.signatures.empty()) {
    throw violation("verdict disagrees with signature list");
  }
  return v;
}

CommandOracle::CommandOracle(std::string program, std::chrono::milliseconds timeout,
                             size_t max_parallelism)
    : program_(std::move(program)), timeout_(timeout), max_parallelism_(max_parallelism) {
  if (program_.empty()) throw std::invalid_argument("command oracle needs a program");
  if (timeout_.count() <= 0) throw std::invalid_argument("command oracle timeout must be positive");
  if (max_parallelism_ == 0) throw std::invalid_argument("command oracle parallelism must be >= 1");
}

Verdict CommandOracle::Evaluate(std::string_view pdf) {
  const auto start = std::chrono::steady_clock::now();
  TempPdf file(pdf);

  int out_pipe[2];
  if (pipe2(out_pipe, O_CLOEXEC) != 0) {
    throw Error(ErrorCode::kIo, "pipe: " + std::string(std::strerror(errno)));
  }
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);
  posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);

  std::string arg0 = program_;
  std::string arg1 = file.path();
  char* argv[] = {arg0.data(), arg1.data(), nullptr};
  pid_t pid = 0;
  const int rc = posix_spawnp(&pid, program_.c_str(), &actions, nullptr, argv, environ);
  posix_spawn_file_actions_destroy(&actions);
  close(out_pipe[1]);
  if (rc != 0) {
    close(out_pipe[0]);
    throw OracleError(OracleFailure::kProtocolViolation,
                      "cannot run " + program_ + ": " + std::strerror(rc));
  }

  std::string output;
  bool timed_out = false;
  const auto deadline = start + timeout_;
  char buf[4096];
  while (true) {
    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd pfd{out_pipe[0], POLLIN, 0};
    const int ready = poll(&pfd, 1, static_cast<int>(std::min<int64_t>(remaining.count(), 1 << 30)));
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (ready == 0) continue;
    const ssize_t n = read(out_pipe[0], buf, sizeof(buf));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    output.append(buf, static_cast<size_t>(n));
  }
  close(out_pipe[0]);

  int status = 0;
  if (timed_out) {
    kill(pid, SIGKILL);
    waitpid(pid, &status, 0);
    throw OracleError(OracleFailure::kTimeout,
                      program_ + " exceeded " + std::to_string(timeout_.count()) + " ms");
  }
  // Output is closed; the child may still be running, so keep the deadline.
  while (true) {
    const pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (done < 0 && errno != EINTR) break;
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      throw OracleError(OracleFailure::kTimeout,
                        program_ + " exceeded " + std::to_string(timeout_.count()) + " ms");
    }
    usleep(1000);
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw OracleError(OracleFailure::kProtocolViolation,
                      program_ + " exited with status " +
                          (WIFEXITED(status) ? std::to_string(WEXITSTATUS(status))
                                             : "signal " + std::to_string(WTERMSIG(status))));
  }
  Verdict v = ParseCommandOutput(output);
  v.latency = std::chrono::steady_clock::now() - start;
  return v;
}

std::string CommandOracle::Describe() const {
  return "command(" + program_ + ", timeout " + std::to_string(timeout_.count()) + " ms)";
}

}  // namespace cpath::oracle
