#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstring>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "vipr/smtgen.hpp"

extern char** environ;

namespace vipr {

namespace {

class Pipe {
 public:
  Pipe() {
    if (::pipe2(fds_, O_CLOEXEC) != 0) throw SolverSpawnError(std::string("pipe: ") + std::strerror(errno));
  }
  Pipe(const Pipe&) = delete;
  Pipe& operator=(const Pipe&) = delete;
  ~Pipe() {
    close_read();
    close_write();
  }
  int read_end() const { return fds_[0]; }
  int write_end() const { return fds_[1]; }
  void close_read() { reset(fds_[0]); }
  void close_write() { reset(fds_[1]); }

 private:
  static void reset(int& fd) {
    if (fd >= 0) ::close(fd);
    fd = -1;
  }
  int fds_[2] = {-1, -1};
};

struct RunResult {
  bool timed_out = false;
  bool cancelled = false;
  int status = 0;
  std::string out;
  std::string err;
};

RunResult run_process(const std::vector<std::string>& args, std::chrono::seconds timeout,
                      const std::atomic<bool>& cancel) {
  Pipe out_pipe;
  Pipe err_pipe;
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, out_pipe.write_end(), STDOUT_FILENO);
  posix_spawn_file_actions_adddup2(&actions, err_pipe.write_end(), STDERR_FILENO);
  posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);

  std::vector<char*> argv;
  for (const std::string& a : args) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);

  pid_t pid = 0;
  const int rc = posix_spawnp(&pid, argv[0], &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) throw SolverSpawnError("cannot start '" + args.front() + "': " + std::strerror(rc));
  out_pipe.close_write();
  err_pipe.close_write();

  RunResult result;
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  pollfd fds[2] = {{out_pipe.read_end(), POLLIN, 0}, {err_pipe.read_end(), POLLIN, 0}};
  std::string* sinks[2] = {&result.out, &result.err};
  int open_fds = 2;
  char buffer[4096];
  while (open_fds > 0) {
    if (cancel.load()) {
      result.cancelled = true;
      break;
    }
    if (std::chrono::steady_clock::now() >= deadline) {
      result.timed_out = true;
      break;
    }
    const int ready = ::poll(fds, 2, 50);
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (int i = 0; i < 2; ++i) {
      if (fds[i].fd < 0 || fds[i].revents == 0) continue;
      const ssize_t n = ::read(fds[i].fd, buffer, sizeof buffer);
      if (n > 0) {
        sinks[i]->append(buffer, static_cast<std::size_t>(n));
      } else if (n == 0 || errno != EINTR) {
        fds[i].fd = -1;
        --open_fds;
      }
    }
  }
  if (result.timed_out || result.cancelled) ::kill(pid, SIGKILL);
  while (::waitpid(pid, &result.status, 0) < 0 && errno == EINTR) {
  }
  return result;
}

std::string last_line_token(const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  std::string last;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) last = line;
  }
  std::istringstream words(last);
  std::string token;
  words >> token;
  return token;
}

}  // namespace

const char* outcome_name(Outcome outcome) {
  switch (outcome) {
    case Outcome::Sat:
      return "sat";
    case Outcome::Unsat:
      return "unsat";
    case Outcome::SolverError:
      return "error";
    case Outcome::Timeout:
      return "timeout";
    case Outcome::Cancelled:
      return "cancelled";
  }
  return "?";
}

std::vector<std::string> solver_argv(const std::string& command_template, const std::string& file) {
  std::vector<std::string> words;
  std::string current;
  bool in_word = false;
  char quote = 0;
  for (char ch : command_template) {
    if (quote != 0) {
      if (ch == quote) {
        quote = 0;
      } else {
        current += ch;
      }
    } else if (ch == '\'' || ch == '"') {
      quote = ch;
      in_word = true;
    } else if (ch == ' ' || ch == '\t' || ch == '\n') {
      if (in_word) words.push_back(current);
      current.clear();
      in_word = false;
    } else {
      current += ch;
      in_word = true;
    }
  }
  if (in_word) words.push_back(current);

  bool substituted = false;
  for (std::string& w : words) {
    for (auto pos = w.find("{}"); pos != std::string::npos; pos = w.find("{}", pos + file.size())) {
      w.replace(pos, 2, file);
      substituted = true;
    }
  }
  if (!substituted) words.push_back(file);
  return words;
}

DispatchResult dispatch(const std::vector<std::filesystem::path>& files, const std::string& solver_command,
                        unsigned jobs, std::chrono::seconds timeout) {
  if (solver_argv(solver_command, "").front().empty()) throw SolverSpawnError("empty solver command");

  DispatchResult result;
  result.files.resize(files.size());
  for (std::size_t i = 0; i < files.size(); ++i) result.files[i].path = files[i];

  std::atomic<std::size_t> next{0};
  std::atomic<bool> cancel{false};
  std::mutex error_mutex;
  std::exception_ptr spawn_error;

  const auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1)) {
      FileOutcome& entry = result.files[i];
      if (cancel.load()) continue;
      const auto start = std::chrono::steady_clock::now();
      RunResult run;
      try {
        run = run_process(solver_argv(solver_command, files[i].string()), timeout, cancel);
      } catch (const SolverSpawnError&) {
        const std::lock_guard lock(error_mutex);
        if (!spawn_error) spawn_error = std::current_exception();
        cancel.store(true);
        continue;
      }
      entry.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
      if (run.cancelled) continue;
      if (run.timed_out) {
        entry.outcome = Outcome::Timeout;
        entry.detail = "no answer within " + std::to_string(timeout.count()) + " s";
        continue;
      }
      const std::string token = last_line_token(run.out);
      if (token == "sat") {
        entry.outcome = Outcome::Sat;
      } else if (token == "unsat") {
        entry.outcome = Outcome::Unsat;
        cancel.store(true);
      } else {
        entry.outcome = Outcome::SolverError;
        entry.detail = token == "unknown" ? "solver answered unknown" : run.out + run.err;
        if (entry.detail.empty()) entry.detail = "no output, wait status " + std::to_string(run.status);
      }
    }
  };

  const unsigned pool_size = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::max<std::size_t>(files.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < pool_size; ++t) pool.emplace_back(worker);
  }
  if (spawn_error) std::rethrow_exception(spawn_error);

  const auto has = [&](Outcome o) {
    return std::any_of(result.files.begin(), result.files.end(), [o](const FileOutcome& f) { return f.outcome == o; });
  };
  if (has(Outcome::Unsat)) {
    result.aggregate = Aggregate::Invalid;
  } else if (std::all_of(result.files.begin(), result.files.end(),
                         [](const FileOutcome& f) { return f.outcome == Outcome::Sat; })) {
    result.aggregate = Aggregate::Valid;
  } else {
    result.aggregate = Aggregate::Error;
  }
  return result;
}

}  // namespace vipr
