#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <sstream>

#include "rlfgen/cad.h"
#include "rlfgen/realqe.h"
#include "rlfgen/smtlib.h"

namespace rlfgen {

namespace {

std::string resolve_solver(const SolverConfig& config) {
  std::string name = config.path;
  if (name.empty()) {
    const char* env = std::getenv("RLFGEN_SMT_SOLVER");
    name = env && *env ? env : "z3";
  }
  if (name.find('/') != std::string::npos) return access(name.c_str(), X_OK) == 0 ? name : "";
  const char* path = std::getenv("PATH");
  std::istringstream dirs(path ? path : "");
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) continue;
    const std::string candidate = dir + "/" + name;
    if (access(candidate.c_str(), X_OK) == 0) return candidate;
  }
  return "";
}

enum class RunStatus { kSat, kUnsat, kUnknown, kUnavailable, kTimeout, kError };

struct RunResult {
  RunStatus status;
  std::string output;
};

RunResult run_solver(const std::string& script, const SolverConfig& config,
                     std::chrono::milliseconds budget) {
  const std::string exe = resolve_solver(config);
  if (exe.empty()) return {RunStatus::kUnavailable, ""};
  int input[2];
  int output[2];
  if (socketpair(AF_UNIX, SOCK_STREAM, 0, input) != 0) return {RunStatus::kError, "socketpair"};
  if (pipe(output) != 0) {
    close(input[0]);
    close(input[1]);
    return {RunStatus::kError, "pipe"};
  }
  std::vector<std::string> args{exe};
  args.insert(args.end(), config.args.begin(), config.args.end());
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);
  const pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {input[0], input[1], output[0], output[1]}) close(fd);
    return {RunStatus::kError, "fork"};
  }
  if (pid == 0) {
    dup2(input[1], STDIN_FILENO);
    dup2(output[1], STDOUT_FILENO);
    const int devnull = open("/dev/null", O_WRONLY);
    if (devnull >= 0) dup2(devnull, STDERR_FILENO);
    for (int fd : {input[0], input[1], output[0], output[1]}) close(fd);
    execv(exe.c_str(), argv.data());
    _exit(127);
  }
  close(input[1]);
  close(output[1]);
  size_t sent = 0;
  while (sent < script.size()) {
    const ssize_t n = send(input[0], script.data() + sent, script.size() - sent, MSG_NOSIGNAL);
    if (n <= 0) break;
    sent += static_cast<size_t>(n);
  }
  shutdown(input[0], SHUT_WR);
  const auto deadline = std::chrono::steady_clock::now() + budget;
  std::string text;
  bool timed_out = false;
  char buf[4096];
  while (true) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd pfd{output[0], POLLIN, 0};
    const int r = poll(&pfd, 1, static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (r < 0 && errno != EINTR) break;
    if (r <= 0) continue;
    const ssize_t n = read(output[0], buf, sizeof buf);
    if (n <= 0) break;
    text.append(buf, static_cast<size_t>(n));
  }
  if (timed_out) kill(pid, SIGKILL);
  close(input[0]);
  close(output[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  if (timed_out) return {RunStatus::kTimeout, text};
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127) return {RunStatus::kUnavailable, text};
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    if (line == "sat") return {RunStatus::kSat, text};
    if (line == "unsat") return {RunStatus::kUnsat, text};
    if (line == "unknown" || line == "timeout") return {RunStatus::kUnknown, text};
  }
  return {RunStatus::kError, text};
}

}  // namespace

bool solver_available(const SolverConfig& config) { return !resolve_solver(config).empty(); }

Verdict smt_decide(const Formula& f, const SolverConfig& config, std::chrono::milliseconds budget) {
  if (!free_variables(f).empty()) throw Error("smt_decide needs a closed formula");
  const PrenexForm p = prenex(f);
  bool all_universal = true;
  bool all_existential = true;
  for (const auto& b : p.prefix) {
    (b.universal ? all_existential : all_universal) = false;
  }
  std::string script;
  bool negated = false;
  if (all_universal) {
    script = to_smtlib(simplify(Formula::negation(p.matrix)), SmtLogic::kQfNra);
    negated = true;
  } else if (all_existential) {
    script = to_smtlib(p.matrix, SmtLogic::kQfNra);
  } else {
    script = to_smtlib(from_prenex(p), SmtLogic::kNra);
  }
  const RunResult r = run_solver(script, config, budget);
  Verdict v;
  v.backend = "smt";
  switch (r.status) {
    case RunStatus::kSat:
      v.truth = negated ? Truth::kFalse : Truth::kTrue;
      break;
    case RunStatus::kUnsat:
      v.truth = negated ? Truth::kTrue : Truth::kFalse;
      break;
    case RunStatus::kUnavailable:
      v.reason = UnknownReason::kSolverUnavailable;
      v.detail = "no SMT solver found";
      break;
    case RunStatus::kTimeout:
      v.reason = UnknownReason::kTimeout;
      v.detail = "solver exceeded " + std::to_string(budget.count()) + " ms";
      break;
    case RunStatus::kUnknown:
    case RunStatus::kError:
      v.reason = UnknownReason::kSolverUnknown;
      v.detail = r.output.empty() ? "solver gave no answer" : r.output.substr(0, 200);
      break;
  }
  return v;
}

}  // namespace rlfgen
