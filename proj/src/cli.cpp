#include "vipr/cli.hpp"

#include <stdlib.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <system_error>
#include <thread>

#include <json.hpp>

#include "vipr/checker.hpp"
#include "vipr/parser.hpp"
#include "vipr/smtgen.hpp"

namespace vipr::cli {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

json failure_json(const Failure& f) {
  return {{"location", to_string(f.location)}, {"predicate_id", f.predicate_id}, {"message", f.message}};
}

std::string failure_line(const Failure& f) {
  return "INVALID " + to_string(f.location) + " " + f.predicate_id + " " + f.message;
}

/// Parses `file`, reporting problems on `err` (and `out` in JSON mode).
std::optional<ParsedCertificate> load(const std::string& file, Format format, std::ostream& out,
                                      std::ostream& err) {
  std::string message;
  try {
    return parse_certificate_file(file);
  } catch (const ParseError& e) {
    message = file + ":" + e.what();
  } catch (const std::system_error& e) {
    message = e.what();
  }
  err << "error: " << message << "\n";
  if (format == Format::Json) out << json{{"verdict", "PARSE_ERROR"}, {"message", message}}.dump() << "\n";
  return std::nullopt;
}

int internal_error(const std::string& message, Format format, std::ostream& out, std::ostream& err) {
  err << "error: " << message << "\n";
  if (format == Format::Json) out << json{{"verdict", "ERROR"}, {"message", message}}.dump() << "\n";
  return kInternalError;
}

Failure empty_system_failure(const EmptyConstraintSystem& e) {
  return {AtFinal{}, "empty-constraint-system", e.what()};
}

}  // namespace

unsigned default_jobs() { return std::max(1U, std::thread::hardware_concurrency()); }

std::string default_solver() {
  const char* value = std::getenv("VIPRSMT_SOLVER");
  return value == nullptr ? std::string() : std::string(value);
}

int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err) {
  const auto parse_start = Clock::now();
  const auto parsed = load(args.file, args.format, out, err);
  if (!parsed) return kParseFailure;
  const double parse_ms = ms_since(parse_start);

  const auto check_start = Clock::now();
  CheckReport report;
  try {
    report = check_certificate_report(parsed->problem, parsed->certificate, {args.jobs, args.diagnose});
  } catch (const EmptyConstraintSystem& e) {
    report.failures = {empty_system_failure(e)};
    report.verdict = Verdict::Invalid(report.failures.front());
  } catch (const std::exception& e) {
    return internal_error(e.what(), args.format, out, err);
  }
  const double check_ms = ms_since(check_start);

  if (args.format == Format::Json) {
    json doc{{"verdict", report.verdict.valid() ? "VALID" : "INVALID"},
             {"solutions_checked", report.solutions_checked},
             {"derivations_checked", report.derivations_checked},
             {"timings", {{"parse_ms", parse_ms}, {"check_ms", check_ms}}}};
    if (report.verdict.failure) {
      const Failure& f = *report.verdict.failure;
      doc["location"] = to_string(f.location);
      doc["predicate_id"] = f.predicate_id;
      doc["message"] = f.message;
    }
    if (args.diagnose) {
      doc["failures"] = json::array();
      for (const Failure& f : report.failures) doc["failures"].push_back(failure_json(f));
    }
    out << doc.dump() << "\n";
  } else if (report.verdict.valid()) {
    out << "VALID\n";
  } else {
    for (const Failure& f : report.failures) out << failure_line(f) << "\n";
  }
  if (args.format == Format::Text) {
    err << "checked " << report.solutions_checked << " solution(s) and " << report.derivations_checked
        << " derivation(s)\n";
  }
  return report.verdict.valid() ? kValid : kInvalid;
}

int cmd_emit(const EmitArgs& args, std::ostream& out, std::ostream& err) {
  const auto parsed = load(args.file, args.format, out, err);
  if (!parsed) return kParseFailure;
  const Problem& problem = parsed->problem;
  const Certificate& certificate = parsed->certificate;

  std::vector<EmittedFile> files;
  try {
    const AssumptionSets asets = compute_assumption_sets(problem, certificate);
    const EmissionPlan plan = make_plan(problem.m(), certificate.der.size(), args.jobs, args.block_size);
    files = emit(problem, certificate, asets, plan, args.out_dir);
  } catch (const EmptyConstraintSystem& e) {
    const Failure f = empty_system_failure(e);
    if (args.format == Format::Json) {
      out << json{{"verdict", "INVALID"}, {"location", to_string(f.location)}, {"predicate_id", f.predicate_id},
                  {"message", f.message}}.dump()
          << "\n";
    } else {
      out << failure_line(f) << "\n";
    }
    return kInvalid;
  } catch (const std::exception& e) {
    return internal_error(e.what(), args.format, out, err);
  }

  if (args.format == Format::Json) {
    json manifest = json::array();
    for (const EmittedFile& f : files) manifest.push_back({{"path", f.path.string()}, {"kind", kind_label(f)}});
    out << json{{"files", manifest}}.dump() << "\n";
  } else {
    for (const EmittedFile& f : files) out << f.path.string() << " " << kind_label(f) << "\n";
  }
  return kValid;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  const std::string solver = args.solver.empty() ? default_solver() : args.solver;
  if (solver.empty()) {
    return internal_error("no solver given; pass --solver or set VIPRSMT_SOLVER", args.format, out, err);
  }
  const auto parsed = load(args.file, args.format, out, err);
  if (!parsed) return kParseFailure;
  const Problem& problem = parsed->problem;
  const Certificate& certificate = parsed->certificate;

  std::filesystem::path dir = args.out_dir;
  bool temporary = false;
  if (dir.empty()) {
    std::string pattern = (std::filesystem::temp_directory_path() / "viprsmt-XXXXXX").string();
    if (::mkdtemp(pattern.data()) == nullptr) {
      return internal_error("cannot create a temporary directory", args.format, out, err);
    }
    dir = pattern;
    temporary = true;
  }
  struct Cleanup {
    std::filesystem::path dir;
    bool active;
    ~Cleanup() {
      std::error_code ec;
      if (active) std::filesystem::remove_all(dir, ec);
    }
  } cleanup{dir, temporary};

  const auto emit_start = Clock::now();
  std::vector<EmittedFile> files;
  try {
    const AssumptionSets asets = compute_assumption_sets(problem, certificate);
    const EmissionPlan plan = make_plan(problem.m(), certificate.der.size(), args.jobs, args.block_size);
    files = emit(problem, certificate, asets, plan, dir);
  } catch (const EmptyConstraintSystem& e) {
    const Failure f = empty_system_failure(e);
    out << (args.format == Format::Json
                ? json{{"verdict", "INVALID"}, {"location", to_string(f.location)}, {"predicate_id", f.predicate_id},
                       {"message", f.message}}.dump()
                : failure_line(f))
        << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    return internal_error(e.what(), args.format, out, err);
  }
  const double emit_ms = ms_since(emit_start);

  std::vector<std::filesystem::path> paths;
  for (const EmittedFile& f : files) paths.push_back(f.path);
  const auto solve_start = Clock::now();
  DispatchResult result;
  try {
    result = dispatch(paths, solver, args.jobs, std::chrono::seconds(args.timeout_s));
  } catch (const SolverSpawnError& e) {
    return internal_error(e.what(), args.format, out, err);
  }
  const double solve_ms = ms_since(solve_start);

  const char* verdict = result.aggregate == Aggregate::Valid     ? "VALID"
                        : result.aggregate == Aggregate::Invalid ? "INVALID"
                                                                 : "ERROR";
  if (args.format == Format::Json) {
    json per_file = json::array();
    for (std::size_t i = 0; i < files.size(); ++i) {
      const FileOutcome& o = result.files[i];
      per_file.push_back({{"path", o.path.string()},
                          {"kind", kind_label(files[i])},
                          {"outcome", outcome_name(o.outcome)},
                          {"ms", o.elapsed.count()}});
    }
    json doc{{"verdict", verdict}, {"files", per_file}, {"timings", {{"emit_ms", emit_ms}, {"solve_ms", solve_ms}}}};
    for (std::size_t i = 0; i < files.size(); ++i) {
      if (result.files[i].outcome == Outcome::Unsat) {
        doc["location"] = kind_label(files[i]);
        break;
      }
    }
    out << doc.dump() << "\n";
  } else {
    for (std::size_t i = 0; i < files.size(); ++i) {
      const FileOutcome& o = result.files[i];
      out << kind_label(files[i]) << " " << outcome_name(o.outcome) << "\n";
      if (!o.detail.empty()) err << kind_label(files[i]) << ": " << o.detail << "\n";
    }
    out << verdict << "\n";
  }
  switch (result.aggregate) {
    case Aggregate::Valid:
      return kValid;
    case Aggregate::Invalid:
      return kInvalid;
    case Aggregate::Error:
      break;
  }
  return kInternalError;
}

}  // namespace vipr::cli
