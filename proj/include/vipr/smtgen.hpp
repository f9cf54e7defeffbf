#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vipr/checker.hpp"
#include "vipr/model.hpp"

namespace vipr {

/// Consecutive ranges [first, last] of derived constraint indices, one per
/// block file.
struct EmissionPlan {
  std::size_t block_size = 1;
  std::vector<std::pair<Index, Index>> blocks;
};

/// Blocks of `block_size` (default max(1, der_count / workers)) over
/// [m+1, m+der_count]; the last block takes the remainder.
EmissionPlan make_plan(std::size_t m, std::size_t der_count, unsigned workers,
                       std::optional<std::size_t> block_size = std::nullopt);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EmitMode {
  Symbolic,  ///< arithmetic left to the solver
  Folded,    ///< every assertion is the literal computed by the checker
};

enum class FileKind { Sol, Block, Final };

struct EmittedFile {
  std::filesystem::path path;
  FileKind kind = FileKind::Sol;
  Index first = 0;  ///< block range, zero for sol and final
  Index last = 0;
};

/// `sol`, `block[k1..k2]` or `final`.
std::string kind_label(const EmittedFile& file);

/// SMT-LIB text of each unit, without touching the file system.
std::string smt_sol(const Problem& problem, const Certificate& certificate, EmitMode mode = EmitMode::Symbolic);
std::string smt_block(const Problem& problem, const Certificate& certificate, const AssumptionSets& asets,
                      Index first, Index last, EmitMode mode = EmitMode::Symbolic);
/// Throws EmptyConstraintSystem under the same condition as check_final.
std::string smt_final(const Problem& problem, const Certificate& certificate, const AssumptionSets& asets,
                      EmitMode mode = EmitMode::Symbolic);

/// Writes sol.smt2, der_<k1>_<k2>.smt2 per block and final.smt2 into
/// `out_dir`, creating it if needed.
std::vector<EmittedFile> emit(const Problem& problem, const Certificate& certificate,
                              const AssumptionSets& asets, const EmissionPlan& plan,
                              const std::filesystem::path& out_dir, EmitMode mode = EmitMode::Symbolic);

// ---------------------------------------------------------------------------
// Solver dispatch

class SolverSpawnError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Outcome { Sat, Unsat, SolverError, Timeout, Cancelled };

const char* outcome_name(Outcome outcome);

struct FileOutcome {
  std::filesystem::path path;
  Outcome outcome = Outcome::Cancelled;
  std::string detail;  ///< solver output or error text
  std::chrono::milliseconds elapsed{0};
};

enum class Aggregate { Valid, Invalid, Error };

struct DispatchResult {
  std::vector<FileOutcome> files;  ///< same order as the input
  Aggregate aggregate = Aggregate::Error;
};

/// Splits a command template into argv and substitutes `{}` with `file`;
/// without a placeholder the file is appended as the last argument.
/// Single and double quotes group words.
std::vector<std::string> solver_argv(const std::string& command_template, const std::string& file);

/// Runs the solver on every file with up to `jobs` concurrent processes.
/// The first unsat cancels the files that have not finished. Throws
/// SolverSpawnError when the solver cannot be started.
DispatchResult dispatch(const std::vector<std::filesystem::path>& files, const std::string& solver_command,
                        unsigned jobs, std::chrono::seconds timeout = std::chrono::seconds(300));

}  // namespace vipr
