#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace vipr::cli {

enum ExitCode : int {
  kValid = 0,
  kInvalid = 1,
  kParseFailure = 2,
  kInternalError = 3,
};

enum class Format { Text, Json };

struct CheckArgs {
  std::string file;
  unsigned jobs = 1;
  bool diagnose = false;
  Format format = Format::Text;
};

struct EmitArgs {
  std::string file;
  std::string out_dir;
  std::optional<std::size_t> block_size;
  unsigned jobs = 1;
  Format format = Format::Text;
};

struct VerifyArgs {
  std::string file;
  std::string solver;  ///< empty: take VIPRSMT_SOLVER
  unsigned jobs = 1;
  std::optional<std::size_t> block_size;
  unsigned timeout_s = 300;
  std::string out_dir;  ///< empty: temporary directory, removed afterwards
  Format format = Format::Text;
};

/// Logical CPU count, at least 1.
unsigned default_jobs();

/// Value of VIPRSMT_SOLVER, or empty.
std::string default_solver();

int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err);
int cmd_emit(const EmitArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);

}  // namespace vipr::cli
