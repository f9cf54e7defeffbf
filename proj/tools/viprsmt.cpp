#include <iostream>

#include <CLI11.hpp>

#include "vipr/cli.hpp"

int main(int argc, char** argv) {
  using namespace vipr::cli;
  CLI::App app{"Skeptical checker for VIPR 1.0 MILP certificates"};
  app.require_subcommand(1);

  const std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}};

  CheckArgs check;
  check.jobs = default_jobs();
  auto* check_cmd = app.add_subcommand("check", "Check a certificate natively");
  check_cmd->add_option("file", check.file, "certificate file")->required();
  check_cmd->add_option("--jobs,-j", check.jobs, "worker threads")->check(CLI::PositiveNumber);
  check_cmd->add_flag("--diagnose", check.diagnose, "report every failing derivation");
  check_cmd->add_option("--format", check.format, "text or json")->transform(CLI::CheckedTransformer(formats));

  EmitArgs emit;
  emit.jobs = default_jobs();
  auto* emit_cmd = app.add_subcommand("emit", "Write the SMT-LIB files for a certificate");
  emit_cmd->add_option("file", emit.file, "certificate file")->required();
  emit_cmd->add_option("--out,-o", emit.out_dir, "output directory")->required();
  emit_cmd->add_option("--block-size", emit.block_size, "derivations per block file")->check(CLI::PositiveNumber);
  emit_cmd->add_option("--jobs,-j", emit.jobs, "workers used for the default block size")->check(CLI::PositiveNumber);
  emit_cmd->add_option("--format", emit.format, "text or json")->transform(CLI::CheckedTransformer(formats));

  VerifyArgs verify;
  verify.jobs = default_jobs();
  auto* verify_cmd = app.add_subcommand("verify", "Emit SMT-LIB files and check them with an external solver");
  verify_cmd->add_option("file", verify.file, "certificate file")->required();
  verify_cmd->add_option("--solver", verify.solver,
                         "solver command; {} is replaced by the file, else the file is appended "
                         "(default: $VIPRSMT_SOLVER)");
  verify_cmd->add_option("--jobs,-j", verify.jobs, "concurrent solver processes")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--block-size", verify.block_size, "derivations per block file")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--timeout", verify.timeout_s, "seconds per file")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--out,-o", verify.out_dir, "keep the emitted files in this directory");
  verify_cmd->add_option("--format", verify.format, "text or json")->transform(CLI::CheckedTransformer(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kParseFailure;
  }

  if (check_cmd->parsed()) return cmd_check(check, std::cout, std::cerr);
  if (emit_cmd->parsed()) return cmd_emit(emit, std::cout, std::cerr);
  return cmd_verify(verify, std::cout, std::cerr);
}
