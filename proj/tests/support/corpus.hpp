#pragma once

#include <random>
#include <string>
#include <vector>

#include "vipr/parser.hpp"

namespace vipr::testing {

std::string fixture_dir();
std::string fixture_path(const std::string& name);
/// Every *.vipr file in the fixture directory, sorted by name.
std::vector<std::string> corpus_files();
std::string read_file(const std::string& path);
ParsedCertificate load_fixture(const std::string& name);

/// Command running the bundled ground evaluator on `{}`.
std::string ground_eval_command();
/// z3 on `{}`, or empty when z3 was not found at configure time.
std::string z3_command();

/// Byte offset and length of each numeric token (integer, fraction or
/// decimal) outside of names.
struct TokenSpan {
  std::size_t offset;
  std::size_t length;
};
std::vector<TokenSpan> numeric_tokens(const std::string& text);

/// The token's value plus one in the token's own notation.
std::string increment_token(const std::string& token);

/// Replaces one random numeric token with a nearby value.
std::string mutate_text(const std::string& text, std::mt19937_64& rng);

/// A small random problem and certificate. Derivations are biased towards
/// being valid so that both verdicts occur often.
ParsedCertificate random_certificate(std::mt19937_64& rng);

}  // namespace vipr::testing
