#include "corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "vipr/algebra.hpp"

namespace vipr::testing {

std::string fixture_dir() { return VIPR_FIXTURE_DIR; }

std::string fixture_path(const std::string& name) { return fixture_dir() + "/" + name; }

std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(fixture_dir())) {
    if (entry.path().extension() == ".vipr") out.push_back(entry.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ParsedCertificate load_fixture(const std::string& name) { return parse_certificate_file(fixture_path(name)); }

std::string ground_eval_command() { return std::string(VIPR_GROUND_EVAL) + " {}"; }

std::string z3_command() {
  const std::string path = VIPR_Z3;
  return path.empty() || path.find("NOTFOUND") != std::string::npos ? std::string() : path + " {}";
}

std::vector<TokenSpan> numeric_tokens(const std::string& text) {
  static const std::regex number(R"([+-]?[0-9]+(\.[0-9]+)?(/[+-]?[0-9]+)?)");
  std::vector<TokenSpan> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i])) != 0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j])) == 0) ++j;
    if (std::regex_match(text.begin() + static_cast<std::ptrdiff_t>(i), text.begin() + static_cast<std::ptrdiff_t>(j),
                         number)) {
      out.push_back({i, j - i});
    }
    i = j;
  }
  return out;
}

std::string increment_token(const std::string& token) {
  if (const auto dot = token.find('.'); dot != std::string::npos) {
    return std::to_string(std::stoll(token.substr(0, dot)) + 1) + token.substr(dot);
  }
  return (Rational::parse(token) + Rational(1)).to_string();
}

std::string mutate_text(const std::string& text, std::mt19937_64& rng) {
  const auto spans = numeric_tokens(text);
  if (spans.empty()) return text;
  const TokenSpan span = spans[std::uniform_int_distribution<std::size_t>(0, spans.size() - 1)(rng)];
  const std::string token = text.substr(span.offset, span.length);
  std::string replacement;
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0:
      replacement = increment_token(token);
      break;
    case 1:
      replacement = token.find('.') == std::string::npos ? (Rational::parse(token) - Rational(1)).to_string() : "0.5";
      break;
    case 2:
      replacement = token.find('.') == std::string::npos ? (-Rational::parse(token)).to_string() : "1";
      break;
    default:
      replacement = "1/2";
      break;
  }
  std::string out = text;
  out.replace(span.offset, span.length, replacement);
  return out;
}

namespace {

Rational small(std::mt19937_64& rng, int range, bool fractional) {
  const int num = std::uniform_int_distribution<int>(-range, range)(rng);
  const int den = fractional && std::bernoulli_distribution(0.3)(rng) ? 2 : 1;
  return {num, den};
}

LinearExpr random_lhs(std::mt19937_64& rng, std::size_t n) {
  LinearExpr lhs;
  for (Index j = 1; j <= n; ++j) {
    if (std::bernoulli_distribution(0.7)(rng)) lhs.set(j, small(rng, 3, false));
  }
  return lhs;
}

Sense random_sense(std::mt19937_64& rng, bool allow_eq) {
  const int pick = std::uniform_int_distribution<int>(allow_eq ? 0 : 1, 2)(rng);
  return pick == 0 ? Sense::Eq : (pick == 1 ? Sense::Geq : Sense::Leq);
}

std::optional<Sense> sense_of(const PseudoConstraint& p) {
  if (p.eq()) return Sense::Eq;
  if (p.geq) return Sense::Geq;
  if (p.leq) return Sense::Leq;
  return std::nullopt;
}

}  // namespace

ParsedCertificate random_certificate(std::mt19937_64& rng) {
  ParsedCertificate pc;
  Problem& p = pc.problem;
  Certificate& c = pc.certificate;
  const auto coin = [&](double prob) { return std::bernoulli_distribution(prob)(rng); };
  const auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };

  const std::size_t n = pick(1, 3);
  for (Index j = 1; j <= n; ++j) {
    p.var_names.push_back("x" + std::to_string(j));
    if (coin(0.75)) p.int_vars.insert(j);
  }
  p.sense = coin(0.5) ? ObjectiveSense::Min : ObjectiveSense::Max;
  p.objective = random_lhs(rng, n);
  const std::size_t m = pick(1, 4);
  for (std::size_t i = 1; i <= m; ++i) {
    p.constraints.push_back({"C" + std::to_string(i), random_lhs(rng, n), random_sense(rng, true), small(rng, 4, true)});
  }

  if (coin(0.35)) {
    c.rtp = RtpInfeasible{};
  } else {
    RtpRange range;
    if (coin(0.6)) range.lower = small(rng, 4, true);
    if (coin(0.6)) range.upper = small(rng, 4, true);
    c.rtp = range;
  }
  if (!c.infeasible() || coin(0.1)) {
    const std::size_t points = pick(0, 2);
    for (std::size_t s = 0; s < points; ++s) {
      SolutionPoint point{"s" + std::to_string(s + 1), {}};
      for (Index j = 1; j <= n; ++j) point.coords.set(j, small(rng, 2, !p.is_integer_var(j) || coin(0.1)));
      c.sol.push_back(point);
    }
  }

  const auto resolve = [&](Index i) -> const Constraint* {
    return i <= m ? &p.constraints[i - 1] : &c.der[i - m - 1].constraint;
  };
  const std::size_t der_count = pick(0, 6);
  for (std::size_t t = 0; t < der_count; ++t) {
    const Index k = m + 1 + t;
    DerivedConstraint der;
    der.constraint.name = "D" + std::to_string(k);
    der.legacy_index = coin(0.5) ? -1 : static_cast<std::int64_t>(pick(0, 20));
    const int reason = std::uniform_int_distribution<int>(0, 4)(rng);
    der.constraint.lhs = random_lhs(rng, n);
    der.constraint.sense = random_sense(rng, false);
    der.constraint.rhs = small(rng, 3, true);

    if (reason == 0) {
      der.reason = Reason::Asm;
      const auto ints = std::vector<Index>(p.int_vars.begin(), p.int_vars.end());
      if (!ints.empty() && coin(0.5)) {
        LinearExpr unit;
        unit.set(ints[pick(0, ints.size() - 1)], Rational(1));
        der.constraint.lhs = unit;
        der.constraint.rhs = small(rng, 2, false);
      }
    } else if (reason == 1 || reason == 2) {
      der.reason = reason == 1 ? Reason::Lin : Reason::Rnd;
      Multipliers data;
      const std::size_t terms = pick(1, 3);
      for (std::size_t s = 0; s < terms; ++s) {
        const Index i = coin(0.05) ? k : pick(1, k - 1);
        const Rational lambdas[] = {Rational(1), Rational(-1), Rational(2), Rational(1, 2), Rational(-1, 3)};
        data.set(i, lambdas[pick(0, 4)]);
      }
      der.data = data;
      if (coin(0.7) && data.entries().rbegin()->first < k) {
        const PseudoConstraint combo = linear_combination(data, resolve);
        if (const auto sense = sense_of(combo)) {
          der.constraint.lhs = combo.lhs;
          der.constraint.sense = *sense;
          der.constraint.rhs = combo.rhs;
          if (der.reason == Reason::Rnd && *sense != Sense::Eq) {
            der.constraint.rhs = *sense == Sense::Geq ? combo.rhs.ceil() : combo.rhs.floor();
          }
          if (coin(0.2)) der.constraint.rhs += Rational(coin(0.5) ? 1 : -1);
        }
      }
    } else if (reason == 3) {
      der.reason = Reason::Uns;
      Unsplit u{pick(1, k - 1), pick(1, k - 1), pick(1, k - 1), pick(1, k - 1)};
      if (coin(0.05)) u.i2 = k;
      der.data = u;
      if (coin(0.7)) der.constraint = *resolve(u.i1);
      der.constraint.name = "D" + std::to_string(k);
    } else {
      der.reason = Reason::Sol;
      if (!c.sol.empty() && coin(0.8)) {
        const SolutionPoint& s = c.sol[pick(0, c.sol.size() - 1)];
        der.constraint.lhs = p.objective;
        der.constraint.sense = p.sense == ObjectiveSense::Min ? Sense::Leq : Sense::Geq;
        der.constraint.rhs = p.objective.dot(s.coords) + Rational(coin(0.2) ? -1 : 0);
      }
    }
    c.der.push_back(der);
  }
  return pc;
}

}  // namespace vipr::testing
