#include "vipr/parser.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <system_error>

namespace vipr {

const char* parse_error_kind_name(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::UnexpectedToken:
      return "UnexpectedToken";
    case ParseErrorKind::DecimalNotation:
      return "DecimalNotation";
    case ParseErrorKind::BadCount:
      return "BadCount";
    case ParseErrorKind::BadIndex:
      return "BadIndex";
    case ParseErrorKind::UnknownSense:
      return "UnknownSense";
    case ParseErrorKind::UnknownReason:
      return "UnknownReason";
    case ParseErrorKind::MissingSection:
      return "MissingSection";
    case ParseErrorKind::TrailingGarbage:
      return "TrailingGarbage";
  }
  return "?";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, std::size_t column,
                       const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " +
                         parse_error_kind_name(kind) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

namespace {

constexpr std::array<std::string_view, 8> kSections = {"VER", "VAR", "INT", "OBJ",
                                                       "CON", "RTP", "SOL", "DER"};

struct Token {
  std::string_view text;  // empty at end of input
  std::size_t line = 1;
  std::size_t column = 1;

  [[nodiscard]] bool eof() const { return text.empty(); }
};

class Lexer {
 public:
  explicit Lexer(std::string_view input) : input_(input) {}

  Token next() {
    skip_space();
    Token tok{{}, line_, column_};
    const std::size_t start = pos_;
    while (pos_ < input_.size() && !is_space(input_[pos_])) advance();
    tok.text = input_.substr(start, pos_ - start);
    return tok;
  }

 private:
  static bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

  void advance() {
    if (input_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < input_.size() && is_space(input_[pos_])) advance();
  }

  std::string_view input_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

std::string quoted(const Token& tok) {
  return tok.eof() ? std::string("end of input") : "'" + std::string(tok.text) + "'";
}

class Parser {
 public:
  explicit Parser(std::string_view input) : lexer_(input) {}

  ParsedCertificate run() {
    ParsedCertificate out;
    parse_version();
    parse_variables(out.problem);
    parse_integers(out.problem);
    parse_objective(out.problem);
    parse_constraints(out.problem);
    parse_rtp(out.certificate);
    parse_solutions(out.problem, out.certificate);
    parse_derivations(out.problem, out.certificate);
    const Token rest = lexer_.next();
    if (!rest.eof()) fail(ParseErrorKind::TrailingGarbage, rest, "unexpected " + quoted(rest) + " after DER section");
    return out;
  }

 private:
  [[noreturn]] static void fail(ParseErrorKind kind, const Token& tok, const std::string& message) {
    throw ParseError(kind, tok.line, tok.column, message);
  }

  Token expect_token(std::string_view what) {
    Token tok = lexer_.next();
    if (tok.eof()) fail(ParseErrorKind::UnexpectedToken, tok, "expected " + std::string(what) + ", got end of input");
    return tok;
  }

  void expect_section(std::string_view keyword) {
    const Token tok = lexer_.next();
    if (tok.text == keyword) return;
    bool known = tok.eof();
    for (auto s : kSections) known = known || tok.text == s;
    fail(known ? ParseErrorKind::MissingSection : ParseErrorKind::UnexpectedToken, tok,
         "expected section " + std::string(keyword) + ", got " + quoted(tok));
  }

  void expect_literal(std::string_view literal) {
    const Token tok = lexer_.next();
    if (tok.text != literal) {
      fail(ParseErrorKind::UnexpectedToken, tok,
           "expected '" + std::string(literal) + "', got " + quoted(tok));
    }
  }

  // Parses a signed decimal integer token; `kind` classifies a malformed one.
  std::int64_t integer(const Token& tok, ParseErrorKind kind, std::string_view what) {
    if (tok.text.find('.') != std::string_view::npos) {
      fail(ParseErrorKind::DecimalNotation, tok, std::string(what) + " uses decimal notation: " + quoted(tok));
    }
    std::string_view digits = tok.text;
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
      fail(kind, tok, "expected integer " + std::string(what) + ", got " + quoted(tok));
    }
    return value;
  }

  std::size_t count(std::string_view what) {
    const Token tok = expect_token(what);
    const std::int64_t value = integer(tok, ParseErrorKind::BadCount, what);
    if (value < 0) fail(ParseErrorKind::BadCount, tok, std::string(what) + " must be non-negative");
    return static_cast<std::size_t>(value);
  }

  // Reads a 0-based index token and returns it 1-based; must be < `bound`.
  Index index(std::size_t bound, std::string_view what) {
    const Token tok = expect_token(what);
    const std::int64_t value = integer(tok, ParseErrorKind::BadIndex, what);
    if (value < 0 || static_cast<std::uint64_t>(value) >= bound) {
      fail(ParseErrorKind::BadIndex, tok,
           std::string(what) + " " + std::string(tok.text) + " outside [0," + std::to_string(bound) + ")");
    }
    return static_cast<Index>(value) + 1;
  }

  Rational rational(std::string_view what) {
    const Token tok = expect_token(what);
    return rational_from(tok, what);
  }

  Rational rational_from(const Token& tok, std::string_view what) {
    try {
      return Rational::parse(tok.text);
    } catch (const DecimalNotationError&) {
      fail(ParseErrorKind::DecimalNotation, tok, std::string(what) + " uses decimal notation: " + quoted(tok));
    } catch (const RationalParseError& e) {
      fail(ParseErrorKind::UnexpectedToken, tok, std::string(what) + ": " + e.what());
    }
  }

  // `t i1 v1 ... it vt` with 0-based indices below `bound`. Zero values are
  // dropped; a repeated index is an error.
  SparseVector term_list(std::size_t bound, std::string_view what) {
    return term_list_after(expect_token("term count"), bound, what);
  }

  SparseVector term_list_after(const Token& count_tok, std::size_t bound, std::string_view what) {
    const std::int64_t raw = integer(count_tok, ParseErrorKind::BadCount, "term count");
    if (raw < 0) fail(ParseErrorKind::BadCount, count_tok, "term count must be non-negative");
    SparseVector out;
    std::set<Index> seen;
    for (std::int64_t t = 0; t < raw; ++t) {
      const Token idx_tok = expect_token(what);
      const std::int64_t value = integer(idx_tok, ParseErrorKind::BadIndex, what);
      if (value < 0 || static_cast<std::uint64_t>(value) >= bound) {
        fail(ParseErrorKind::BadIndex, idx_tok,
             std::string(what) + " " + std::string(idx_tok.text) + " outside [0," + std::to_string(bound) + ")");
      }
      const Index j = static_cast<Index>(value) + 1;
      if (!seen.insert(j).second) {
        fail(ParseErrorKind::BadIndex, idx_tok, "duplicate " + std::string(what) + " " + std::string(idx_tok.text));
      }
      out.set(j, rational("coefficient"));
    }
    return out;
  }

  Sense sense() {
    const Token tok = expect_token("constraint sense");
    if (tok.text == "E") return Sense::Eq;
    if (tok.text == "G") return Sense::Geq;
    if (tok.text == "L") return Sense::Leq;
    fail(ParseErrorKind::UnknownSense, tok, "expected E, G or L, got " + quoted(tok));
  }

  // name sense rhs (OBJ | term list)
  Constraint constraint(const Problem& problem) {
    Constraint c;
    c.name = std::string(expect_token("constraint name").text);
    c.sense = sense();
    c.rhs = rational("right hand side");
    const Token tok = expect_token("term count or OBJ");
    c.lhs = tok.text == "OBJ" ? problem.objective : term_list_after(tok, problem.n(), "variable index");
    return c;
  }

  void parse_version() {
    expect_section("VER");
    const Token tok = expect_token("version");
    if (tok.text != "1.0") fail(ParseErrorKind::UnexpectedToken, tok, "unsupported version " + quoted(tok) + ", expected 1.0");
  }

  void parse_variables(Problem& problem) {
    expect_section("VAR");
    const std::size_t n = count("variable count");
    problem.var_names.reserve(n);
    for (std::size_t j = 0; j < n; ++j) problem.var_names.emplace_back(expect_token("variable name").text);
  }

  void parse_integers(Problem& problem) {
    expect_section("INT");
    const std::size_t k = count("integer variable count");
    for (std::size_t t = 0; t < k; ++t) {
      const Token tok = peek_position();
      const Index j = index(problem.n(), "variable index");
      if (!problem.int_vars.insert(j).second) {
        fail(ParseErrorKind::BadIndex, tok, "duplicate integer variable " + std::to_string(j - 1));
      }
    }
  }

  void parse_objective(Problem& problem) {
    expect_section("OBJ");
    const Token tok = expect_token("objective sense");
    if (tok.text == "min") {
      problem.sense = ObjectiveSense::Min;
    } else if (tok.text == "max") {
      problem.sense = ObjectiveSense::Max;
    } else {
      fail(ParseErrorKind::UnknownSense, tok, "expected min or max, got " + quoted(tok));
    }
    problem.objective = term_list(problem.n(), "variable index");
  }

  void parse_constraints(Problem& problem) {
    expect_section("CON");
    const std::size_t m = count("constraint count");
    const Token b_tok = expect_token("bound constraint count");
    const std::int64_t b = integer(b_tok, ParseErrorKind::BadCount, "bound constraint count");
    if (b < 0 || static_cast<std::uint64_t>(b) > m) {
      fail(ParseErrorKind::BadCount, b_tok, "bound constraint count must lie in [0," + std::to_string(m) + "]");
    }
    problem.bound_count = static_cast<std::size_t>(b);
    problem.constraints.reserve(m);
    for (std::size_t i = 0; i < m; ++i) problem.constraints.push_back(constraint(problem));
  }

  void parse_rtp(Certificate& certificate) {
    expect_section("RTP");
    const Token kind = expect_token("infeas or range");
    if (kind.text == "infeas") {
      certificate.rtp = RtpInfeasible{};
      return;
    }
    if (kind.text != "range") fail(ParseErrorKind::UnexpectedToken, kind, "expected infeas or range, got " + quoted(kind));
    RtpRange range;
    const Token lb = expect_token("lower bound");
    if (lb.text != "-inf") range.lower = rational_from(lb, "lower bound");
    const Token ub = expect_token("upper bound");
    if (ub.text != "inf") range.upper = rational_from(ub, "upper bound");
    certificate.rtp = range;
  }

  void parse_solutions(const Problem& problem, Certificate& certificate) {
    expect_section("SOL");
    const std::size_t s = count("solution count");
    certificate.sol.reserve(s);
    for (std::size_t i = 0; i < s; ++i) {
      SolutionPoint point;
      point.name = std::string(expect_token("solution name").text);
      point.coords = term_list(problem.n(), "variable index");
      certificate.sol.push_back(std::move(point));
    }
  }

  void parse_derivations(const Problem& problem, Certificate& certificate) {
    expect_section("DER");
    const std::size_t t = count("derivation count");
    const std::size_t d = problem.m() + t;
    certificate.der.reserve(t);
    for (std::size_t i = 0; i < t; ++i) {
      DerivedConstraint der;
      der.constraint = constraint(problem);
      expect_literal("{");
      const Token reason = expect_token("reason");
      if (reason.text == "asm") {
        der.reason = Reason::Asm;
      } else if (reason.text == "sol") {
        der.reason = Reason::Sol;
      } else if (reason.text == "lin" || reason.text == "rnd") {
        der.reason = reason.text == "lin" ? Reason::Lin : Reason::Rnd;
        der.data = term_list(d, "constraint index");
      } else if (reason.text == "uns") {
        der.reason = Reason::Uns;
        Unsplit u;
        u.i1 = index(d, "constraint index");
        u.l1 = index(d, "constraint index");
        u.i2 = index(d, "constraint index");
        u.l2 = index(d, "constraint index");
        der.data = u;
      } else {
        fail(ParseErrorKind::UnknownReason, reason, "expected asm, lin, rnd, uns or sol, got " + quoted(reason));
      }
      expect_literal("}");
      der.legacy_index = integer(expect_token("index"), ParseErrorKind::UnexpectedToken, "index");
      certificate.der.push_back(std::move(der));
    }
  }

  // Position of the next token without consuming it (for error reporting).
  Token peek_position() {
    Lexer copy = lexer_;
    return copy.next();
  }

  Lexer lexer_;
};

std::string term_list_text(const SparseVector& v) {
  std::string out = std::to_string(v.size());
  for (const auto& [j, value] : v) {
    out += "  " + std::to_string(j - 1) + " " + value.to_string();
  }
  return out;
}

}  // namespace

ParsedCertificate parse_certificate(std::string_view text) { return Parser(text).run(); }

ParsedCertificate parse_certificate(std::istream& input) {
  const std::string text{std::istreambuf_iterator<char>(input), std::istreambuf_iterator<char>()};
  return parse_certificate(std::string_view(text));
}

ParsedCertificate parse_certificate_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::system_error(errno, std::generic_category(), "cannot open " + path);
  return parse_certificate(in);
}

std::string serialize_certificate(const Problem& problem, const Certificate& certificate) {
  std::ostringstream os;
  os << "VER 1.0\n";
  os << "VAR " << problem.n() << "\n";
  for (std::size_t j = 0; j < problem.n(); ++j) os << (j ? " " : "") << problem.var_names[j];
  os << "\n";
  os << "INT " << problem.int_vars.size() << "\n";
  bool first = true;
  for (Index j : problem.int_vars) {
    os << (first ? "" : " ") << j - 1;
    first = false;
  }
  os << "\n";
  os << "OBJ " << (problem.sense == ObjectiveSense::Min ? "min" : "max") << "\n";
  os << term_list_text(problem.objective) << "\n";
  os << "CON " << problem.m() << " " << problem.bound_count << "\n";
  const auto write_constraint = [&os](const Constraint& c) {
    os << c.name << " " << sense_letter(c.sense) << " " << c.rhs << "  " << term_list_text(c.lhs);
  };
  for (const Constraint& c : problem.constraints) {
    write_constraint(c);
    os << "\n";
  }
  if (certificate.infeasible()) {
    os << "RTP infeas\n";
  } else {
    const auto& range = std::get<RtpRange>(certificate.rtp);
    os << "RTP range " << (range.lower ? range.lower->to_string() : "-inf") << " "
       << (range.upper ? range.upper->to_string() : "inf") << "\n";
  }
  os << "SOL " << certificate.sol.size() << "\n";
  for (const SolutionPoint& p : certificate.sol) os << p.name << "  " << term_list_text(p.coords) << "\n";
  os << "DER " << certificate.der.size() << "\n";
  for (const DerivedConstraint& der : certificate.der) {
    write_constraint(der.constraint);
    os << "  { " << reason_name(der.reason);
    if (const auto* mult = der.multipliers()) {
      os << " " << term_list_text(*mult);
    } else if (const auto* u = der.unsplit()) {
      os << " " << u->i1 - 1 << " " << u->l1 - 1 << "  " << u->i2 - 1 << " " << u->l2 - 1;
    }
    os << " } " << der.legacy_index << "\n";
  }
  return os.str();
}

}  // namespace vipr
