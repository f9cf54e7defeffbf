#include "ground_eval.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <memory>
#include <variant>
#include <vector>

namespace vipr::testing {

namespace {

using Q = boost::multiprecision::cpp_rational;
using Z = boost::multiprecision::cpp_int;

struct Node {
  std::string atom;
  std::vector<Node> children;
  bool is_list = false;
};

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  Node read() {
    skip();
    if (pos_ >= text_.size()) throw GroundEvalError("unexpected end of input");
    if (text_[pos_] == '(') {
      ++pos_;
      Node list;
      list.is_list = true;
      while (true) {
        skip();
        if (pos_ >= text_.size()) throw GroundEvalError("unbalanced parenthesis");
        if (text_[pos_] == ')') {
          ++pos_;
          return list;
        }
        list.children.push_back(read());
      }
    }
    if (text_[pos_] == ')') throw GroundEvalError("unexpected ')'");
    Node atom;
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) == 0 &&
           text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != ';') {
      atom.atom += text_[pos_++];
    }
    return atom;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

using Value = std::variant<bool, Q>;

Q parse_number(const std::string& s) {
  const auto dot = s.find('.');
  const std::string whole = s.substr(0, dot);
  if (whole.empty() || whole.find_first_not_of("0123456789") != std::string::npos) {
    throw GroundEvalError("unknown symbol '" + s + "'");
  }
  Q value{Z(whole)};
  if (dot != std::string::npos) {
    const std::string frac = s.substr(dot + 1);
    if (frac.find_first_not_of("0123456789") != std::string::npos) throw GroundEvalError("bad decimal " + s);
    if (!frac.empty()) value += Q(Z(frac), boost::multiprecision::pow(Z(10), static_cast<unsigned>(frac.size())));
  }
  return value;
}

Z floor_of(const Q& q) {
  const Z n = boost::multiprecision::numerator(q);
  const Z d = boost::multiprecision::denominator(q);
  Z f = n / d;
  if (n % d != 0 && n < 0) f -= 1;
  return f;
}

Value eval(const Node& node);

Q num(const Node& node) {
  const Value v = eval(node);
  if (const Q* q = std::get_if<Q>(&v)) return *q;
  throw GroundEvalError("expected a number");
}

bool boolean(const Node& node) {
  const Value v = eval(node);
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  throw GroundEvalError("expected a boolean");
}

Value eval(const Node& node) {
  if (!node.is_list) {
    if (node.atom == "true") return true;
    if (node.atom == "false") return false;
    return parse_number(node.atom);
  }
  if (node.children.empty() || node.children.front().is_list) throw GroundEvalError("bad application");
  const std::string& op = node.children.front().atom;
  const std::size_t argc = node.children.size() - 1;
  const auto arg = [&](std::size_t i) -> const Node& { return node.children.at(i + 1); };
  const auto need = [&](std::size_t n) {
    if (argc != n) throw GroundEvalError(op + " expects " + std::to_string(n) + " argument(s)");
  };

  if (op == "and" || op == "or") {
    const bool is_and = op == "and";
    bool acc = is_and;
    for (std::size_t i = 0; i < argc; ++i) acc = is_and ? (boolean(arg(i)) && acc) : (boolean(arg(i)) || acc);
    return acc;
  }
  if (op == "not") {
    need(1);
    return !boolean(arg(0));
  }
  if (op == "=>") {
    need(2);
    return !boolean(arg(0)) || boolean(arg(1));
  }
  if (op == "ite") {
    need(3);
    return boolean(arg(0)) ? eval(arg(1)) : eval(arg(2));
  }
  if (op == "+" || op == "*") {
    Q acc = op == "+" ? Q(0) : Q(1);
    for (std::size_t i = 0; i < argc; ++i) acc = op == "+" ? acc + num(arg(i)) : acc * num(arg(i));
    return acc;
  }
  if (op == "-") {
    if (argc == 1) return Q(-num(arg(0)));
    if (argc == 0) throw GroundEvalError("- expects arguments");
    Q acc = num(arg(0));
    for (std::size_t i = 1; i < argc; ++i) acc -= num(arg(i));
    return acc;
  }
  if (op == "/") {
    need(2);
    const Q d = num(arg(1));
    if (d == 0) throw GroundEvalError("division by zero");
    return Q(num(arg(0)) / d);
  }
  if (op == "=" || op == "<" || op == "<=" || op == ">" || op == ">=") {
    need(2);
    const Value a = eval(arg(0));
    const Value b = eval(arg(1));
    if (op == "=") return a == b;
    const Q x = std::get<Q>(a);
    const Q y = std::get<Q>(b);
    if (op == "<") return x < y;
    if (op == "<=") return x <= y;
    if (op == ">") return x > y;
    return x >= y;
  }
  if (op == "to_int") {
    need(1);
    return Q(floor_of(num(arg(0))));
  }
  if (op == "to_real") {
    need(1);
    return num(arg(0));
  }
  if (op == "is_int") {
    need(1);
    return boost::multiprecision::denominator(num(arg(0))) == 1;
  }
  throw GroundEvalError("unsupported operator '" + op + "'");
}

}  // namespace

std::string evaluate_script(const std::string& text) {
  Reader reader(text);
  bool holds = true;
  bool saw_check = false;
  while (!reader.at_end()) {
    const Node command = reader.read();
    if (!command.is_list || command.children.empty()) throw GroundEvalError("expected a command");
    const std::string& head = command.children.front().atom;
    if (head == "set-logic" || head == "set-info" || head == "set-option") continue;
    if (head == "assert") {
      if (command.children.size() != 2) throw GroundEvalError("assert expects one term");
      holds = boolean(command.children[1]) && holds;
    } else if (head == "check-sat") {
      saw_check = true;
    } else {
      throw GroundEvalError("unsupported command '" + head + "'");
    }
  }
  if (!saw_check) throw GroundEvalError("no check-sat");
  return holds ? "sat" : "unsat";
}

}  // namespace vipr::testing
