#include "vipr/model.hpp"

#include <sstream>

namespace vipr {

int sign_value(Sense sense) {
  switch (sense) {
    case Sense::Geq:
      return 1;
    case Sense::Eq:
      return 0;
    case Sense::Leq:
      return -1;
  }
  return 0;
}

char sense_letter(Sense sense) {
  switch (sense) {
    case Sense::Geq:
      return 'G';
    case Sense::Eq:
      return 'E';
    case Sense::Leq:
      return 'L';
  }
  return '?';
}

const char* reason_name(Reason reason) {
  switch (reason) {
    case Reason::Asm:
      return "asm";
    case Reason::Lin:
      return "lin";
    case Reason::Rnd:
      return "rnd";
    case Reason::Uns:
      return "uns";
    case Reason::Sol:
      return "sol";
  }
  return "?";
}

void SparseVector::set(Index index, const Rational& value) {
  if (value.is_zero()) {
    entries_.erase(index);
  } else {
    entries_.insert_or_assign(index, value);
  }
}

void SparseVector::add(Index index, const Rational& value) {
  if (value.is_zero()) return;
  auto [it, inserted] = entries_.try_emplace(index, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) entries_.erase(it);
  }
}

Rational SparseVector::get(Index index) const {
  const auto it = entries_.find(index);
  return it == entries_.end() ? Rational(0) : it->second;
}

Rational SparseVector::dot(const SparseVector& other) const {
  const SparseVector& small = size() <= other.size() ? *this : other;
  const SparseVector& large = size() <= other.size() ? other : *this;
  Rational sum;
  for (const auto& [index, value] : small) {
    if (const auto it = large.entries_.find(index); it != large.entries_.end()) {
      sum += value * it->second;
    }
  }
  return sum;
}

SparseVector SparseVector::scaled(const Rational& factor) const {
  SparseVector out;
  if (factor.is_zero()) return out;
  for (const auto& [index, value] : entries_) out.entries_.emplace(index, value * factor);
  return out;
}

std::size_t total_constraints(const Problem& problem, const Certificate& certificate) {
  return problem.m() + certificate.der.size();
}

const Constraint& constraint_at(const Problem& problem, const Certificate& certificate,
                                Index k) {
  const std::size_t m = problem.m();
  if (k == 0 || k > total_constraints(problem, certificate)) {
    throw IndexOutOfRange("constraint index " + std::to_string(k) + " outside [1," +
                          std::to_string(total_constraints(problem, certificate)) + "]");
  }
  if (k <= m) return problem.constraints[k - 1];
  return certificate.der[k - m - 1].constraint;
}

const DerivedConstraint& derived_at(const Problem& problem, const Certificate& certificate,
                                    Index k) {
  const std::size_t m = problem.m();
  if (k <= m || k > total_constraints(problem, certificate)) {
    throw IndexOutOfRange("derived constraint index " + std::to_string(k) + " outside [" +
                          std::to_string(m + 1) + "," +
                          std::to_string(total_constraints(problem, certificate)) + "]");
  }
  return certificate.der[k - m - 1];
}

std::vector<Index> nz(const Multipliers& multipliers) {
  std::vector<Index> out;
  out.reserve(multipliers.size());
  for (const auto& entry : multipliers) out.push_back(entry.first);
  return out;
}

std::string to_string(const Location& location) {
  struct Visitor {
    std::string operator()(const AtSol& at) const {
      return "Sol(" + (at.name.empty() ? std::string("*") : at.name) + ")";
    }
    std::string operator()(const AtDer& at) const { return "Der(" + std::to_string(at.k) + ")"; }
    std::string operator()(const AtFinal&) const { return "Final"; }
    std::string operator()(const AtAttr& at) const {
      return "Attr(" + std::to_string(at.k) + ")";
    }
  };
  return std::visit(Visitor{}, location);
}

std::string describe(const Problem& problem, const Constraint& constraint) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [j, a] : constraint.lhs) {
    const std::string var =
        j >= 1 && j <= problem.n() ? problem.var_names[j - 1] : "x" + std::to_string(j);
    if (!first) os << (a.sign() < 0 ? " - " : " + ");
    else if (a.sign() < 0) os << "-";
    const Rational mag = a.sign() < 0 ? -a : a;
    if (mag != Rational(1)) os << mag << "*";
    os << var;
    first = false;
  }
  if (first) os << "0";
  switch (constraint.sense) {
    case Sense::Geq:
      os << " >= ";
      break;
    case Sense::Leq:
      os << " <= ";
      break;
    case Sense::Eq:
      os << " = ";
      break;
  }
  os << constraint.rhs;
  return os.str();
}

}  // namespace vipr
