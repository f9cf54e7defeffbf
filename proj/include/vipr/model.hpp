#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "vipr/rational.hpp"

namespace vipr {

/// 1-based index of a variable (in [1,n]) or of a constraint (in [1,d]).
using Index = std::size_t;

enum class Sense { Eq, Geq, Leq };

/// Geq -> 1, Eq -> 0, Leq -> -1.
int sign_value(Sense sense);

char sense_letter(Sense sense);

enum class ObjectiveSense { Min, Max };

/// Sparse vector of nonzero rationals keyed by 1-based index.
///
/// Used for left hand sides, the objective, solution coordinates, and
/// linear-combination multipliers. Zero entries are never stored, so an
/// empty vector is the zero vector. Iteration order is ascending index.
class SparseVector {
 public:
  using Map = std::map<Index, Rational>;

  SparseVector() = default;

  /// Stores `value` at `index`, erasing the entry when `value` is zero.
  void set(Index index, const Rational& value);
  /// Adds `value` to the entry at `index`, dropping it if it cancels to zero.
  void add(Index index, const Rational& value);

  [[nodiscard]] Rational get(Index index) const;
  [[nodiscard]] bool contains(Index index) const { return entries_.count(index) != 0; }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] const Map& entries() const { return entries_; }
  [[nodiscard]] Map::const_iterator begin() const { return entries_.begin(); }
  [[nodiscard]] Map::const_iterator end() const { return entries_.end(); }

  /// Dot product with another sparse vector.
  [[nodiscard]] Rational dot(const SparseVector& other) const;
  [[nodiscard]] SparseVector scaled(const Rational& factor) const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  Map entries_;
};

using LinearExpr = SparseVector;
using Multipliers = SparseVector;

struct Constraint {
  std::string name;
  LinearExpr lhs;
  Sense sense = Sense::Geq;
  Rational rhs;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct Problem {
  std::vector<std::string> var_names;
  std::set<Index> int_vars;
  ObjectiveSense sense = ObjectiveSense::Min;
  LinearExpr objective;
  std::vector<Constraint> constraints;
  /// Second integer of the CON header; carried for round trips only.
  std::size_t bound_count = 0;

  [[nodiscard]] std::size_t n() const { return var_names.size(); }
  [[nodiscard]] std::size_t m() const { return constraints.size(); }
  [[nodiscard]] bool is_integer_var(Index j) const { return int_vars.count(j) != 0; }

  friend bool operator==(const Problem&, const Problem&) = default;
};

struct RtpInfeasible {
  friend bool operator==(const RtpInfeasible&, const RtpInfeasible&) = default;
};

/// Objective interval; an empty optional is an infinite bound.
struct RtpRange {
  std::optional<Rational> lower;
  std::optional<Rational> upper;

  friend bool operator==(const RtpRange&, const RtpRange&) = default;
};

using Rtp = std::variant<RtpInfeasible, RtpRange>;

struct SolutionPoint {
  std::string name;
  SparseVector coords;

  friend bool operator==(const SolutionPoint&, const SolutionPoint&) = default;
};

enum class Reason { Asm, Lin, Rnd, Uns, Sol };

const char* reason_name(Reason reason);

struct Unsplit {
  Index i1 = 0;
  Index l1 = 0;
  Index i2 = 0;
  Index l2 = 0;

  friend bool operator==(const Unsplit&, const Unsplit&) = default;
};

using DerivationData = std::variant<std::monostate, Multipliers, Unsplit>;

struct DerivedConstraint {
  Constraint constraint;
  Reason reason = Reason::Asm;
  DerivationData data;
  /// The format's trailing `index` attribute. Parsed and written back, never
  /// consulted by any check.
  std::int64_t legacy_index = -1;

  [[nodiscard]] const Multipliers* multipliers() const { return std::get_if<Multipliers>(&data); }
  [[nodiscard]] const Unsplit* unsplit() const { return std::get_if<Unsplit>(&data); }

  friend bool operator==(const DerivedConstraint&, const DerivedConstraint&) = default;
};

struct Certificate {
  Rtp rtp = RtpInfeasible{};
  std::vector<SolutionPoint> sol;
  std::vector<DerivedConstraint> der;

  [[nodiscard]] bool infeasible() const { return std::holds_alternative<RtpInfeasible>(rtp); }

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// d = m + |DER|.
std::size_t total_constraints(const Problem& problem, const Certificate& certificate);

class IndexOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// C_k for k in [1,d]: problem constraints first, then derived ones.
const Constraint& constraint_at(const Problem& problem, const Certificate& certificate, Index k);

/// Derived constraint C_k; requires m < k <= d.
const DerivedConstraint& derived_at(const Problem& problem, const Certificate& certificate,
                                    Index k);

/// Indices carrying a nonzero multiplier, ascending.
std::vector<Index> nz(const Multipliers& multipliers);

// ---------------------------------------------------------------------------
// Verdicts

struct AtSol {
  std::string name;  ///< empty when the failure is not tied to one point
  friend bool operator==(const AtSol&, const AtSol&) = default;
};
struct AtDer {
  Index k = 0;
  friend bool operator==(const AtDer&, const AtDer&) = default;
};
struct AtFinal {
  friend bool operator==(const AtFinal&, const AtFinal&) = default;
};
struct AtAttr {
  Index k = 0;
  friend bool operator==(const AtAttr&, const AtAttr&) = default;
};

using Location = std::variant<AtSol, AtDer, AtFinal, AtAttr>;

/// `Sol(name)`, `Sol(*)`, `Der(k)`, `Final` or `Attr(k)`.
std::string to_string(const Location& location);

struct Failure {
  Location location;
  std::string predicate_id;
  std::string message;

  friend bool operator==(const Failure&, const Failure&) = default;
};

/// Valid, or Invalid with the first failing sub-predicate.
struct Verdict {
  std::optional<Failure> failure;

  [[nodiscard]] bool valid() const { return !failure.has_value(); }
  static Verdict Valid() { return {}; }
  static Verdict Invalid(Failure f) { return {std::move(f)}; }

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Human-readable `a.x >= b` rendering using the problem's variable names.
std::string describe(const Problem& problem, const Constraint& constraint);

}  // namespace vipr
