#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "vipr/algebra.hpp"
#include "vipr/model.hpp"

namespace vipr {

/// Constants derived from the problem sense and the relation to prove.
struct RtpFlags {
  bool min_sense = true;       ///< P: sense is min
  bool has_range = false;      ///< R: RTP is not infeasible
  bool prove_upper = false;    ///< PUB: R and ub finite
  bool prove_lower = false;    ///< PLB: R and lb finite
  Rational upper;              ///< U: ub when PUB, else 0
  Rational lower;              ///< L: lb when PLB, else 0
};

RtpFlags rtp_flags(const Problem& problem, const Certificate& certificate);

/// Precomputed assumption sets A(k) for k in [1,d].
///
/// Problem constraints have no assumptions. An assumption derivation depends
/// on itself; lin/rnd take the union over earlier multiplier indices; uns
/// removes the discharged assumptions from both branches; sol has none.
struct AssumptionSets {
  std::vector<std::vector<Index>> sets;  ///< sets[k-1] = A(k), ascending
  std::vector<bool> index_violation;     ///< uns referencing a branch at or after k
  std::set<Index> assumptions;           ///< S: indices with reason asm

  [[nodiscard]] const std::vector<Index>& of(Index k) const { return sets.at(k - 1); }
};

AssumptionSets compute_assumption_sets(const Problem& problem, const Certificate& certificate);

/// Integrality on I plus every problem constraint at `point`.
bool phi_feas(const Problem& problem, const SolutionPoint& point);

/// First SOL-side failure, or nothing when SOL-validity holds.
std::optional<Failure> check_sol(const Problem& problem, const Certificate& certificate,
                                 const RtpFlags& flags, bool collect_all = false,
                                 std::vector<Failure>* all = nullptr);

bool phi_sol(const Problem& problem, const Certificate& certificate, const RtpFlags& flags);

/// Every multiplier index lies strictly before k.
bool phi_prv(Index k, const Multipliers& data);

/// Failure of derivation k (m < k <= d), or nothing when it is valid.
std::optional<Failure> phi_der_k(const Problem& problem, const Certificate& certificate,
                                 const AssumptionSets& asets, Index k);

class EmptyConstraintSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The conclusion on C_d required by the relation to prove. Throws
/// EmptyConstraintSystem when d = 0 and a conclusion is required.
std::optional<Failure> check_final(const Problem& problem, const Certificate& certificate,
                                   const AssumptionSets& asets, const RtpFlags& flags);

/// Conjunction of every phi_der_k and the final conclusion, evaluated
/// sequentially.
std::optional<Failure> phi_der(const Problem& problem, const Certificate& certificate,
                               const AssumptionSets& asets, const RtpFlags& flags);

/// `c.x <= value` for min problems, `c.x >= value` for max problems.
Constraint objective_bound(const Problem& problem, const Rational& value, Sense sense);

struct CheckOptions {
  unsigned jobs = 1;
  /// Keep evaluating after the first failure and report all of them.
  bool diagnose = false;
};

struct CheckReport {
  Verdict verdict;
  std::vector<Failure> failures;  ///< every failure when diagnosing, else at most one
  std::size_t solutions_checked = 0;
  std::size_t derivations_checked = 0;
};

/// Evaluates SOL-validity and DER-validity. The reported failure is the first
/// in the order: SOL points, derivations by ascending k, then the final
/// conclusion, independent of the worker count.
CheckReport check_certificate_report(const Problem& problem, const Certificate& certificate,
                                     const CheckOptions& options = {});

Verdict check_certificate(const Problem& problem, const Certificate& certificate,
                          const CheckOptions& options = {});

}  // namespace vipr
