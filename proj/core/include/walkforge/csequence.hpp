#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "walkforge/ordinal.hpp"

namespace walkforge {

// A C-sequence assigns to every ordinal alpha in the domain a set
// e_alpha ⊆ alpha with e_0 = ∅, e_{beta+1} ∋ beta, and (for limits) an
// unbounded subset of alpha.  Providers answer set queries without ever
// materializing an infinite e_alpha.  They are immutable after construction
// and safe to share between threads.
class CSequence {
 public:
  enum class Kind { Canonical, FiniteSuccessor, Table };

  virtual ~CSequence() = default;

  virtual Kind kind() const = 0;

  // Domain is the half-open interval [0, bound).
  virtual const Ordinal& bound() const = 0;

  // Least member of e_beta that is >= alpha.  Requires alpha < beta.
  // Throws ProviderCorruption when no such member exists (a well-formed
  // provider always has one, because beta's immediate predecessor region
  // meets [alpha, beta)).
  virtual Ordinal min_at_least(const Ordinal& beta, const Ordinal& alpha) const = 0;

  // sup(e_gamma ∩ delta); nullopt when the intersection is empty.  For the
  // providers here the intersection is finite, so the sup is its maximum.
  virtual std::optional<Ordinal> sup_below(const Ordinal& gamma,
                                           const Ordinal& delta) const = 0;

  virtual bool contains(const Ordinal& gamma, const Ordinal& x) const = 0;

  // Members of e_gamma ∩ cap in increasing order, at most max_count of them.
  virtual std::vector<Ordinal> members_below(const Ordinal& gamma, const Ordinal& cap,
                                             std::size_t max_count) const = 0;

  // delta ∈ e_gamma and delta is not an accumulation point of e_gamma,
  // i.e. sup(e_gamma ∩ delta) < delta (or the intersection is empty).
  bool nacc(const Ordinal& gamma, const Ordinal& delta) const;
};

// e_0 = ∅, e_{beta+1} = {beta}, and for limit alpha the canonical ladder
// { alpha[n] : n < w } induced by the fundamental sequences.
class CanonicalLadder final : public CSequence {
 public:
  explicit CanonicalLadder(Ordinal bound);

  Kind kind() const override { return Kind::Canonical; }
  const Ordinal& bound() const override { return bound_; }
  Ordinal min_at_least(const Ordinal& beta, const Ordinal& alpha) const override;
  std::optional<Ordinal> sup_below(const Ordinal& gamma, const Ordinal& delta) const override;
  bool contains(const Ordinal& gamma, const Ordinal& x) const override;
  std::vector<Ordinal> members_below(const Ordinal& gamma, const Ordinal& cap,
                                     std::size_t max_count) const override;

 private:
  Ordinal bound_;
};

// The all-successor model on {0, ..., n-1}: e_0 = ∅, e_{k+1} = {k}.
class FiniteSuccessor final : public CSequence {
 public:
  explicit FiniteSuccessor(std::uint64_t n);

  Kind kind() const override { return Kind::FiniteSuccessor; }
  const Ordinal& bound() const override { return bound_; }
  Ordinal min_at_least(const Ordinal& beta, const Ordinal& alpha) const override;
  std::optional<Ordinal> sup_below(const Ordinal& gamma, const Ordinal& delta) const override;
  bool contains(const Ordinal& gamma, const Ordinal& x) const override;
  std::vector<Ordinal> members_below(const Ordinal& gamma, const Ordinal& cap,
                                     std::size_t max_count) const override;

 private:
  Ordinal bound_;
};

// An explicit finite table over {0, ..., domain-1}.  The intended invariant
// (checked by validate_csequence, not by the constructor; walks detect a
// broken table via ProviderCorruption) is that e_alpha is a nonempty subset
// of alpha containing alpha-1 for every alpha > 0.
class ExplicitTable final : public CSequence {
 public:
  ExplicitTable(std::uint64_t domain, std::map<std::uint64_t, std::vector<std::uint64_t>> rows);

  static ExplicitTable from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  Kind kind() const override { return Kind::Table; }
  const Ordinal& bound() const override { return bound_; }
  Ordinal min_at_least(const Ordinal& beta, const Ordinal& alpha) const override;
  std::optional<Ordinal> sup_below(const Ordinal& gamma, const Ordinal& delta) const override;
  bool contains(const Ordinal& gamma, const Ordinal& x) const override;
  std::vector<Ordinal> members_below(const Ordinal& gamma, const Ordinal& cap,
                                     std::size_t max_count) const override;

  std::uint64_t domain() const { return domain_; }
  const std::vector<std::uint64_t>& row(std::uint64_t alpha) const;

 private:
  std::uint64_t domain_;
  std::vector<std::vector<std::uint64_t>> rows_;  // sorted, deduplicated
  Ordinal bound_;
};

class Rng;

// A random well-formed table on {0, ..., domain-1}: every row alpha > 0 is
// {alpha-1} plus a random subset of [0, alpha-1), so walks through it always
// terminate while taking provider-specific detours.
ExplicitTable random_explicit_table(std::uint64_t domain, Rng& rng);

struct CSequenceViolation {
  std::string alpha;   // canonical ordinal string
  std::string clause;  // which requirement failed
  std::string detail;
};

struct CSequenceReport {
  std::uint64_t checks = 0;
  std::vector<CSequenceViolation> violations;
  bool ok() const { return violations.empty(); }
};

struct CSequenceValidationOptions {
  // Members of every e_alpha must avoid this set (empty = no constraint).
  std::set<std::uint64_t> avoid;
  // How far ladders are enumerated when checking limit clauses.
  std::size_t ladder_probe = 32;
};

// Checks the defining clauses of a C-sequence on the sampled ordinals:
// e_0 = ∅; e_{beta+1} = {beta} (tables: beta ∈ e_{beta+1} ⊆ beta+1, nonempty);
// for limits, the ladder is strictly increasing, below alpha, and reaches
// above every sampled ordinal < alpha; table rows stay clear of the avoid
// set.  Pure queries only; nothing is mutated.
CSequenceReport validate_csequence(const CSequence& cs, const std::vector<Ordinal>& sample,
                                   const CSequenceValidationOptions& options = {});

}  // namespace walkforge
