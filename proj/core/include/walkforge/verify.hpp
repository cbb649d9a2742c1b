#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "walkforge/csequence.hpp"
#include "walkforge/rng.hpp"
#include "walkforge/walks.hpp"

namespace walkforge {

inline constexpr std::size_t kViolationCap = 32;

struct LemmaViolation {
  std::string lemma;   // the law that failed
  std::string where;   // which pair / target
  std::string detail;
};

struct WalkLemmaReport {
  std::uint64_t pairs = 0;
  std::uint64_t checks = 0;
  std::uint64_t violation_count = 0;
  std::vector<LemmaViolation> violations;  // first kViolationCap only

  bool ok() const { return violation_count == 0; }
  nlohmann::json to_json() const;
};

// For every pair (beta, alpha), 0 < alpha < beta: the walk terminates, every
// proper step lies in [alpha, beta), steps decrease strictly, the walk ends
// at alpha with alpha a member of the last ladder, the label sequence has
// length k, and cutting the walk at any step splits rho (and its labels) into
// the two partial walks.  Provider failures are recorded, not propagated.
WalkLemmaReport verify_walk_lemmas(const CSequence& cs,
                                   const std::vector<std::pair<Ordinal, Ordinal>>& pairs,
                                   const LabelFn& h = identity_label);

struct CoherenceReport {
  std::uint64_t cases = 0;   // (beta, delta) pairs examined
  std::uint64_t alphas = 0;  // walk targets tested across all cases
  std::uint64_t checks = 0;
  std::uint64_t violation_count = 0;
  std::vector<LemmaViolation> violations;

  bool ok() const { return violation_count == 0; }
  nlohmann::json to_json() const;
};

// The threshold law at limit delta < beta: for every alpha in
// [coherence_threshold(beta, delta), delta),
//   (i)   the first k(beta, delta) steps of both walks agree,
//   (ii)  delta sits in its last ladder as a non-accumulation member iff the
//         alpha-walk passes through delta iff its k-th step is not below delta,
//   (iii) rho(beta, delta) is an initial segment of rho(beta, alpha),
//   (iv)  in the non-accumulation case the whole delta-walk, steps and labels,
//         is an initial segment of the alpha-walk's.
// Targets are a mix of the threshold itself, ladder points of delta, and
// seeded random draws.
CoherenceReport verify_coherence(const CSequence& cs,
                                 const std::vector<std::pair<Ordinal, Ordinal>>& beta_delta,
                                 std::uint32_t alphas_per_case, Rng& rng,
                                 const LabelFn& h = identity_label);

// Pair generators for the suites.
std::vector<std::pair<Ordinal, Ordinal>> all_pairs_below(std::uint64_t n);
std::vector<std::pair<Ordinal, Ordinal>> sample_pairs_below(const Ordinal& bound,
                                                            std::size_t count, Rng& rng);
// (beta, delta) with delta a limit ordinal below beta.
std::vector<std::pair<Ordinal, Ordinal>> sample_limit_pairs_below(const Ordinal& bound,
                                                                  std::size_t count, Rng& rng);

// A draw from [0, bound), biased towards values sharing normal-form prefixes
// with the bound so that walk-coherent pairs show up in samples.
Ordinal random_ordinal_below(const Ordinal& bound, Rng& rng);

}  // namespace walkforge
