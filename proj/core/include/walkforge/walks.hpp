#pragma once

#include <functional>
#include <vector>

#include "walkforge/csequence.hpp"
#include "walkforge/ordinal.hpp"

namespace walkforge {

// The minimal walk from beta down to alpha along a C-sequence:
//   gamma_0 = beta,   gamma_{l+1} = min(e_{gamma_l} \ alpha),
// stopping at the first k with gamma_k = alpha.  steps holds
// gamma_0, ..., gamma_k; rho() is the proper part gamma_0, ..., gamma_{k-1}.
struct WalkTrace {
  Ordinal beta;
  Ordinal alpha;
  std::vector<Ordinal> steps;

  std::size_t k() const { return steps.size() - 1; }
  std::vector<Ordinal> rho() const { return {steps.begin(), steps.end() - 1}; }
  // Last step before arrival; requires k() >= 1.
  const Ordinal& last_before_arrival() const { return steps[steps.size() - 2]; }
};

using LabelFn = std::function<Ordinal(const Ordinal&)>;

// Requires alpha <= beta < bound.  alpha == beta gives the trivial trace with
// k = 0.  Walks never consult e_alpha, so alpha = 0 is a valid target; the
// verification lemmas quantify over 0 < alpha only because several of them
// talk about alpha's own ladder.  Throws ProviderCorruption if the provider
// cannot step.
WalkTrace walk(const CSequence& cs, const Ordinal& beta, const Ordinal& alpha);

// Labelled walk: the l-th label is h(gamma_{l+1}), the image of the ordinal
// the walk enters at step l (which is a member of e_{gamma_l}).  Length k.
std::vector<Ordinal> walk_labels(const CSequence& cs, const LabelFn& h, const Ordinal& beta,
                                 const Ordinal& alpha);
std::vector<Ordinal> trace_labels(const WalkTrace& trace, const LabelFn& h);

// The least threshold a0 <= delta such that every walk target in [a0, delta)
// passes through delta's walk:
//   a0 = max{ sup(e_{gamma_l(beta,delta)} ∩ delta) + 1 : l < k(beta,delta),
//             delta not an accumulation point of e_{gamma_l(beta,delta)} },
// with sup ∅ = 0 and an empty max = 0.  Requires delta a limit, delta < beta.
Ordinal coherence_threshold(const CSequence& cs, const Ordinal& beta, const Ordinal& delta);

// Full-walk decomposition at an intermediate point: if gamma lies on the walk
// from beta to alpha then rho(beta,alpha) = rho(beta,gamma) ++ rho(gamma,alpha)
// and likewise for the labelled variants.  Returns whether both concatenation
// identities hold; throws Error if gamma is not on the walk.
bool check_decomposition_law(const CSequence& cs, const Ordinal& beta, const Ordinal& gamma,
                             const Ordinal& alpha, const LabelFn& h);

// Identity labelling, the default for traces without a colouring system.
Ordinal identity_label(const Ordinal& x);

}  // namespace walkforge
