#include "walkforge/walks.hpp"

#include "walkforge/errors.hpp"

namespace walkforge {

namespace {

// Walks strictly decrease, but a guard costs nothing and turns a broken
// provider into a diagnosis instead of a hang.
constexpr std::size_t kWalkGuard = 1u << 22;

}  // namespace

Ordinal identity_label(const Ordinal& x) { return x; }

WalkTrace walk(const CSequence& cs, const Ordinal& beta, const Ordinal& alpha) {
  if (!(alpha <= beta))
    throw Error("walk requires alpha <= beta, got alpha=" + alpha.str() +
                " beta=" + beta.str());
  if (!(beta < cs.bound()))
    throw Error("walk start " + beta.str() + " outside domain bound " + cs.bound().str());
  WalkTrace trace{beta, alpha, {beta}};
  while (trace.steps.back() != alpha) {
    if (trace.steps.size() > kWalkGuard)
      throw ProviderCorruption("walk from " + beta.str() + " to " + alpha.str() +
                               " failed to terminate");
    Ordinal next = cs.min_at_least(trace.steps.back(), alpha);
    if (!(next < trace.steps.back()))
      throw ProviderCorruption("walk step did not decrease at " + trace.steps.back().str());
    trace.steps.push_back(std::move(next));
  }
  return trace;
}

std::vector<Ordinal> trace_labels(const WalkTrace& trace, const LabelFn& h) {
  std::vector<Ordinal> labels;
  labels.reserve(trace.k());
  for (std::size_t l = 1; l < trace.steps.size(); ++l) labels.push_back(h(trace.steps[l]));
  return labels;
}

std::vector<Ordinal> walk_labels(const CSequence& cs, const LabelFn& h, const Ordinal& beta,
                                 const Ordinal& alpha) {
  return trace_labels(walk(cs, beta, alpha), h);
}

Ordinal coherence_threshold(const CSequence& cs, const Ordinal& beta, const Ordinal& delta) {
  if (delta.classify() != Ordinal::Kind::Limit)
    throw Error("coherence threshold needs a limit target, got " + delta.str());
  WalkTrace trace = walk(cs, beta, delta);
  Ordinal a0;  // empty max
  for (std::size_t l = 0; l < trace.k(); ++l) {
    const Ordinal& gamma = trace.steps[l];
    std::optional<Ordinal> sup = cs.sup_below(gamma, delta);
    if (sup && *sup == delta) continue;  // delta accumulates in e_gamma: no finite threshold
    Ordinal candidate = successor(sup ? *sup : Ordinal{});
    if (a0 < candidate) a0 = std::move(candidate);
  }
  return a0;
}

bool check_decomposition_law(const CSequence& cs, const Ordinal& beta, const Ordinal& gamma,
                             const Ordinal& alpha, const LabelFn& h) {
  WalkTrace whole = walk(cs, beta, alpha);
  std::size_t at = whole.steps.size();
  for (std::size_t l = 0; l < whole.steps.size(); ++l)
    if (whole.steps[l] == gamma) {
      at = l;
      break;
    }
  if (at == whole.steps.size())
    throw Error(gamma.str() + " is not a proper step of the walk from " + beta.str() + " to " +
                alpha.str());

  WalkTrace upper = walk(cs, beta, gamma);
  WalkTrace lower = walk(cs, gamma, alpha);
  std::vector<Ordinal> glued = upper.rho();
  std::vector<Ordinal> tail = lower.rho();
  glued.insert(glued.end(), tail.begin(), tail.end());
  if (glued != whole.rho()) return false;

  std::vector<Ordinal> glued_labels = trace_labels(upper, h);
  std::vector<Ordinal> tail_labels = trace_labels(lower, h);
  glued_labels.insert(glued_labels.end(), tail_labels.begin(), tail_labels.end());
  return glued_labels == trace_labels(whole, h);
}

}  // namespace walkforge
