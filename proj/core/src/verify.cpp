#include "walkforge/verify.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "walkforge/errors.hpp"

namespace walkforge {

namespace {

void record(std::uint64_t& count, std::vector<LemmaViolation>& out, std::string lemma,
            std::string where, std::string detail) {
  ++count;
  if (out.size() < kViolationCap)
    out.push_back({std::move(lemma), std::move(where), std::move(detail)});
}

std::string pair_str(const Ordinal& beta, const Ordinal& alpha) {
  return "beta=" + beta.str() + " alpha=" + alpha.str();
}

nlohmann::json violations_json(const std::vector<LemmaViolation>& violations) {
  nlohmann::json out = nlohmann::json::array();
  for (const LemmaViolation& v : violations)
    out.push_back({{"lemma", v.lemma}, {"where", v.where}, {"detail", v.detail}});
  return out;
}

}  // namespace

nlohmann::json WalkLemmaReport::to_json() const {
  return nlohmann::json{{"schema", "walkforge/1"},
                        {"kind", "walk-lemma-report"},
                        {"pairs", pairs},
                        {"checks", checks},
                        {"violation_count", violation_count},
                        {"violations", violations_json(violations)},
                        {"ok", ok()}};
}

nlohmann::json CoherenceReport::to_json() const {
  return nlohmann::json{{"schema", "walkforge/1"},
                        {"kind", "coherence-report"},
                        {"cases", cases},
                        {"alphas", alphas},
                        {"checks", checks},
                        {"violation_count", violation_count},
                        {"violations", violations_json(violations)},
                        {"ok", ok()}};
}

WalkLemmaReport verify_walk_lemmas(const CSequence& cs,
                                   const std::vector<std::pair<Ordinal, Ordinal>>& pairs,
                                   const LabelFn& h) {
  WalkLemmaReport report;
  for (const auto& [beta, alpha] : pairs) {
    ++report.pairs;
    const std::string where = pair_str(beta, alpha);
    auto fail = [&](const char* lemma, std::string detail) {
      record(report.violation_count, report.violations, lemma, where, std::move(detail));
    };
    try {
      WalkTrace trace = walk(cs, beta, alpha);
      std::size_t k = trace.k();

      ++report.checks;
      for (std::size_t l = 1; l <= k; ++l)
        if (trace.steps[l] < alpha || !(trace.steps[l] < beta)) {
          fail("step-bounds", "step " + std::to_string(l) + " = " + trace.steps[l].str() +
                                  " leaves [alpha, beta)");
          break;
        }

      ++report.checks;
      for (std::size_t l = 0; l < k; ++l)
        if (!(trace.steps[l + 1] < trace.steps[l])) {
          fail("strict-descent", "step " + std::to_string(l + 1) + " does not drop");
          break;
        }

      ++report.checks;
      if (trace.steps.back() != alpha) fail("arrival", "walk ends at " + trace.steps.back().str());

      ++report.checks;
      if (k >= 1 && !cs.contains(trace.last_before_arrival(), alpha))
        fail("arrival-membership", "alpha missing from the last ladder");

      ++report.checks;
      if (trace_labels(trace, h).size() != k) fail("label-length", "labels are not length k");

      for (std::size_t l = 0; l <= k; ++l) {
        ++report.checks;
        if (!check_decomposition_law(cs, beta, trace.steps[l], alpha, h)) {
          fail("split-law", "cutting at step " + std::to_string(l) + " = " +
                                trace.steps[l].str() + " breaks the concatenation");
          break;
        }
      }
    } catch (const Error& e) {
      fail("walk", e.what());
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

bool is_prefix(const std::vector<Ordinal>& small, const std::vector<Ordinal>& big) {
  return small.size() <= big.size() && std::equal(small.begin(), small.end(), big.begin());
}

}  // namespace

CoherenceReport verify_coherence(const CSequence& cs,
                                 const std::vector<std::pair<Ordinal, Ordinal>>& beta_delta,
                                 std::uint32_t alphas_per_case, Rng& rng, const LabelFn& h) {
  CoherenceReport report;
  for (const auto& [beta, delta] : beta_delta) {
    ++report.cases;
    const std::string where = "beta=" + beta.str() + " delta=" + delta.str();
    auto fail = [&](const char* lemma, const std::string& detail) {
      record(report.violation_count, report.violations, lemma, where, detail);
    };
    if (delta.classify() != Ordinal::Kind::Limit || !(delta < beta)) {
      fail("case", "needs a limit delta below beta");
      continue;
    }
    try {
      Ordinal a0 = coherence_threshold(cs, beta, delta);
      WalkTrace to_delta = walk(cs, beta, delta);
      std::size_t k = to_delta.k();
      bool at_nacc = k >= 1 && cs.nacc(to_delta.last_before_arrival(), delta);
      std::vector<Ordinal> delta_labels = trace_labels(to_delta, h);

      Ordinal lo = a0.is_zero() ? Ordinal::nat(1) : a0;
      std::set<Ordinal> targets;
      targets.insert(lo);
      if (successor(lo) < delta) targets.insert(successor(lo));
      for (const Ordinal& m : cs.members_below(delta, delta, alphas_per_case))
        if (!(m < lo) && targets.size() < alphas_per_case) targets.insert(m);
      for (std::uint32_t t = 0; t < 4 * alphas_per_case && targets.size() < alphas_per_case;
           ++t) {
        Ordinal cand = random_ordinal_below(delta, rng);
        if (!(cand < lo)) targets.insert(cand);
      }

      for (const Ordinal& alpha : targets) {
        ++report.alphas;
        const std::string at = where + " alpha=" + alpha.str();
        auto afail = [&](const char* lemma, const std::string& detail) {
          record(report.violation_count, report.violations, lemma, at, detail);
        };
        WalkTrace to_alpha = walk(cs, beta, alpha);

        ++report.checks;
        if (to_alpha.k() < k) {
          afail("shared-prefix", "the walk is too short to share the prefix");
          continue;
        }
        bool same = true;
        for (std::size_t l = 0; l < k; ++l)
          if (to_alpha.steps[l] != to_delta.steps[l]) {
            afail("shared-prefix", "walks split at step " + std::to_string(l));
            same = false;
            break;
          }
        if (!same) continue;

        ++report.checks;
        bool passes_through = to_alpha.steps[k] == delta;
        bool not_below = !(to_alpha.steps[k] < delta);
        if (at_nacc != passes_through || passes_through != not_below)
          afail("arrival-equivalence",
                std::string("ladder says ") + (at_nacc ? "through" : "around") +
                    ", walk says " + to_alpha.steps[k].str());

        ++report.checks;
        if (!is_prefix(to_delta.rho(), to_alpha.rho()))
          afail("rho-prefix", "rho(beta, delta) is not an initial segment");

        if (at_nacc) {
          ++report.checks;
          if (!is_prefix(to_delta.steps, to_alpha.steps))
            afail("through-prefix", "the full delta-walk is not an initial segment");
          ++report.checks;
          if (!is_prefix(delta_labels, trace_labels(to_alpha, h)))
            afail("label-prefix", "the delta-walk labels are not an initial segment");
        }
      }
    } catch (const Error& e) {
      fail("walk", e.what());
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

std::vector<std::pair<Ordinal, Ordinal>> all_pairs_below(std::uint64_t n) {
  std::vector<std::pair<Ordinal, Ordinal>> pairs;
  for (std::uint64_t beta = 2; beta < n; ++beta)
    for (std::uint64_t alpha = 1; alpha < beta; ++alpha)
      pairs.emplace_back(Ordinal::nat(beta), Ordinal::nat(alpha));
  return pairs;
}

Ordinal random_ordinal_below(const Ordinal& bound, Rng& rng) {
  if (bound.is_zero()) throw Error("no ordinal lies below zero");
  if (bound.is_nat()) return Ordinal::nat(rng.below(bound.as_nat()));
  Ordinal x = bound;
  for (int depth = 0; depth < 64; ++depth) {
    switch (x.classify()) {
      case Ordinal::Kind::Zero:
        return x;
      case Ordinal::Kind::Successor:
        if (x.is_nat()) return Ordinal::nat(rng.below(x.as_nat() + 1));
        x = predecessor(x);
        break;
      case Ordinal::Kind::Limit:
        x = fundamental_sequence(x, 1 + static_cast<std::uint64_t>(rng.below(8)));
        break;
    }
    if (rng.below(3) == 0) return x;
  }
  return x;
}

std::vector<std::pair<Ordinal, Ordinal>> sample_pairs_below(const Ordinal& bound,
                                                            std::size_t count, Rng& rng) {
  if (!(Ordinal::nat(2) < bound)) throw ConfigError("bound leaves no pairs to sample");
  std::vector<std::pair<Ordinal, Ordinal>> pairs;
  while (pairs.size() < count) {
    Ordinal beta = random_ordinal_below(bound, rng);
    if (beta < Ordinal::nat(2)) continue;
    Ordinal alpha = random_ordinal_below(beta, rng);
    if (alpha.is_zero()) continue;
    pairs.emplace_back(std::move(beta), std::move(alpha));
  }
  return pairs;
}

std::vector<std::pair<Ordinal, Ordinal>> sample_limit_pairs_below(const Ordinal& bound,
                                                                  std::size_t count, Rng& rng) {
  const Ordinal omega = Ordinal::omega();
  if (!(successor(omega) < bound))
    throw ConfigError("bound leaves no limit pairs to sample");
  std::vector<std::pair<Ordinal, Ordinal>> pairs;
  std::uint64_t dry = 0;
  while (pairs.size() < count) {
    Ordinal beta = random_ordinal_below(bound, rng);
    if (!(omega < beta)) {
      if (++dry > 256 * (count + 1)) throw ConfigError("bound is too tight to sample");
      continue;
    }
    Ordinal delta = omega;  // always a limit below beta
    for (int t = 0; t < 16; ++t) {
      Ordinal cand = random_ordinal_below(beta, rng);
      if (cand.classify() == Ordinal::Kind::Limit) {
        delta = std::move(cand);
        break;
      }
    }
    pairs.emplace_back(std::move(beta), std::move(delta));
  }
  return pairs;
}

}  // namespace walkforge
