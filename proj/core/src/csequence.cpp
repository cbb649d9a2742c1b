#include "walkforge/csequence.hpp"

#include <algorithm>
#include <utility>

#include <nlohmann/json.hpp>

#include "walkforge/errors.hpp"
#include "walkforge/json_io.hpp"
#include "walkforge/rng.hpp"

namespace walkforge {

namespace {

// Ladders are scanned linearly; a well-formed ladder reaches any target far
// sooner than this at the scales the library works at.
constexpr std::size_t kLadderGuard = 1u << 22;

void require_pair(const Ordinal& beta, const Ordinal& alpha) {
  if (!(alpha < beta))
    throw Error("min_at_least requires alpha < beta, got alpha=" + alpha.str() +
                " beta=" + beta.str());
}

}  // namespace

bool CSequence::nacc(const Ordinal& gamma, const Ordinal& delta) const {
  if (!contains(gamma, delta)) return false;
  std::optional<Ordinal> s = sup_below(gamma, delta);
  return !(s && *s == delta);
}

// ---------------------------------------------------------------------------
// CanonicalLadder

CanonicalLadder::CanonicalLadder(Ordinal bound) : bound_(std::move(bound)) {
  if (bound_.is_zero()) throw ConfigError("canonical model needs a nonzero bound");
}

Ordinal CanonicalLadder::min_at_least(const Ordinal& beta, const Ordinal& alpha) const {
  require_pair(beta, alpha);
  if (beta.classify() == Ordinal::Kind::Successor) return predecessor(beta);
  for (std::size_t n = 0; n < kLadderGuard; ++n) {
    Ordinal x = fundamental_sequence(beta, n);
    if (x >= alpha) return x;
  }
  throw ProviderCorruption("ladder of " + beta.str() + " never reached " + alpha.str());
}

std::optional<Ordinal> CanonicalLadder::sup_below(const Ordinal& gamma,
                                                  const Ordinal& delta) const {
  switch (gamma.classify()) {
    case Ordinal::Kind::Zero:
      return std::nullopt;
    case Ordinal::Kind::Successor: {
      Ordinal p = predecessor(gamma);
      if (p < delta) return p;
      return std::nullopt;
    }
    case Ordinal::Kind::Limit: {
      std::optional<Ordinal> last;
      for (std::size_t n = 0; n < kLadderGuard; ++n) {
        Ordinal x = fundamental_sequence(gamma, n);
        if (!(x < delta)) return last;
        last = std::move(x);
      }
      throw ProviderCorruption("ladder of " + gamma.str() + " stuck below " + delta.str());
    }
  }
  return std::nullopt;
}

bool CanonicalLadder::contains(const Ordinal& gamma, const Ordinal& x) const {
  switch (gamma.classify()) {
    case Ordinal::Kind::Zero:
      return false;
    case Ordinal::Kind::Successor:
      return x == predecessor(gamma);
    case Ordinal::Kind::Limit: {
      if (!(x < gamma)) return false;
      for (std::size_t n = 0; n < kLadderGuard; ++n) {
        Ordinal y = fundamental_sequence(gamma, n);
        if (y == x) return true;
        if (y > x) return false;
      }
      throw ProviderCorruption("ladder of " + gamma.str() + " stuck below " + x.str());
    }
  }
  return false;
}

std::vector<Ordinal> CanonicalLadder::members_below(const Ordinal& gamma, const Ordinal& cap,
                                                    std::size_t max_count) const {
  std::vector<Ordinal> out;
  if (max_count == 0) return out;
  switch (gamma.classify()) {
    case Ordinal::Kind::Zero:
      break;
    case Ordinal::Kind::Successor: {
      Ordinal p = predecessor(gamma);
      if (p < cap) out.push_back(std::move(p));
      break;
    }
    case Ordinal::Kind::Limit:
      for (std::size_t n = 0; n < kLadderGuard && out.size() < max_count; ++n) {
        Ordinal x = fundamental_sequence(gamma, n);
        if (!(x < cap)) break;
        out.push_back(std::move(x));
      }
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// FiniteSuccessor

FiniteSuccessor::FiniteSuccessor(std::uint64_t n) : bound_(Ordinal::nat(n)) {
  if (n == 0) throw ConfigError("finite model needs a positive size");
}

Ordinal FiniteSuccessor::min_at_least(const Ordinal& beta, const Ordinal& alpha) const {
  require_pair(beta, alpha);
  return Ordinal::nat(beta.as_nat() - 1);
}

std::optional<Ordinal> FiniteSuccessor::sup_below(const Ordinal& gamma,
                                                  const Ordinal& delta) const {
  std::uint64_t g = gamma.as_nat();
  if (g == 0) return std::nullopt;
  if (Ordinal::nat(g - 1) < delta) return Ordinal::nat(g - 1);
  return std::nullopt;
}

bool FiniteSuccessor::contains(const Ordinal& gamma, const Ordinal& x) const {
  std::uint64_t g = gamma.as_nat();
  return g > 0 && x.is_nat() && x.as_nat() == g - 1;
}

std::vector<Ordinal> FiniteSuccessor::members_below(const Ordinal& gamma, const Ordinal& cap,
                                                    std::size_t max_count) const {
  std::vector<Ordinal> out;
  std::uint64_t g = gamma.as_nat();
  if (max_count > 0 && g > 0 && Ordinal::nat(g - 1) < cap) out.push_back(Ordinal::nat(g - 1));
  return out;
}

// ---------------------------------------------------------------------------
// ExplicitTable

ExplicitTable::ExplicitTable(std::uint64_t domain,
                             std::map<std::uint64_t, std::vector<std::uint64_t>> rows)
    : domain_(domain), bound_(Ordinal::nat(domain)) {
  if (domain == 0) throw ConfigError("explicit table needs a positive domain");
  rows_.resize(domain);
  for (auto& [alpha, members] : rows) {
    if (alpha >= domain)
      throw ConfigError("table row " + std::to_string(alpha) + " outside domain");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    rows_[alpha] = std::move(members);
  }
}

const std::vector<std::uint64_t>& ExplicitTable::row(std::uint64_t alpha) const {
  if (alpha >= domain_) throw Error("table row " + std::to_string(alpha) + " outside domain");
  return rows_[alpha];
}

Ordinal ExplicitTable::min_at_least(const Ordinal& beta, const Ordinal& alpha) const {
  require_pair(beta, alpha);
  const auto& r = row(beta.as_nat());
  auto it = std::lower_bound(r.begin(), r.end(), alpha.as_nat());
  if (it == r.end())
    throw ProviderCorruption("e_" + beta.str() + " has no member >= " + alpha.str());
  return Ordinal::nat(*it);
}

std::optional<Ordinal> ExplicitTable::sup_below(const Ordinal& gamma,
                                                const Ordinal& delta) const {
  const auto& r = row(gamma.as_nat());
  if (!delta.is_nat()) return r.empty() ? std::nullopt : std::optional(Ordinal::nat(r.back()));
  auto it = std::lower_bound(r.begin(), r.end(), delta.as_nat());
  if (it == r.begin()) return std::nullopt;
  return Ordinal::nat(*std::prev(it));
}

bool ExplicitTable::contains(const Ordinal& gamma, const Ordinal& x) const {
  if (!x.is_nat()) return false;
  const auto& r = row(gamma.as_nat());
  return std::binary_search(r.begin(), r.end(), x.as_nat());
}

std::vector<Ordinal> ExplicitTable::members_below(const Ordinal& gamma, const Ordinal& cap,
                                                  std::size_t max_count) const {
  std::vector<Ordinal> out;
  for (std::uint64_t m : row(gamma.as_nat())) {
    if (out.size() >= max_count || !(Ordinal::nat(m) < cap)) break;
    out.push_back(Ordinal::nat(m));
  }
  return out;
}

ExplicitTable ExplicitTable::from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("schema", "") != "walkforge/1" ||
      j.value("kind", "") != "csequence")
    throw ConfigError("not a walkforge/1 csequence document");
  if (!j.contains("domain") || !is_natural(j["domain"]))
    throw ConfigError("csequence document needs an unsigned \"domain\"");
  std::uint64_t domain = j["domain"].get<std::uint64_t>();
  if (!j.contains("e") || !j["e"].is_object())
    throw ConfigError("csequence document needs an \"e\" object");
  std::map<std::uint64_t, std::vector<std::uint64_t>> rows;
  for (const auto& [key, value] : j["e"].items()) {
    std::uint64_t alpha = parse_ordinal(key).as_nat();
    if (!value.is_array()) throw ConfigError("row e_" + key + " is not an array");
    std::vector<std::uint64_t> members;
    for (const auto& m : value) {
      if (is_natural(m))
        members.push_back(m.get<std::uint64_t>());
      else if (m.is_string())
        members.push_back(parse_ordinal(m.get<std::string>()).as_nat());
      else
        throw ConfigError("row e_" + key + " has a non-ordinal member");
    }
    rows[alpha] = std::move(members);
  }
  return ExplicitTable(domain, std::move(rows));
}

nlohmann::json ExplicitTable::to_json() const {
  nlohmann::json e = nlohmann::json::object();
  for (std::uint64_t alpha = 0; alpha < domain_; ++alpha)
    e[std::to_string(alpha)] = rows_[alpha];
  return nlohmann::json{{"schema", "walkforge/1"},
                        {"kind", "csequence"},
                        {"domain", domain_},
                        {"e", std::move(e)}};
}

ExplicitTable random_explicit_table(std::uint64_t domain, Rng& rng) {
  std::map<std::uint64_t, std::vector<std::uint64_t>> rows;
  for (std::uint64_t alpha = 1; alpha < domain; ++alpha) {
    std::vector<std::uint64_t> members{alpha - 1};
    for (std::uint64_t m = 0; m + 1 < alpha; ++m)
      if (rng.below(2) == 0) members.push_back(m);
    rows[alpha] = std::move(members);
  }
  return ExplicitTable(domain, std::move(rows));
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void flag(CSequenceReport& report, const Ordinal& alpha, std::string clause,
          std::string detail) {
  report.violations.push_back(
      CSequenceViolation{alpha.str(), std::move(clause), std::move(detail)});
}

}  // namespace

CSequenceReport validate_csequence(const CSequence& cs, const std::vector<Ordinal>& sample,
                                   const CSequenceValidationOptions& options) {
  CSequenceReport report;

  if (cs.kind() == CSequence::Kind::Table) {
    const auto& table = dynamic_cast<const ExplicitTable&>(cs);
    for (std::uint64_t a = 0; a < table.domain(); ++a) {
      Ordinal alpha = Ordinal::nat(a);
      const auto& r = table.row(a);
      ++report.checks;
      if (a == 0) {
        if (!r.empty()) flag(report, alpha, "e_0 empty", "found " + std::to_string(r.size()) + " members");
        continue;
      }
      if (r.empty()) {
        flag(report, alpha, "row nonempty", "e_alpha is empty for alpha > 0");
        continue;
      }
      if (r.back() >= a)
        flag(report, alpha, "row bounded", std::to_string(r.back()) + " is not below alpha");
      if (!std::binary_search(r.begin(), r.end(), a - 1))
        flag(report, alpha, "predecessor member", std::to_string(a - 1) + " missing from e_alpha");
      for (std::uint64_t m : r)
        if (options.avoid.count(m))
          flag(report, alpha, "avoid set", std::to_string(m) + " lies in the avoid set");
    }
    return report;
  }

  for (const Ordinal& alpha : sample) {
    if (!(alpha < cs.bound())) throw Error("sample point " + alpha.str() + " outside domain");
    ++report.checks;
    switch (alpha.classify()) {
      case Ordinal::Kind::Zero: {
        if (!cs.members_below(alpha, cs.bound(), 1).empty())
          flag(report, alpha, "e_0 empty", "zero has a ladder member");
        break;
      }
      case Ordinal::Kind::Successor: {
        Ordinal p = predecessor(alpha);
        auto members = cs.members_below(alpha, cs.bound(), 2);
        if (members.size() != 1 || members[0] != p)
          flag(report, alpha, "successor singleton", "e_alpha != {alpha - 1}");
        else if (!cs.contains(alpha, p))
          flag(report, alpha, "successor member", "alpha - 1 not reported as a member");
        break;
      }
      case Ordinal::Kind::Limit: {
        auto ladder = cs.members_below(alpha, alpha, options.ladder_probe);
        if (ladder.empty()) {
          flag(report, alpha, "ladder nonempty", "limit with an empty ladder");
          break;
        }
        for (std::size_t i = 0; i + 1 < ladder.size(); ++i)
          if (!(ladder[i] < ladder[i + 1])) {
            flag(report, alpha, "ladder order", "ladder not strictly increasing");
            break;
          }
        if (!(ladder.back() < alpha))
          flag(report, alpha, "ladder bounded", "ladder member not below alpha");
        if (!cs.contains(alpha, ladder.front()))
          flag(report, alpha, "ladder member", "first rung not reported as a member");
        for (const Ordinal& gamma : sample) {
          if (!(gamma < alpha)) continue;
          Ordinal witness = cs.min_at_least(alpha, successor(gamma));
          if (!(witness > gamma)) {
            flag(report, alpha, "ladder cofinal", "no rung above " + gamma.str());
            break;
          }
        }
        break;
      }
    }
  }
  return report;
}

}  // namespace walkforge
