// walkforge: ordinal arithmetic, minimal walks, the two walk colourings, and
// the partition-property checkers behind one JSON-speaking command line.
//
// Exit codes, uniformly: 0 when the requested property held (or the command
// is a plain computation), 1 when a violation or counterexample was found,
// 2 on usage and configuration errors.  Identical invocations produce
// byte-identical output; every randomized report records its seed and the
// generator name, so a report alone is enough to replay a run.

#include <cstdio>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "walkforge/colouring.hpp"
#include "walkforge/csequence.hpp"
#include "walkforge/dfunction.hpp"
#include "walkforge/errors.hpp"
#include "walkforge/json_io.hpp"
#include "walkforge/ordinal.hpp"
#include "walkforge/partition.hpp"
#include "walkforge/rng.hpp"
#include "walkforge/verify.hpp"
#include "walkforge/walks.hpp"

namespace {

using namespace walkforge;

constexpr int kHeld = 0;
constexpr int kViolated = 1;
constexpr int kUsage = 2;

// ---------------------------------------------------------------------------
// Provider plumbing

// Where walks run: a named model ("finite:N" on the all-successor table,
// "cnf:EXPR" on the canonical ladders below the parsed bound) or an explicit
// table file, which wins when both are given.
struct ProviderOptions {
  std::string model;
  std::string table_path;
};

void add_provider_flags(CLI::App* cmd, ProviderOptions& opts) {
  cmd->add_option("--model", opts.model, "domain: finite:N or cnf:EXPR");
  cmd->add_option("--csequence", opts.table_path, "explicit table file (overrides --model)");
}

std::uint64_t parse_nat(const std::string& text, const std::string& what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw ConfigError(what + " must be a natural number, got \"" + text + "\"");
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw ConfigError(what + " is out of range: \"" + text + "\"");
  }
}

std::unique_ptr<CSequence> make_provider(const ProviderOptions& opts) {
  if (!opts.table_path.empty())
    return std::make_unique<ExplicitTable>(ExplicitTable::from_json(load_json(opts.table_path)));
  if (opts.model.empty())
    throw ConfigError("pick a provider: --model finite:N, --model cnf:EXPR, or --csequence FILE");
  const auto colon = opts.model.find(':');
  const std::string head = opts.model.substr(0, colon);
  const std::string payload = colon == std::string::npos ? "" : opts.model.substr(colon + 1);
  if (head == "finite") return std::make_unique<FiniteSuccessor>(parse_nat(payload, "finite:N"));
  if (head == "cnf") return std::make_unique<CanonicalLadder>(parse_ordinal(payload));
  throw ConfigError("unknown model \"" + opts.model + "\" (finite:N or cnf:EXPR)");
}

nlohmann::json provider_echo(const ProviderOptions& opts) {
  nlohmann::json j = nlohmann::json::object();
  if (!opts.table_path.empty())
    j["csequence"] = opts.table_path;
  else
    j["model"] = opts.model;
  return j;
}

// ---------------------------------------------------------------------------
// Output plumbing

void emit(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty())
    std::fputs(dump_json(j).c_str(), stdout);
  else
    save_json(j, out_path);
}

void line(const std::string& text) { std::printf("%s\n", text.c_str()); }

nlohmann::json ordinal_strings(const std::vector<Ordinal>& xs) {
  nlohmann::json out = nlohmann::json::array();
  for (const Ordinal& x : xs) out.push_back(x.str());
  return out;
}

std::string joined(const std::vector<Ordinal>& xs) {
  std::string out;
  for (const Ordinal& x : xs) {
    if (!out.empty()) out += ",";
    out += x.str();
  }
  return out;
}

std::vector<std::uint32_t> parse_csv_u32(const std::string& text, const std::string& flag) {
  std::vector<std::uint32_t> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    out.push_back(static_cast<std::uint32_t>(parse_nat(item, flag + " entry")));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// ord

int run_ord(const std::string& op, const std::vector<std::string>& args, bool as_json,
            const std::string& out_path) {
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw ConfigError("ord " + op + " takes " + std::to_string(n) + " argument" +
                        (n == 1 ? "" : "s"));
  };
  nlohmann::json j{{"schema", "walkforge/1"}, {"kind", "ordinal-result"}, {"op", op}};
  std::string text;
  if (op == "parse") {
    need(1);
    text = parse_ordinal(args[0]).str();
    j["value"] = text;
  } else if (op == "compare") {
    need(2);
    const Ordinal a = parse_ordinal(args[0]), b = parse_ordinal(args[1]);
    switch (compare(a, b)) {
      case Cmp::Less: text = "less"; break;
      case Cmp::Equal: text = "equal"; break;
      case Cmp::Greater: text = "greater"; break;
    }
    j["a"] = a.str();
    j["b"] = b.str();
    j["relation"] = text;
  } else if (op == "add") {
    need(2);
    text = add(parse_ordinal(args[0]), parse_ordinal(args[1])).str();
    j["value"] = text;
  } else if (op == "succ") {
    need(1);
    text = successor(parse_ordinal(args[0])).str();
    j["value"] = text;
  } else if (op == "pred") {
    need(1);
    text = predecessor(parse_ordinal(args[0])).str();
    j["value"] = text;
  } else if (op == "classify") {
    need(1);
    switch (parse_ordinal(args[0]).classify()) {
      case Ordinal::Kind::Zero: text = "zero"; break;
      case Ordinal::Kind::Successor: text = "successor"; break;
      case Ordinal::Kind::Limit: text = "limit"; break;
    }
    j["value"] = text;
  } else if (op == "fs") {
    need(2);
    text = fundamental_sequence(parse_ordinal(args[0]), parse_nat(args[1], "fs index")).str();
    j["value"] = text;
  } else {
    throw ConfigError("unknown ord operation \"" + op +
                      "\" (parse, compare, add, succ, pred, classify, fs)");
  }
  if (as_json || !out_path.empty())
    emit(j, out_path);
  else
    line(text);
  return kHeld;
}

// ---------------------------------------------------------------------------
// walk / labels

int run_walk(const ProviderOptions& provider, const std::string& beta_text,
             const std::string& alpha_text, bool as_json, const std::string& out_path) {
  const auto cs = make_provider(provider);
  const WalkTrace trace = walk(*cs, parse_ordinal(beta_text), parse_ordinal(alpha_text));
  if (as_json || !out_path.empty()) {
    nlohmann::json j{{"schema", "walkforge/1"}, {"kind", "walk"},
                     {"config", provider_echo(provider)},
                     {"beta", trace.beta.str()},   {"alpha", trace.alpha.str()},
                     {"k", trace.k()},             {"steps", ordinal_strings(trace.steps)},
                     {"rho", ordinal_strings(trace.rho())}};
    emit(j, out_path);
  } else {
    line(joined(trace.steps));
  }
  return kHeld;
}

int run_labels(const ProviderOptions& provider, const std::string& system_path,
               const std::string& beta_text, const std::string& alpha_text, bool as_json,
               const std::string& out_path) {
  const auto cs = make_provider(provider);
  LabelFn h = identity_label;
  if (!system_path.empty()) {
    const ColouringSystem sys = ColouringSystem::from_json(load_json(system_path));
    h = [sys](const Ordinal& gamma) { return sys.label(gamma); };
  }
  const std::vector<Ordinal> labels =
      walk_labels(*cs, h, parse_ordinal(beta_text), parse_ordinal(alpha_text));
  if (as_json || !out_path.empty()) {
    nlohmann::json config = provider_echo(provider);
    if (!system_path.empty()) config["system"] = system_path;
    nlohmann::json j{{"schema", "walkforge/1"}, {"kind", "labels"},
                     {"config", std::move(config)},
                     {"beta", beta_text},          {"alpha", alpha_text},
                     {"k", labels.size()},         {"labels", ordinal_strings(labels)}};
    emit(j, out_path);
  } else {
    line(joined(labels));
  }
  return kHeld;
}

// ---------------------------------------------------------------------------
// dfun

nlohmann::json decomposition_json(const Decomposition& dec) {
  return {{"p", {dec.p1, dec.p2, dec.p3, dec.p4}},
          {"l", {dec.l1, dec.l2, dec.l3, dec.l4}},
          {"u", dec.u},
          {"d", dec.d()}};
}

int run_dfun(const std::string& f0_csv, const std::string& f1_csv, bool as_json,
             const std::string& out_path) {
  const LabelledSeq q(parse_csv_u32(f0_csv, "--f0"), parse_csv_u32(f1_csv, "--f1"));
  const std::size_t direct = d_direct(q);
  const EnumerationOutcome outcome = enumerate_decompositions(q);
  const bool consistent = !outcome.conflict.has_value();
  const std::size_t by_enum = outcome.values.empty() ? 0 : *outcome.values.begin();
  if (as_json || !out_path.empty()) {
    nlohmann::json j{{"schema", "walkforge/1"},
                     {"kind", "dfun-result"},
                     {"f0", q.f0},
                     {"f1", q.f1},
                     {"d_direct", direct},
                     {"decomposable", !outcome.values.empty()},
                     {"values", outcome.values},
                     {"consistent", consistent}};
    if (outcome.first) j["split"] = decomposition_json(*outcome.first);
    if (outcome.conflict)
      j["conflict"] = {decomposition_json(outcome.conflict->first),
                       decomposition_json(outcome.conflict->second)};
    emit(j, out_path);
  } else if (consistent) {
    line("d=" + std::to_string(by_enum) + " d_direct=" + std::to_string(direct) +
         (outcome.values.empty() ? " (no valid split)" : ""));
  } else {
    line("inconsistent: splits certify " + std::to_string(outcome.conflict->first.d()) +
         " and " + std::to_string(outcome.conflict->second.d()));
  }
  return consistent ? kHeld : kViolated;
}

// ---------------------------------------------------------------------------
// verify

void absorb(WalkLemmaReport& total, const WalkLemmaReport& part) {
  total.pairs += part.pairs;
  total.checks += part.checks;
  total.violation_count += part.violation_count;
  for (const LemmaViolation& v : part.violations) {
    if (total.violations.size() >= kViolationCap) break;
    total.violations.push_back(v);
  }
}

LabelFn label_fn(const std::string& system_path) {
  if (system_path.empty()) return identity_label;
  const ColouringSystem sys = ColouringSystem::from_json(load_json(system_path));
  return [sys](const Ordinal& gamma) { return sys.label(gamma); };
}

struct VerifyCommon {
  ProviderOptions provider;
  std::string system_path;
  std::string out_path;
  std::uint64_t seed = 0;
};

int run_verify_walk_lemmas(const VerifyCommon& common, std::uint64_t sampled_pairs,
                           std::uint64_t tables) {
  const auto cs = make_provider(common.provider);
  const LabelFn h = label_fn(common.system_path);
  Rng rng(common.seed);

  std::vector<std::pair<Ordinal, Ordinal>> pairs;
  if (sampled_pairs > 0) {
    pairs = sample_pairs_below(cs->bound(), sampled_pairs, rng);
  } else {
    if (!cs->bound().is_nat())
      throw ConfigError("exhaustive pair scan needs a finite domain; give --pairs for " +
                        cs->bound().str());
    pairs = all_pairs_below(cs->bound().as_nat());
  }

  WalkLemmaReport total = verify_walk_lemmas(*cs, pairs, h);
  for (std::uint64_t t = 0; t < tables; ++t) {
    if (!cs->bound().is_nat())
      throw ConfigError("random tables need a finite domain, not " + cs->bound().str());
    const ExplicitTable table = random_explicit_table(cs->bound().as_nat(), rng);
    absorb(total, verify_walk_lemmas(table, pairs, h));
  }

  nlohmann::json j = total.to_json();
  nlohmann::json config = provider_echo(common.provider);
  config["pairs"] = sampled_pairs;  // 0 = exhaustive
  config["csequences"] = tables;
  config["seed"] = common.seed;
  config["rng"] = kRngName;
  if (!common.system_path.empty()) config["system"] = common.system_path;
  j["config"] = std::move(config);
  emit(j, common.out_path);
  return total.ok() ? kHeld : kViolated;
}

int run_verify_coherence(const VerifyCommon& common, std::uint64_t cases,
                         std::uint32_t alphas_per_case) {
  const auto cs = make_provider(common.provider);
  const LabelFn h = label_fn(common.system_path);
  Rng rng(common.seed);
  const auto pairs = sample_limit_pairs_below(cs->bound(), cases, rng);
  const CoherenceReport report = verify_coherence(*cs, pairs, alphas_per_case, rng, h);

  nlohmann::json j = report.to_json();
  nlohmann::json config = provider_echo(common.provider);
  config["cases"] = cases;
  config["alphas_per_case"] = alphas_per_case;
  config["seed"] = common.seed;
  config["rng"] = kRngName;
  if (!common.system_path.empty()) config["system"] = common.system_path;
  j["config"] = std::move(config);
  emit(j, common.out_path);
  return report.ok() ? kHeld : kViolated;
}

int run_verify_claim_e4(const SweepConfig& config, const std::string& out_path) {
  const SweepReport report = claim_e4_sweep(config);
  emit(report.to_json(), out_path);
  const bool ok = report.consistent() && report.decomposable_disagreements == 0;
  return ok ? kHeld : kViolated;
}

int run_verify_csequence(const VerifyCommon& common, std::uint64_t samples,
                         std::uint64_t ladder_probe) {
  const auto cs = make_provider(common.provider);
  std::vector<Ordinal> sample;
  if (samples > 0) {
    Rng rng(common.seed);
    for (std::uint64_t i = 0; i < samples; ++i)
      sample.push_back(random_ordinal_below(cs->bound(), rng));
  } else {
    if (!cs->bound().is_nat())
      throw ConfigError("exhaustive validation needs a finite domain; give --samples for " +
                        cs->bound().str());
    for (std::uint64_t a = 0; a < cs->bound().as_nat(); ++a) sample.push_back(Ordinal::nat(a));
  }
  CSequenceValidationOptions options;
  options.ladder_probe = static_cast<std::size_t>(ladder_probe);
  const CSequenceReport report = validate_csequence(*cs, sample, options);

  nlohmann::json violations = nlohmann::json::array();
  for (const CSequenceViolation& v : report.violations)
    violations.push_back({{"alpha", v.alpha}, {"clause", v.clause}, {"detail", v.detail}});
  nlohmann::json config = provider_echo(common.provider);
  config["samples"] = samples;  // 0 = exhaustive
  config["seed"] = common.seed;
  config["rng"] = kRngName;
  nlohmann::json j{{"schema", "walkforge/1"},
                   {"kind", "csequence-report"},
                   {"config", std::move(config)},
                   {"checks", report.checks},
                   {"violation_count", report.violations.size()},
                   {"violations", std::move(violations)},
                   {"ok", report.ok()}};
  emit(j, common.out_path);
  return report.ok() ? kHeld : kViolated;
}

// ---------------------------------------------------------------------------
// colour / derive / promote

int run_colour_table(const ProviderOptions& provider, const std::string& system_path,
                     std::uint64_t n_override, const std::string& out_path) {
  const auto cs = make_provider(provider);
  const ColouringSystem sys = ColouringSystem::from_json(load_json(system_path));
  std::uint64_t n = n_override;
  if (n == 0) {
    if (!cs->bound().is_nat())
      throw ConfigError("give --n to bound the table on domain " + cs->bound().str());
    n = cs->bound().as_nat();
  }
  const auto points = static_cast<std::uint32_t>(n);
  nlohmann::json config = provider_echo(provider);
  config["system"] = system_path;
  config["n"] = points;
  nlohmann::json j{{"schema", "walkforge/1"},
                   {"kind", "colour-tables"},
                   {"config", std::move(config)},
                   {"c1", c1_table(sys, *cs, points).to_json()},
                   {"c2", c2_table(sys, *cs, points).to_json()}};
  emit(j, out_path);
  return kHeld;
}

int run_colour_pair(const ProviderOptions& provider, const std::string& system_path,
                    const std::string& a_text, const std::string& b_text, bool as_json,
                    const std::string& out_path) {
  const auto cs = make_provider(provider);
  const ColouringSystem sys = ColouringSystem::from_json(load_json(system_path));
  const Ordinal a = parse_ordinal(a_text), b = parse_ordinal(b_text);
  const C1Result r1 = c1_detailed(sys, *cs, a, b);
  const C2Result r2 = c2_detailed(sys, *cs, a, b);
  if (as_json || !out_path.empty()) {
    nlohmann::json config = provider_echo(provider);
    config["system"] = system_path;
    nlohmann::json j{{"schema", "walkforge/1"},
                     {"kind", "colour-pair"},
                     {"config", std::move(config)},
                     {"a", a.str()},
                     {"b", b.str()},
                     {"c1", {{"colour", r1.colour}, {"index", r1.index}, {"length", r1.length}}},
                     {"c2", {{"colour", r2.colour}, {"index", r2.index}, {"fallback", r2.fallback}}}};
    emit(j, out_path);
  } else {
    line("c1=" + std::to_string(r1.colour) + " c2=" + std::to_string(r2.colour));
  }
  return kHeld;
}

int run_derive(const std::string& colouring_path, const std::string& table_path, int iota,
               const std::string& out_path) {
  const ColourTable c = ColourTable::from_json(load_json(colouring_path));
  const DerivationTable table = DerivationTable::from_json(load_json(table_path));
  const std::vector<std::string> issues = table.validate();
  if (!issues.empty()) throw ConfigError("derivation table: " + issues.front());
  emit(derive_colouring(c, table, iota).to_json(), out_path);
  return kHeld;
}

int run_promote(const std::string& colouring_path, const std::string& promotion_path,
                bool shift, bool identity, const std::string& out_path) {
  const ColourTable c = ColourTable::from_json(load_json(colouring_path));
  if ((promotion_path.empty() ? 0 : 1) + (shift ? 1 : 0) + (identity ? 1 : 0) != 1)
    throw ConfigError("pick exactly one of --promotion FILE, --shift, --identity");
  Promotion promotion;
  if (!promotion_path.empty())
    promotion = Promotion::from_json(load_json(promotion_path));
  else if (shift)
    promotion = Promotion::shift(c.n, c.sigma);
  else
    promotion = Promotion::identity(c.n, c.sigma);
  emit(promote_colouring(c, promotion).to_json(), out_path);
  return kHeld;
}

// ---------------------------------------------------------------------------
// check / search

PartitionParams params_for_instance(const nlohmann::json& instance_doc,
                                    const std::string& params_path) {
  if (!params_path.empty()) return PartitionParams::from_json(load_json(params_path));
  if (instance_doc.is_object() && instance_doc.contains("params"))
    return PartitionParams::from_json(instance_doc["params"]);
  throw ConfigError("no parameters: give --params FILE or embed \"params\" in the instance");
}

int run_check(const std::string& colouring_path, const std::string& instance_path,
              const std::string& params_path, const std::string& out_path) {
  const ColourTable c = ColourTable::from_json(load_json(colouring_path));
  const nlohmann::json doc = load_json(instance_path);
  const PartitionParams params = params_for_instance(doc, params_path);

  Verdict verdict;
  nlohmann::json instance_echo;
  if (is_qr(params.variant)) {
    const QrInstance inst = QrInstance::from_json(doc);
    verdict = check_qr_instance(c, params, inst);
    instance_echo = inst.to_json();
  } else {
    const PrInstance inst = PrInstance::from_json(doc);
    verdict = check_pr_instance(c, params, inst);
    instance_echo = inst.to_json(params.variant);
  }
  nlohmann::json j{{"schema", "walkforge/1"},
                   {"kind", "check-report"},
                   {"params", params.to_json()},
                   {"instance", std::move(instance_echo)},
                   {"verdict", verdict.to_json()}};
  emit(j, out_path);
  return verdict.holds() ? kHeld : kViolated;
}

int run_search(const std::string& colouring_path, const std::string& params_path,
               const std::string& bounds_path, bool random, std::uint64_t seed,
               std::uint64_t trials, const std::string& out_path) {
  const ColourTable c = ColourTable::from_json(load_json(colouring_path));
  const PartitionParams params = PartitionParams::from_json(load_json(params_path));
  SearchBounds bounds;
  if (!bounds_path.empty()) bounds = SearchBounds::from_json(load_json(bounds_path));
  const SearchStrategy strategy = random ? SearchStrategy::Random : SearchStrategy::Exhaustive;
  const SearchReport report = search_counterexample(c, params, bounds, strategy, seed, trials);
  emit(report.to_json(), out_path);
  return report.found() ? kViolated : kHeld;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimal-walk colourings and partition-property search"};
  app.require_subcommand(1);
  app.fallthrough();  // let --out / --json trail the subcommand they apply to

  std::string out_path;
  bool as_json = false;
  app.add_option("--out", out_path, "write the JSON result to this file")->capture_default_str();
  app.add_flag("--json", as_json, "print JSON instead of plain text");

  // ord
  auto* ord = app.add_subcommand("ord", "ordinal arithmetic on CNF expressions");
  std::string ord_op;
  std::vector<std::string> ord_args;
  ord->add_option("op", ord_op, "parse | compare | add | succ | pred | classify | fs")
      ->required();
  ord->add_option("args", ord_args, "operands (ordinal expressions; fs takes an index)");

  // walk
  auto* walk_cmd = app.add_subcommand("walk", "minimal walk from beta down to alpha");
  ProviderOptions walk_provider;
  std::string walk_beta, walk_alpha;
  add_provider_flags(walk_cmd, walk_provider);
  walk_cmd->add_option("beta", walk_beta, "start ordinal")->required();
  walk_cmd->add_option("alpha", walk_alpha, "target ordinal")->required();

  // labels
  auto* labels_cmd = app.add_subcommand("labels", "label sequence read along a walk");
  ProviderOptions labels_provider;
  std::string labels_system, labels_beta, labels_alpha;
  add_provider_flags(labels_cmd, labels_provider);
  labels_cmd->add_option("--system", labels_system, "colouring-system file for the labelling");
  labels_cmd->add_option("beta", labels_beta, "start ordinal")->required();
  labels_cmd->add_option("alpha", labels_alpha, "target ordinal")->required();

  // dfun
  auto* dfun_cmd = app.add_subcommand("dfun", "canonical index of a two-lens label sequence");
  std::string dfun_f0, dfun_f1;
  dfun_cmd->add_option("--f0", dfun_f0, "comma-separated F0 values")->required();
  dfun_cmd->add_option("--f1", dfun_f1, "comma-separated F1 values")->required();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run an invariant suite; exit 0 iff clean");
  verify_cmd->require_subcommand(1);

  VerifyCommon wl_common;
  std::uint64_t wl_pairs = 0, wl_tables = 0;
  auto* wl = verify_cmd->add_subcommand("walk-lemmas", "walk laws over pair scans");
  add_provider_flags(wl, wl_common.provider);
  wl->add_option("--system", wl_common.system_path, "colouring-system file for labels");
  wl->add_option("--pairs", wl_pairs, "sampled pairs (0 = exhaustive on finite domains)")
      ->capture_default_str();
  wl->add_option("--csequences", wl_tables, "additional seeded random tables to verify")
      ->capture_default_str();
  wl->add_option("--seed", wl_common.seed, "sampling seed")->capture_default_str();

  VerifyCommon co_common;
  std::uint64_t co_cases = 100;
  std::uint32_t co_alphas = 20;
  auto* co = verify_cmd->add_subcommand("coherence", "threshold laws at limit targets");
  add_provider_flags(co, co_common.provider);
  co->add_option("--system", co_common.system_path, "colouring-system file for labels");
  co->add_option("--pairs", co_cases, "sampled (beta, delta) cases")->capture_default_str();
  co->add_option("--alphas", co_alphas, "walk targets per case")->capture_default_str();
  co->add_option("--seed", co_common.seed, "sampling seed")->capture_default_str();

  SweepConfig sweep;
  auto* e4 = verify_cmd->add_subcommand("claim-e4",
                                        "index-function sweep: enumeration vs single pass");
  e4->add_option("--k0", sweep.k0, "F0 value bound")->capture_default_str();
  e4->add_option("--k1", sweep.k1, "F1 value bound")->capture_default_str();
  e4->add_option("--max-len", sweep.max_len, "longest sequence")->capture_default_str();
  e4->add_flag("--random", sweep.random, "sample sequences instead of enumerating");
  e4->add_option("--trials", sweep.trials, "random-mode sample count")->capture_default_str();
  e4->add_option("--seed", sweep.seed, "random-mode seed")->capture_default_str();
  e4->add_option("--example-cap", sweep.example_cap, "examples kept per report")
      ->capture_default_str();
  e4->add_option("--threads", sweep.threads, "worker cap (0 = WALKFORGE_THREADS, then hardware)")
      ->capture_default_str();

  VerifyCommon cs_common;
  std::uint64_t cs_samples = 0, cs_probe = 32;
  auto* cq = verify_cmd->add_subcommand("csequence", "ladder-system clauses on the provider");
  add_provider_flags(cq, cs_common.provider);
  cq->add_option("--samples", cs_samples, "sampled ordinals (0 = exhaustive on finite domains)")
      ->capture_default_str();
  cq->add_option("--seed", cs_common.seed, "sampling seed")->capture_default_str();
  cq->add_option("--ladder-probe", cs_probe, "ladder points enumerated per limit")
      ->capture_default_str();

  // colour
  auto* colour_cmd = app.add_subcommand("colour", "walk colourings c1 and c2");
  colour_cmd->require_subcommand(1);

  ProviderOptions ct_provider;
  std::string ct_system;
  std::uint64_t ct_n = 0;
  auto* ct = colour_cmd->add_subcommand("table", "full tables over a finite domain");
  add_provider_flags(ct, ct_provider);
  ct->add_option("--system", ct_system, "colouring-system file")->required();
  ct->add_option("--n", ct_n, "points (default: the domain bound)")->capture_default_str();

  ProviderOptions cp_provider;
  std::string cp_system, cp_a, cp_b;
  auto* cp = colour_cmd->add_subcommand("pair", "both colours of one pair");
  add_provider_flags(cp, cp_provider);
  cp->add_option("--system", cp_system, "colouring-system file")->required();
  cp->add_option("a", cp_a, "first ordinal")->required();
  cp->add_option("b", cp_b, "second ordinal")->required();

  // derive
  auto* derive_cmd = app.add_subcommand("derive", "read a colouring through a derivation table");
  std::string derive_colouring_path, derive_table_path;
  int derive_iota = 0;
  derive_cmd->add_option("--colouring", derive_colouring_path, "colour-table file")->required();
  derive_cmd->add_option("--table", derive_table_path, "derivation-table file")->required();
  derive_cmd->add_option("--iota", derive_iota, "side whose subset is read (0 or 1)")
      ->capture_default_str();

  // promote
  auto* promote_cmd = app.add_subcommand("promote", "push a colouring through per-point maps");
  std::string promote_colouring_path, promote_file;
  bool promote_shift = false, promote_identity = false;
  promote_cmd->add_option("--colouring", promote_colouring_path, "colour-table file")->required();
  promote_cmd->add_option("--promotion", promote_file, "promotion file");
  promote_cmd->add_flag("--shift", promote_shift, "use the shift maps f[b](x) = x + b");
  promote_cmd->add_flag("--identity", promote_identity, "use identity maps");

  // check
  auto* check_cmd = app.add_subcommand("check", "test one challenge; exit 0 iff a witness exists");
  std::string check_colouring, check_instance, check_params;
  check_cmd->add_option("--colouring", check_colouring, "colour-table file")->required();
  check_cmd->add_option("--instance", check_instance, "pr-instance or qr-instance file")
      ->required();
  check_cmd->add_option("--params", check_params,
                        "partition-params file (optional when the instance embeds them)");

  // search
  auto* search_cmd =
      app.add_subcommand("search", "hunt for a failing challenge; exit 1 when one is found");
  std::string search_colouring, search_params, search_bounds;
  bool search_random = false;
  std::uint64_t search_seed = 0, search_trials = 0;
  search_cmd->add_option("--colouring", search_colouring, "colour-table file")->required();
  search_cmd->add_option("--params", search_params, "partition-params file")->required();
  search_cmd->add_option("--bounds", search_bounds, "search-bounds file");
  search_cmd->add_flag("--random", search_random, "seeded random challenges instead of all");
  search_cmd->add_option("--seed", search_seed, "random-mode seed")->capture_default_str();
  search_cmd->add_option("--trials", search_trials, "random-mode challenge count")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*ord) return run_ord(ord_op, ord_args, as_json, out_path);
    if (*walk_cmd) return run_walk(walk_provider, walk_beta, walk_alpha, as_json, out_path);
    if (*labels_cmd)
      return run_labels(labels_provider, labels_system, labels_beta, labels_alpha, as_json,
                        out_path);
    if (*dfun_cmd) return run_dfun(dfun_f0, dfun_f1, as_json, out_path);
    if (*verify_cmd) {
      wl_common.out_path = co_common.out_path = cs_common.out_path = out_path;
      if (*wl) return run_verify_walk_lemmas(wl_common, wl_pairs, wl_tables);
      if (*co) return run_verify_coherence(co_common, co_cases, co_alphas);
      if (*e4) return run_verify_claim_e4(sweep, out_path);
      if (*cq) return run_verify_csequence(cs_common, cs_samples, cs_probe);
    }
    if (*colour_cmd) {
      if (*ct) return run_colour_table(ct_provider, ct_system, ct_n, out_path);
      if (*cp) return run_colour_pair(cp_provider, cp_system, cp_a, cp_b, as_json, out_path);
    }
    if (*derive_cmd)
      return run_derive(derive_colouring_path, derive_table_path, derive_iota, out_path);
    if (*promote_cmd)
      return run_promote(promote_colouring_path, promote_file, promote_shift, promote_identity,
                         out_path);
    if (*check_cmd) return run_check(check_colouring, check_instance, check_params, out_path);
    if (*search_cmd)
      return run_search(search_colouring, search_params, search_bounds, search_random,
                        search_seed, search_trials, out_path);
  } catch (const Error& e) {
    std::fprintf(stderr, "walkforge: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
