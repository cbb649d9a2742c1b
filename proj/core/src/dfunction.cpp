#include "walkforge/dfunction.hpp"

#include <algorithm>
#include <thread>

#include <nlohmann/json.hpp>

#include "walkforge/rng.hpp"
#include "walkforge/threads.hpp"

namespace walkforge {

LabelledSeq::LabelledSeq(std::vector<std::uint32_t> a, std::vector<std::uint32_t> b)
    : f0(std::move(a)), f1(std::move(b)) {
  if (f0.size() != f1.size())
    throw Error("labelled sequence needs f0 and f1 of equal length");
}

InconsistentDecompositions::InconsistentDecompositions(LabelledSeq sequence, Decomposition a,
                                                       Decomposition b)
    : Error("two valid splits certify different indices: " + std::to_string(a.d()) + " vs " +
            std::to_string(b.d())),
      seq(std::move(sequence)),
      first(std::move(a)),
      second(std::move(b)) {}

namespace {

std::optional<std::uint32_t> range_max(const std::vector<std::uint32_t>& v, std::size_t lo,
                                       std::size_t hi) {
  if (lo >= hi) return std::nullopt;
  return *std::max_element(v.begin() + static_cast<std::ptrdiff_t>(lo),
                           v.begin() + static_cast<std::ptrdiff_t>(hi));
}

std::optional<std::uint32_t> opt_max(std::optional<std::uint32_t> a,
                                     std::optional<std::uint32_t> b) {
  if (!a) return b;
  if (!b) return a;
  return std::max(*a, *b);
}

}  // namespace

std::optional<Decomposition> valid_decomposition(const LabelledSeq& q, std::size_t p1,
                                                 std::size_t p2, std::size_t p3,
                                                 std::size_t p4) {
  const std::size_t n = q.size();
  if (p1 > p2 || p2 > p3 || p3 > p4 || p4 > n)
    throw Error("split points must be ascending and at most the length");

  // (a): the f1 maximum lives in nu0, strictly above everything else.
  auto global1 = range_max(q.f1, 0, n);
  auto nu0max1 = range_max(q.f1, p1, p2);
  auto rest1 = opt_max(range_max(q.f1, 0, p1), range_max(q.f1, p2, n));
  if (!global1 || !nu0max1 || !rest1) return std::nullopt;
  if (*nu0max1 != *global1 || !(*nu0max1 > *rest1)) return std::nullopt;
  std::size_t l1 = 0;
  while (q.f1[p1 + l1] != *global1) ++l1;

  // (b): past the f1 peak, the f0 maximum lives in rho, strictly above the
  // rest of nu0 from l1 on, nu1 and eta1 -- and rho must attain the global
  // f0 maximum (l2 marks where it first does).
  auto window0 = range_max(q.f0, p1 + l1 + 1, n);
  auto rho0 = range_max(q.f0, p2, p3);
  auto brhs0 = opt_max(range_max(q.f0, p1 + l1, p2), range_max(q.f0, p3, n));
  if (!window0 || !rho0 || !brhs0) return std::nullopt;
  if (*window0 != *rho0 || !(*rho0 > *brhs0)) return std::nullopt;
  auto global0 = range_max(q.f0, 0, n);
  std::size_t l2 = p3;
  for (std::size_t p = p2; p < p3; ++p)
    if (q.f0[p] == *global0) {
      l2 = p - p2;
      break;
    }
  if (l2 == p3) return std::nullopt;

  // (c): past rho's f0 peak, the f1 maximum lives in nu1, strictly below the
  // nu0 peak.
  auto window1 = range_max(q.f1, p2 + l2 + 1, n);
  auto nu1max1 = range_max(q.f1, p3, p4);
  if (!window1 || !nu1max1) return std::nullopt;
  if (*window1 != *nu1max1 || !(*nu0max1 > *window1)) return std::nullopt;
  std::size_t l3 = 0;
  while (q.f1[p3 + l3] != *nu1max1) ++l3;

  // (d): candidate positions between the f1 peak and rho's f0 peak whose f1
  // value still dominates the nu1 peak; pick the flattest, earliest one.
  Decomposition dec;
  dec.p1 = p1;
  dec.p2 = p2;
  dec.p3 = p3;
  dec.p4 = p4;
  dec.l1 = l1;
  dec.l2 = l2;
  dec.l3 = l3;
  const std::uint32_t m1 = *nu1max1;
  const std::size_t stop = (p2 - p1) + l2;
  for (std::size_t l = l1; l < stop; ++l)
    if (q.f1[p1 + l] >= m1) dec.u.push_back(l);
  dec.l4 = dec.u.front();
  for (std::size_t l : dec.u)
    if (q.f1[p1 + l] < q.f1[p1 + dec.l4]) dec.l4 = l;
  return dec;
}

EnumerationOutcome enumerate_decompositions(const LabelledSeq& q) {
  EnumerationOutcome out;
  const std::size_t n = q.size();
  for (std::size_t p1 = 0; p1 <= n; ++p1)
    for (std::size_t p2 = p1; p2 <= n; ++p2)
      for (std::size_t p3 = p2; p3 <= n; ++p3)
        for (std::size_t p4 = p3; p4 <= n; ++p4) {
          std::optional<Decomposition> dec = valid_decomposition(q, p1, p2, p3, p4);
          if (!dec) continue;
          out.values.insert(dec->d());
          if (!out.first)
            out.first = *dec;
          else if (!out.conflict && dec->d() != out.first->d())
            out.conflict = std::pair(*out.first, *dec);
        }
  return out;
}

std::size_t d_by_enumeration(const LabelledSeq& q) {
  EnumerationOutcome out = enumerate_decompositions(q);
  if (out.conflict)
    throw InconsistentDecompositions(q, out.conflict->first, out.conflict->second);
  return out.values.empty() ? 0 : *out.values.begin();
}

std::size_t d_direct(const LabelledSeq& q) {
  const std::size_t n = q.size();
  if (n == 0) return 0;
  std::size_t p1 = 0;  // first position of the global f1 maximum
  for (std::size_t p = 1; p < n; ++p)
    if (q.f1[p] > q.f1[p1]) p1 = p;
  auto m0 = range_max(q.f0, p1 + 1, n);
  if (!m0) return 0;
  std::size_t p2 = p1 + 1;
  while (q.f0[p2] != *m0) ++p2;
  auto m1 = range_max(q.f1, p2 + 1, n);
  if (!m1) return 0;
  std::size_t best = p1;
  for (std::size_t p = p1; p < p2; ++p)
    if (q.f1[p] >= *m1 && q.f1[p] < q.f1[best]) best = p;
  return best;
}

namespace {

std::uint64_t pow_u64(std::uint64_t base, std::size_t exp) {
  std::uint64_t v = 1;
  while (exp--) v *= base;
  return v;
}

LabelledSeq decode_sequence(std::uint64_t index, std::uint32_t k0, std::uint32_t k1,
                            std::size_t max_len) {
  const std::uint64_t radix = std::uint64_t(k0) * k1;
  std::size_t len = 0;
  std::uint64_t count = 1;
  while (index >= count && len < max_len) {
    index -= count;
    ++len;
    count *= radix;
  }
  LabelledSeq q;
  q.f0.resize(len);
  q.f1.resize(len);
  for (std::size_t i = 0; i < len; ++i) {
    std::uint64_t digit = index % radix;
    index /= radix;
    q.f0[i] = static_cast<std::uint32_t>(digit % k0);
    q.f1[i] = static_cast<std::uint32_t>(digit / k0);
  }
  return q;
}

void account(SweepReport& r, const LabelledSeq& q, std::size_t example_cap) {
  ++r.sequences;
  EnumerationOutcome out = enumerate_decompositions(q);
  std::size_t direct = d_direct(q);
  if (out.conflict) {
    ++r.inconsistencies;
    if (r.inconsistency_examples.size() < example_cap) {
      SweepExample ex;
      ex.seq = q;
      ex.d_enum = out.conflict->first.d();
      ex.d_dir = direct;
      ex.conflict = out.conflict;
      r.inconsistency_examples.push_back(std::move(ex));
    }
    return;  // no single enumeration value to compare against
  }
  bool decomposable = !out.values.empty();
  if (decomposable) ++r.decomposable;
  std::size_t denum = decomposable ? *out.values.begin() : 0;
  if (denum != direct) {
    ++r.disagreements;
    if (decomposable) ++r.decomposable_disagreements;
    if (r.disagreement_examples.size() < example_cap) {
      SweepExample ex;
      ex.seq = q;
      ex.d_enum = denum;
      ex.d_dir = direct;
      r.disagreement_examples.push_back(std::move(ex));
    }
  }
}

void merge(SweepReport& into, SweepReport&& part, std::size_t example_cap) {
  into.sequences += part.sequences;
  into.decomposable += part.decomposable;
  into.inconsistencies += part.inconsistencies;
  into.disagreements += part.disagreements;
  into.decomposable_disagreements += part.decomposable_disagreements;
  for (auto& ex : part.inconsistency_examples)
    if (into.inconsistency_examples.size() < example_cap)
      into.inconsistency_examples.push_back(std::move(ex));
  for (auto& ex : part.disagreement_examples)
    if (into.disagreement_examples.size() < example_cap)
      into.disagreement_examples.push_back(std::move(ex));
}

}  // namespace

SweepReport claim_e4_sweep(const SweepConfig& config) {
  if (config.k0 == 0 || config.k1 == 0) throw ConfigError("sweep needs positive value bounds");
  SweepReport report;
  report.config = config;

  if (config.random) {
    Rng rng(config.seed);
    for (std::uint64_t t = 0; t < config.trials; ++t) {
      std::size_t len = static_cast<std::size_t>(rng.below(config.max_len + 1));
      LabelledSeq q;
      q.f0.resize(len);
      q.f1.resize(len);
      for (std::size_t i = 0; i < len; ++i) {
        q.f0[i] = rng.below32(config.k0);
        q.f1[i] = rng.below32(config.k1);
      }
      account(report, q, config.example_cap);
    }
    return report;
  }

  const std::uint64_t radix = std::uint64_t(config.k0) * config.k1;
  std::uint64_t total = 0;
  for (std::size_t len = 0; len <= config.max_len; ++len) total += pow_u64(radix, len);

  unsigned workers = resolve_threads(config.threads);
  if (std::uint64_t(workers) > total) workers = static_cast<unsigned>(total);
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < total; ++i)
      account(report, decode_sequence(i, config.k0, config.k1, config.max_len),
              config.example_cap);
    return report;
  }

  std::vector<SweepReport> parts(workers);
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = std::uint64_t(w) * chunk;
    const std::uint64_t hi = std::min(total, lo + chunk);
    pool.emplace_back([&, w, lo, hi] {
      for (std::uint64_t i = lo; i < hi; ++i)
        account(parts[w], decode_sequence(i, config.k0, config.k1, config.max_len),
                config.example_cap);
    });
  }
  for (auto& t : pool) t.join();
  // merging in chunk order keeps the report independent of the worker count
  for (auto& part : parts) merge(report, std::move(part), config.example_cap);
  return report;
}

namespace {

nlohmann::json decomposition_json(const Decomposition& dec) {
  return {{"p", {dec.p1, dec.p2, dec.p3, dec.p4}},
          {"l", {dec.l1, dec.l2, dec.l3, dec.l4}},
          {"u", dec.u},
          {"d", dec.d()}};
}

nlohmann::json example_json(const SweepExample& ex) {
  nlohmann::json j{{"f0", ex.seq.f0},
                   {"f1", ex.seq.f1},
                   {"d_enum", ex.d_enum},
                   {"d_direct", ex.d_dir}};
  if (ex.conflict) {
    j["conflict"] = {decomposition_json(ex.conflict->first),
                     decomposition_json(ex.conflict->second)};
  }
  return j;
}

}  // namespace

nlohmann::json SweepConfig::to_json() const {
  nlohmann::json j{{"k0", k0},
                   {"k1", k1},
                   {"max_len", max_len},
                   {"mode", random ? "random" : "exhaustive"},
                   {"example_cap", example_cap}};
  if (random) {
    j["seed"] = seed;
    j["trials"] = trials;
  }
  return j;
}

nlohmann::json SweepReport::to_json() const {
  nlohmann::json j{{"schema", "walkforge/1"},
                   {"kind", "sweep-report"},
                   {"config", config.to_json()},
                   {"sequences", sequences},
                   {"decomposable", decomposable},
                   {"inconsistencies", inconsistencies},
                   {"disagreements", disagreements},
                   {"decomposable_disagreements", decomposable_disagreements},
                   {"consistent", consistent()}};
  j["inconsistency_examples"] = nlohmann::json::array();
  for (const auto& ex : inconsistency_examples) j["inconsistency_examples"].push_back(example_json(ex));
  j["disagreement_examples"] = nlohmann::json::array();
  for (const auto& ex : disagreement_examples) j["disagreement_examples"].push_back(example_json(ex));
  return j;
}

}  // namespace walkforge
