#include "walkforge/colouring.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "walkforge/errors.hpp"
#include "walkforge/json_io.hpp"

namespace walkforge {

// ---------------------------------------------------------------------------
// Slots and set predicates

namespace {

std::vector<std::uint64_t> parse_payload_array(const std::string& payload,
                                               const std::string& where) {
  nlohmann::json j = nlohmann::json::parse(payload, nullptr, false);
  if (j.is_discarded() || !j.is_array())
    throw ConfigError(where + ": expected a JSON array payload, got \"" + payload + "\"");
  std::vector<std::uint64_t> out;
  for (const auto& v : j) {
    if (!is_natural(v)) throw ConfigError(where + ": table entries must be naturals");
    out.push_back(v.get<std::uint64_t>());
  }
  return out;
}

std::uint64_t parse_payload_nat(const std::string& payload, const std::string& where) {
  if (payload.empty() || payload.find_first_not_of("0123456789") != std::string::npos)
    throw ConfigError(where + ": expected a number, got \"" + payload + "\"");
  return std::stoull(payload);
}

}  // namespace

Slot Slot::parse(const std::string& spec) {
  Slot slot;
  slot.spec = spec;
  if (spec == "identity") {
    slot.kind = Kind::Identity;
  } else if (spec.rfind("mod:", 0) == 0) {
    slot.kind = Kind::Mod;
    slot.k = parse_payload_nat(spec.substr(4), spec);
    if (slot.k == 0) throw ConfigError("mod:0 is not a function");
  } else if (spec.rfind("const:", 0) == 0) {
    slot.kind = Kind::Const;
    slot.k = parse_payload_nat(spec.substr(6), spec);
  } else if (spec.rfind("table:", 0) == 0) {
    slot.kind = Kind::Table;
    slot.table = parse_payload_array(spec.substr(6), spec);
  } else {
    throw ConfigError("unknown function slot \"" + spec + "\"");
  }
  return slot;
}

std::uint64_t Slot::operator()(std::uint64_t x) const {
  switch (kind) {
    case Kind::Identity:
      return x;
    case Kind::Mod:
      return x % k;
    case Kind::Const:
      return k;
    case Kind::Table:
      if (x >= table.size())
        throw ConfigError("slot \"" + spec + "\" has no entry for " + std::to_string(x));
      return table[x];
  }
  return x;
}

SetPredicate SetPredicate::parse(const std::string& spec) {
  SetPredicate p;
  p.spec = spec;
  if (spec == "all") {
    p.kind = Kind::All;
  } else if (spec == "none") {
    p.kind = Kind::None;
  } else if (spec.rfind("mod:", 0) == 0) {
    p.kind = Kind::Mod;
    std::string rest = spec.substr(4);
    std::size_t colon = rest.find(':');
    if (colon == std::string::npos)
      throw ConfigError("set predicate \"" + spec + "\" needs mod:k:r");
    p.k = parse_payload_nat(rest.substr(0, colon), spec);
    p.r = parse_payload_nat(rest.substr(colon + 1), spec);
    if (p.k == 0) throw ConfigError("mod:0 is not a predicate");
    if (p.r >= p.k)
      throw ConfigError("set predicate \"" + spec + "\": residue must be below the modulus");
  } else if (spec.rfind("set:", 0) == 0) {
    p.kind = Kind::Set;
    p.members = parse_payload_array(spec.substr(4), spec);
    std::sort(p.members.begin(), p.members.end());
  } else {
    throw ConfigError("unknown set predicate \"" + spec + "\"");
  }
  return p;
}

bool SetPredicate::operator()(std::uint64_t x) const {
  switch (kind) {
    case Kind::All:
      return true;
    case Kind::None:
      return false;
    case Kind::Mod:
      return x % k == r;
    case Kind::Set:
      return std::binary_search(members.begin(), members.end(), x);
  }
  return true;
}

// ---------------------------------------------------------------------------
// ColouringSystem

ColouringSystem::ColouringSystem() : kappa0_(2), kappa1_(3), kappa2_(3) {}

ColouringSystem ColouringSystem::from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("schema", "") != "walkforge/1" ||
      j.value("kind", "") != "colouring-system")
    throw ConfigError("not a walkforge/1 colouring-system document");
  ColouringSystem sys;
  for (const char* key : {"kappa0", "kappa1", "kappa2"})
    if (!j.contains(key) || !is_natural(j[key]))
      throw ConfigError(std::string("colouring system needs a natural \"") + key + "\"");
  sys.kappa0_ = j["kappa0"].get<std::uint32_t>();
  sys.kappa1_ = j["kappa1"].get<std::uint32_t>();
  sys.kappa2_ = j["kappa2"].get<std::uint32_t>();
  if (sys.kappa0_ == 0 || !(sys.kappa0_ < sys.kappa1_ && sys.kappa1_ <= sys.kappa2_))
    throw ConfigError("lens bounds must satisfy 0 < kappa0 < kappa1 <= kappa2");
  auto slot = [&](const char* key, const char* fallback) {
    return Slot::parse(j.value(key, fallback));
  };
  sys.h_ = slot("h", "identity");
  sys.f0_ = slot("F0", "identity");
  sys.f1_ = slot("F1", "identity");
  sys.f2_ = slot("F2", "identity");
  sys.hp_ = slot("hprime", "identity");
  sys.h1_ = slot("h1", "identity");
  sys.h2_ = slot("h2", "identity");
  sys.s_ = SetPredicate::parse(j.value("s", "all"));
  return sys;
}

nlohmann::json ColouringSystem::to_json() const {
  return nlohmann::json{{"schema", "walkforge/1"}, {"kind", "colouring-system"},
                        {"kappa0", kappa0_},       {"kappa1", kappa1_},
                        {"kappa2", kappa2_},       {"h", h_.spec},
                        {"F0", f0_.spec},          {"F1", f1_.spec},
                        {"F2", f2_.spec},          {"hprime", hp_.spec},
                        {"h1", h1_.spec},          {"h2", h2_.spec},
                        {"s", s_.spec}};
}

Ordinal ColouringSystem::label(const Ordinal& gamma) const {
  if (s_.kind != SetPredicate::Kind::All && !s_(gamma.as_nat())) return Ordinal{};
  if (h_.kind == Slot::Kind::Identity) return gamma;
  return Ordinal::nat(h_(gamma.as_nat()));
}

std::uint32_t ColouringSystem::apply_lens(const Slot& slot, const Ordinal& label,
                                          std::uint32_t bound, const char* name) const {
  std::uint64_t v = slot(label.as_nat());
  if (v >= bound)
    throw ConfigError(std::string(name) + " sends " + label.str() + " to " +
                      std::to_string(v) + ", outside its bound " + std::to_string(bound));
  return static_cast<std::uint32_t>(v);
}

std::uint32_t ColouringSystem::f0(const Ordinal& label) const {
  return apply_lens(f0_, label, kappa0_, "F0");
}
std::uint32_t ColouringSystem::f1(const Ordinal& label) const {
  return apply_lens(f1_, label, kappa1_, "F1");
}
std::uint32_t ColouringSystem::f2(const Ordinal& label) const {
  return apply_lens(f2_, label, kappa2_, "F2");
}

LabelledSeq ColouringSystem::lenses(const std::vector<Ordinal>& labels) const {
  std::vector<std::uint32_t> a, b;
  a.reserve(labels.size());
  b.reserve(labels.size());
  for (const Ordinal& l : labels) {
    a.push_back(f0(l));
    b.push_back(f1(l));
  }
  return LabelledSeq(std::move(a), std::move(b));
}

// ---------------------------------------------------------------------------
// The two colourings

namespace {

struct WalkData {
  std::vector<Ordinal> labels;
  LabelledSeq seq;
  std::size_t index;  // d of the lensed label sequence
};

WalkData prepare(const ColouringSystem& sys, const CSequence& cs, const Ordinal& a,
                 const Ordinal& b) {
  if (a == b) throw Error("pair colourings need two distinct points");
  const Ordinal& lo = a < b ? a : b;
  const Ordinal& hi = a < b ? b : a;
  WalkData data;
  data.labels = walk_labels(cs, [&sys](const Ordinal& g) { return sys.label(g); }, hi, lo);
  data.seq = sys.lenses(data.labels);
  // the single-pass evaluator; its agreement with the split-enumeration
  // semantics is what claim_e4_sweep measures
  data.index = d_direct(data.seq);
  return data;
}

}  // namespace

C1Result c1_detailed(const ColouringSystem& sys, const CSequence& cs, const Ordinal& a,
                     const Ordinal& b) {
  WalkData data = prepare(sys, cs, a, b);
  return C1Result{sys.hprime(data.seq.f1[data.index]), data.index, data.seq.size()};
}

std::uint32_t c1(const ColouringSystem& sys, const CSequence& cs, const Ordinal& a,
                 const Ordinal& b) {
  return c1_detailed(sys, cs, a, b).colour;
}

C2Result c2_detailed(const ColouringSystem& sys, const CSequence& cs, const Ordinal& a,
                     const Ordinal& b) {
  WalkData data = prepare(sys, cs, a, b);
  std::uint32_t eps = data.seq.f1[data.index];
  std::uint32_t target = sys.h1(eps);
  std::vector<std::size_t> hits;
  for (std::size_t l = 0; l < data.seq.size(); ++l)
    if (data.seq.f1[l] == target) hits.push_back(l);
  C2Result result;
  std::uint32_t want = sys.h2(eps);
  if (want < hits.size()) {
    result.index = hits[want];
  } else {
    result.index = hits.empty() ? 0 : hits.back();
    result.fallback = true;
  }
  result.colour = sys.f2(data.labels[result.index]);
  return result;
}

std::uint32_t c2(const ColouringSystem& sys, const CSequence& cs, const Ordinal& a,
                 const Ordinal& b) {
  return c2_detailed(sys, cs, a, b).colour;
}

// ---------------------------------------------------------------------------
// ColourTable

ColourTable ColourTable::constant(std::uint32_t n, std::uint32_t sigma, std::uint32_t value) {
  if (sigma == 0 || value >= sigma) throw ConfigError("constant colour outside its bound");
  ColourTable t;
  t.n = n;
  t.sigma = sigma;
  t.cells.assign(std::size_t(n) * (n - (n > 0)) / 2, value);
  return t;
}

std::size_t ColourTable::cell_index(std::uint32_t a, std::uint32_t b) const {
  if (!(a < b && b < n)) throw Error("pair out of range");
  return std::size_t(a) * (2 * n - a - 1) / 2 + (b - a - 1);
}

std::uint32_t ColourTable::at(std::uint32_t a, std::uint32_t b) const {
  if (a == b) throw Error("pair colouring read on the diagonal");
  return a < b ? cells[cell_index(a, b)] : cells[cell_index(b, a)];
}

void ColourTable::set(std::uint32_t a, std::uint32_t b, std::uint32_t value) {
  if (a == b) throw Error("pair colouring write on the diagonal");
  cells[a < b ? cell_index(a, b) : cell_index(b, a)] = value;
}

ColourTable ColourTable::from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("schema", "") != "walkforge/1" ||
      j.value("kind", "") != "colour-table")
    throw ConfigError("not a walkforge/1 colour-table document");
  if (!j.contains("n") || !is_natural(j["n"]))
    throw ConfigError("colour table needs an unsigned \"n\"");
  ColourTable t;
  t.n = j["n"].get<std::uint32_t>();
  t.cells.assign(std::size_t(t.n) * (t.n - (t.n > 0)) / 2, 0);
  if (!j.contains("colours") || !j["colours"].is_array())
    throw ConfigError("colour table needs a \"colours\" row array");
  const auto& rows = j["colours"];
  std::uint32_t top = 0;
  for (std::uint32_t a = 0; a < t.n; ++a) {
    if (a >= rows.size()) {
      if (a + 1 == t.n) break;  // the empty last row may be omitted
      throw ConfigError("colour table row " + std::to_string(a) + " missing");
    }
    const auto& row = rows[a];
    if (!row.is_array() || row.size() != t.n - a - 1)
      throw ConfigError("colour table row " + std::to_string(a) + " has the wrong length");
    for (std::uint32_t i = 0; i < row.size(); ++i) {
      if (!is_natural(row[i]))
        throw ConfigError("colour table entries must be naturals");
      std::uint32_t v = row[i].get<std::uint32_t>();
      top = std::max(top, v);
      t.cells[t.cell_index(a, a + 1 + i)] = v;
    }
  }
  t.sigma = j.contains("sigma") ? j["sigma"].get<std::uint32_t>() : top + 1;
  if (t.sigma == 0 || top >= t.sigma) throw ConfigError("colour table entries exceed sigma");
  return t;
}

nlohmann::json ColourTable::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::uint32_t a = 0; a < n; ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (std::uint32_t b = a + 1; b < n; ++b) row.push_back(at(a, b));
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"schema", "walkforge/1"},
                        {"kind", "colour-table"},
                        {"n", n},
                        {"sigma", sigma},
                        {"colours", std::move(rows)}};
}

namespace {

template <class Fn>
ColourTable build_table(std::uint32_t n, Fn&& colour_of) {
  ColourTable t;
  t.n = n;
  t.cells.assign(std::size_t(n) * (n - (n > 0)) / 2, 0);
  std::uint32_t top = 0;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b) {
      std::uint32_t v = colour_of(a, b);
      top = std::max(top, v);
      t.cells[t.cell_index(a, b)] = v;
    }
  t.sigma = top + 1;
  return t;
}

}  // namespace

ColourTable c1_table(const ColouringSystem& sys, const CSequence& cs, std::uint32_t n) {
  return build_table(n, [&](std::uint32_t a, std::uint32_t b) {
    return c1(sys, cs, Ordinal::nat(a), Ordinal::nat(b));
  });
}

ColourTable c2_table(const ColouringSystem& sys, const CSequence& cs, std::uint32_t n) {
  return build_table(n, [&](std::uint32_t a, std::uint32_t b) {
    return c2(sys, cs, Ordinal::nat(a), Ordinal::nat(b));
  });
}

ColourTable random_colour_table(std::uint32_t n, std::uint32_t sigma, Rng& rng) {
  ColourTable t;
  t.n = n;
  t.sigma = sigma;
  t.cells.resize(std::size_t(n) * (n - (n > 0)) / 2);
  for (auto& cell : t.cells) cell = rng.below32(sigma);
  return t;
}

RichnessReport validate_richness(const ColouringSystem& sys, std::uint32_t domain) {
  RichnessReport report;
  report.domain = domain;
  std::vector<char> seen(std::size_t(sys.kappa0()) * sys.kappa1() * sys.kappa2(), 0);
  for (std::uint32_t v = 0; v < domain; ++v) {
    Ordinal l = sys.label(Ordinal::nat(v));
    std::size_t at = (std::size_t(sys.f0(l)) * sys.kappa1() + sys.f1(l)) * sys.kappa2() +
                     sys.f2(l);
    seen[at] = 1;
  }
  for (std::uint32_t e0 = 0; e0 < sys.kappa0(); ++e0)
    for (std::uint32_t e1 = 0; e1 < sys.kappa1(); ++e1)
      for (std::uint32_t e2 = 0; e2 < sys.kappa2(); ++e2)
        if (!seen[(std::size_t(e0) * sys.kappa1() + e1) * sys.kappa2() + e2])
          report.missing.push_back({e0, e1, e2});
  return report;
}

// ---------------------------------------------------------------------------
// Derived colourings

namespace {

std::uint64_t mask_of(const nlohmann::json& members, std::uint32_t chi,
                      const std::string& where) {
  if (!members.is_array()) throw ConfigError(where + ": subset must be a member array");
  std::uint64_t mask = 0;
  for (const auto& m : members) {
    if (!is_natural(m) || m.get<std::uint64_t>() >= chi)
      throw ConfigError(where + ": member outside the ground set");
    mask |= std::uint64_t(1) << m.get<std::uint64_t>();
  }
  return mask;
}

nlohmann::json members_of(std::uint64_t mask) {
  nlohmann::json out = nlohmann::json::array();
  for (std::uint32_t i = 0; i < 64; ++i)
    if (mask & (std::uint64_t(1) << i)) out.push_back(i);
  return out;
}

}  // namespace

DerivationTable DerivationTable::from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("schema", "") != "walkforge/1" ||
      j.value("kind", "") != "derivation")
    throw ConfigError("not a walkforge/1 derivation document");
  DerivationTable t;
  t.chi = j.value("chi", 0u);
  if (t.chi == 0 || t.chi > 64) throw ConfigError("derivation ground set must have size 1..64");
  t.sigma2 = j.value("sigma2", 1u);
  if (t.sigma2 == 0) throw ConfigError("derivation output bound must be positive");
  t.theta = j.value("theta", 0u);
  if (!j.contains("A") || !j["A"].is_array())
    throw ConfigError("derivation needs per-point subsets \"A\"");
  for (std::size_t i = 0; i < j["A"].size(); ++i)
    t.A.push_back(mask_of(j["A"][i], t.chi, "A[" + std::to_string(i) + "]"));
  if (!j.contains("colours") || !j["colours"].is_array())
    throw ConfigError("derivation needs per-colour entries \"colours\"");
  for (std::size_t i = 0; i < j["colours"].size(); ++i) {
    const auto& e = j["colours"][i];
    std::string where = "colours[" + std::to_string(i) + "]";
    if (!e.is_object() || !e.contains("a") || !e.contains("d"))
      throw ConfigError(where + ": expected {\"a\": [...], \"d\": [...]}");
    ColourEntry entry;
    entry.a = mask_of(e["a"], t.chi, where + ".a");
    if (!e["d"].is_array()) throw ConfigError(where + ".d must be an array of [subset, value]");
    for (const auto& kv : e["d"]) {
      if (!kv.is_array() || kv.size() != 2 || !is_natural(kv[1]))
        throw ConfigError(where + ".d entries must be [subset, value]");
      std::uint32_t value = kv[1].get<std::uint32_t>();
      if (value >= t.sigma2) throw ConfigError(where + ".d value outside sigma2");
      entry.d[mask_of(kv[0], t.chi, where + ".d")] = value;
    }
    t.entries.push_back(std::move(entry));
  }
  return t;
}

nlohmann::json DerivationTable::to_json() const {
  nlohmann::json a = nlohmann::json::array();
  for (std::uint64_t mask : A) a.push_back(members_of(mask));
  nlohmann::json colours = nlohmann::json::array();
  for (const ColourEntry& e : entries) {
    nlohmann::json d = nlohmann::json::array();
    for (const auto& [mask, value] : e.d) d.push_back({members_of(mask), value});
    colours.push_back({{"a", members_of(e.a)}, {"d", std::move(d)}});
  }
  return nlohmann::json{{"schema", "walkforge/1"}, {"kind", "derivation"}, {"chi", chi},
                        {"sigma2", sigma2},        {"theta", theta},       {"A", std::move(a)},
                        {"colours", std::move(colours)}};
}

std::uint32_t DerivationTable::dvalue(std::uint32_t colour, std::uint64_t mask) const {
  if (colour >= entries.size())
    throw ConfigError("no derivation entry for colour " + std::to_string(colour));
  const auto& d = entries[colour].d;
  auto it = d.find(mask);
  return it == d.end() ? 0 : it->second;
}

std::vector<std::string> DerivationTable::validate() const {
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t k = i + 1; k < A.size(); ++k)
      if (A[i] == A[k])
        problems.push_back("A[" + std::to_string(i) + "] and A[" + std::to_string(k) +
                           "] coincide");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (const auto& [mask, value] : entries[i].d) {
      if ((mask & ~entries[i].a) != 0)
        problems.push_back("colour " + std::to_string(i) + " has a subset key outside a_i");
      if (value >= sigma2)
        problems.push_back("colour " + std::to_string(i) + " has a value outside sigma2");
    }
    if (theta > 0 && entries[i].d.size() >= theta)
      problems.push_back("colour " + std::to_string(i) + " has support of size " +
                         std::to_string(entries[i].d.size()) + ", not below theta");
  }
  return problems;
}

ColourTable derive_colouring(const ColourTable& c, const DerivationTable& table, int iota) {
  if (iota != 0 && iota != 1) throw ConfigError("iota selects a side, 0 or 1");
  if (table.A.size() < c.n)
    throw ConfigError("derivation lacks subsets for points up to " + std::to_string(c.n));
  ColourTable out;
  out.n = c.n;
  out.sigma = table.sigma2;
  out.cells.resize(c.cells.size());
  for (std::uint32_t a = 0; a < c.n; ++a)
    for (std::uint32_t b = a + 1; b < c.n; ++b) {
      std::uint32_t i = c.at(a, b);
      std::uint32_t who = iota == 0 ? a : b;
      if (i >= table.entries.size())
        throw ConfigError("pair colour " + std::to_string(i) + " has no derivation entry");
      out.cells[out.cell_index(a, b)] = table.dvalue(i, table.A[who] & table.entries[i].a);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Promotion

Promotion Promotion::identity(std::uint32_t n, std::uint32_t sigma) {
  Promotion p;
  p.sigma_out = sigma;
  p.f.assign(n, {});
  for (auto& row : p.f) {
    row.resize(sigma);
    for (std::uint32_t x = 0; x < sigma; ++x) row[x] = x;
  }
  return p;
}

Promotion Promotion::shift(std::uint32_t n, std::uint32_t sigma) {
  Promotion p;
  p.sigma_out = sigma + (n == 0 ? 0 : n - 1);
  p.f.assign(n, {});
  for (std::uint32_t b = 0; b < n; ++b) {
    p.f[b].resize(sigma);
    for (std::uint32_t x = 0; x < sigma; ++x) p.f[b][x] = x + b;
  }
  return p;
}

Promotion Promotion::from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("schema", "") != "walkforge/1" ||
      j.value("kind", "") != "promotion")
    throw ConfigError("not a walkforge/1 promotion document");
  Promotion p;
  p.sigma_out = j.value("sigma_out", 1u);
  if (!j.contains("f") || !j["f"].is_array())
    throw ConfigError("promotion needs per-point maps \"f\"");
  for (const auto& row : j["f"]) {
    if (!row.is_array()) throw ConfigError("promotion maps must be arrays");
    std::vector<std::uint32_t> values;
    for (const auto& v : row) {
      if (!is_natural(v) || v.get<std::uint32_t>() >= p.sigma_out)
        throw ConfigError("promotion value outside sigma_out");
      values.push_back(v.get<std::uint32_t>());
    }
    p.f.push_back(std::move(values));
  }
  return p;
}

nlohmann::json Promotion::to_json() const {
  return nlohmann::json{{"schema", "walkforge/1"},
                        {"kind", "promotion"},
                        {"sigma_out", sigma_out},
                        {"f", f}};
}

ColourTable promote_colouring(const ColourTable& c, const Promotion& promotion) {
  if (promotion.f.size() < c.n)
    throw ConfigError("promotion lacks maps for points up to " + std::to_string(c.n));
  // injectivity is required only on the colours actually taken at each point
  for (std::uint32_t b = 0; b < c.n; ++b) {
    std::map<std::uint32_t, std::uint32_t> image;  // f_b(x) -> x
    for (std::uint32_t a = 0; a < b; ++a) {
      std::uint32_t x = c.at(a, b);
      if (x >= promotion.f[b].size())
        throw ConfigError("promotion map at " + std::to_string(b) + " lacks colour " +
                          std::to_string(x));
      auto [it, fresh] = image.emplace(promotion.f[b][x], x);
      if (!fresh && it->second != x)
        throw ConfigError("promotion map at " + std::to_string(b) +
                          " glues colours " + std::to_string(it->second) + " and " +
                          std::to_string(x));
    }
  }
  ColourTable out;
  out.n = c.n;
  out.sigma = promotion.sigma_out;
  out.cells.resize(c.cells.size());
  for (std::uint32_t a = 0; a < c.n; ++a)
    for (std::uint32_t b = a + 1; b < c.n; ++b)
      out.cells[out.cell_index(a, b)] = promotion.f[b][c.at(a, b)];
  return out;
}

}  // namespace walkforge
