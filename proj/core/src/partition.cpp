#include "walkforge/partition.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "walkforge/errors.hpp"
#include "walkforge/json_io.hpp"

namespace walkforge {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::Pr0:
      return "Pr0";
    case Variant::Pr1:
      return "Pr1";
    case Variant::Pr0i:
      return "Pr0i";
    case Variant::Pr0uf:
      return "Pr0uf";
    case Variant::Qr0:
      return "Qr0";
    case Variant::Qr0i:
      return "Qr0i";
    case Variant::Qr1:
      return "Qr1";
    case Variant::Col:
      return "Col";
  }
  return "?";
}

Variant variant_from_name(const std::string& name) {
  for (Variant v : {Variant::Pr0, Variant::Pr1, Variant::Pr0i, Variant::Pr0uf, Variant::Qr0,
                    Variant::Qr0i, Variant::Qr1, Variant::Col})
    if (name == variant_name(v)) return v;
  throw ConfigError("unknown partition variant \"" + name + "\"");
}

bool is_qr(Variant v) {
  return v == Variant::Qr0 || v == Variant::Qr0i || v == Variant::Qr1;
}

std::uint64_t pairing_pr(std::uint64_t x, std::uint64_t y) {
  std::uint64_t s = 0, t = 0, r = 0;
  if (__builtin_add_overflow(x, y, &s) || __builtin_add_overflow(s, 1, &t) ||
      __builtin_mul_overflow(s, t, &r))
    throw Error("pairing overflows");
  return r / 2 + y;
}

// ---------------------------------------------------------------------------
// Parameters

std::pair<std::uint32_t, std::uint32_t> normalize_theta(std::uint32_t theta) {
  return {theta, theta};
}

void PartitionParams::validate() const {
  if (sigma == 0) throw ConfigError("sigma must be positive");
  if (theta0 == 0 || theta1 == 0) throw ConfigError("theta bounds must be positive");
  if (lambda < mu) throw ConfigError("lambda must dominate mu");
  if (mu < sigma || mu < theta0 || mu < theta1)
    throw ConfigError("mu must dominate sigma and both thetas");
  if (iota != 0 && iota != 1) throw ConfigError("iota selects a side, 0 or 1");
}

PartitionParams expand_col(const PartitionParams& params) {
  if (params.variant != Variant::Col) throw ConfigError("only Col expands");
  if (params.theta0 != params.theta1) throw ConfigError("Col takes a single theta");
  PartitionParams out;
  out.variant = Variant::Pr0;
  out.lambda = params.lambda;
  out.mu = params.lambda;
  out.sigma = 2;
  out.theta0 = out.theta1 = params.theta0 + 1;  // the successor of theta
  return out;
}

PartitionParams PartitionParams::from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("schema", "") != "walkforge/1" ||
      j.value("kind", "") != "partition-params")
    throw ConfigError("not a walkforge/1 partition-params document");
  PartitionParams p;
  if (!j.contains("variant") || !j["variant"].is_string())
    throw ConfigError("partition params need a \"variant\" name");
  p.variant = variant_from_name(j["variant"].get<std::string>());
  if (!j.contains("lambda") || !is_natural(j["lambda"]))
    throw ConfigError("partition params need an unsigned \"lambda\"");
  p.lambda = j["lambda"].get<std::uint32_t>();
  p.mu = j.value("mu", p.lambda);
  p.sigma = j.value("sigma", 2u);
  if (!j.contains("theta")) throw ConfigError("partition params need \"theta\"");
  if (is_natural(j["theta"])) {
    std::tie(p.theta0, p.theta1) = normalize_theta(j["theta"].get<std::uint32_t>());
  } else if (j["theta"].is_array() && j["theta"].size() == 2 &&
             is_natural(j["theta"][0]) && is_natural(j["theta"][1])) {
    p.theta0 = j["theta"][0].get<std::uint32_t>();
    p.theta1 = j["theta"][1].get<std::uint32_t>();
  } else {
    throw ConfigError("\"theta\" must be a natural or a pair of naturals");
  }
  p.iota = j.value("iota", 0);
  return p;
}

nlohmann::json PartitionParams::to_json() const {
  return nlohmann::json{{"schema", "walkforge/1"},
                        {"kind", "partition-params"},
                        {"variant", variant_name(variant)},
                        {"lambda", lambda},
                        {"mu", mu},
                        {"sigma", sigma},
                        {"theta", {theta0, theta1}},
                        {"iota", iota}};
}

// ---------------------------------------------------------------------------
// Instances

namespace {

std::vector<std::uint32_t> nat_array(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + " must be an array of naturals");
  std::vector<std::uint32_t> out;
  for (const auto& v : j) {
    if (!is_natural(v)) throw ConfigError(where + " must hold naturals");
    out.push_back(v.get<std::uint32_t>());
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> nat_matrix(const nlohmann::json& j,
                                                   const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + " must be an array of rows");
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t r = 0; r < j.size(); ++r)
    out.push_back(nat_array(j[r], where + "[" + std::to_string(r) + "]"));
  return out;
}

}  // namespace

PrInstance PrInstance::from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("schema", "") != "walkforge/1" ||
      j.value("kind", "") != "pr-instance")
    throw ConfigError("not a walkforge/1 pr-instance document");
  PrInstance inst;
  inst.zeta0 = nat_matrix(j.value("zeta0", nlohmann::json::array()), "zeta0");
  inst.zeta1 = nat_matrix(j.value("zeta1", nlohmann::json::array()), "zeta1");
  if (j.contains("h")) {
    const auto& h = j["h"];
    if (is_natural(h)) {
      inst.h_const = h.get<std::uint32_t>();
    } else if (h.is_array() && !h.empty() && h[0].is_array()) {
      inst.h_matrix = nat_matrix(h, "h");
    } else {
      inst.h_vec = nat_array(h, "h");
    }
  }
  inst.jd = j.value("jd", 0u);
  return inst;
}

nlohmann::json PrInstance::to_json(Variant v) const {
  nlohmann::json out{{"schema", "walkforge/1"},
                     {"kind", "pr-instance"},
                     {"zeta0", zeta0},
                     {"zeta1", zeta1}};
  switch (v) {
    case Variant::Pr0:
    case Variant::Col:
      out["h"] = h_matrix;
      break;
    case Variant::Pr1:
      out["h"] = h_const;
      break;
    case Variant::Pr0i:
      out["h"] = h_vec;
      break;
    case Variant::Pr0uf:
      out["h"] = h_vec;
      out["jd"] = jd;
      break;
    default:
      throw ConfigError("pr instances do not fit a Qr variant");
  }
  return out;
}

QrInstance QrInstance::from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("schema", "") != "walkforge/1" ||
      j.value("kind", "") != "qr-instance")
    throw ConfigError("not a walkforge/1 qr-instance document");
  if (!j.contains("families") || !j["families"].is_array())
    throw ConfigError("qr instance needs a \"families\" array");
  QrInstance inst;
  for (std::size_t a = 0; a < j["families"].size(); ++a) {
    const auto& f = j["families"][a];
    std::string where = "families[" + std::to_string(a) + "]";
    if (!f.is_object()) throw ConfigError(where + " must be an object");
    QrFamily fam;
    fam.u0 = nat_array(f.value("u0", nlohmann::json::array()), where + ".u0");
    fam.u1 = nat_array(f.value("u1", nlohmann::json::array()), where + ".u1");
    fam.h0 = nat_array(f.value("h0", nlohmann::json::array()), where + ".h0");
    fam.h1 = nat_array(f.value("h1", nlohmann::json::array()), where + ".h1");
    inst.families.push_back(std::move(fam));
  }
  return inst;
}

nlohmann::json QrInstance::to_json() const {
  nlohmann::json fams = nlohmann::json::array();
  for (const QrFamily& f : families)
    fams.push_back({{"u0", f.u0}, {"u1", f.u1}, {"h0", f.h0}, {"h1", f.h1}});
  return nlohmann::json{{"schema", "walkforge/1"}, {"kind", "qr-instance"},
                        {"families", std::move(fams)}};
}

// ---------------------------------------------------------------------------
// Validation

namespace {

bool all_equal(const std::vector<std::uint32_t>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

void check_colours(const std::vector<std::uint32_t>& v, std::uint32_t sigma,
                   const std::string& what) {
  for (std::uint32_t x : v)
    if (x >= sigma) throw ConfigError(what + " prescribes a colour outside sigma");
}

}  // namespace

void validate_pr_instance(const PartitionParams& params, const PrInstance& inst) {
  params.validate();
  if (inst.zeta0.size() != inst.zeta1.size())
    throw ConfigError("the two zeta matrices must have the same number of rows");
  if (inst.rows() > params.mu) throw ConfigError("more rows than mu allows");
  std::size_t i0 = inst.i0(), i1 = inst.i1();
  if (i0 >= params.theta0 || i1 >= params.theta1)
    throw ConfigError("zeta widths must stay below their theta bounds");
  std::set<std::uint32_t> seen0, seen1;
  for (int side = 0; side < 2; ++side) {
    const auto& zeta = side == 0 ? inst.zeta0 : inst.zeta1;
    auto& seen = side == 0 ? seen0 : seen1;
    std::size_t width = side == 0 ? i0 : i1;
    for (const auto& row : zeta) {
      if (row.size() != width) throw ConfigError("ragged zeta matrix");
      for (std::uint32_t z : row) {
        if (z >= params.lambda) throw ConfigError("zeta entry outside lambda");
        if (!seen.insert(z).second)
          throw ConfigError("repetition inside zeta" + std::to_string(side));
      }
    }
  }
  for (std::uint32_t z : seen0)
    if (seen1.count(z)) throw ConfigError("the two zeta ranges meet at " + std::to_string(z));
  std::size_t ii = params.iota == 0 ? i0 : i1;
  std::size_t io = params.iota == 0 ? i1 : i0;
  switch (params.variant) {
    case Variant::Pr0:
      if (inst.h_matrix.size() != i0)
        throw ConfigError("h must prescribe one row per zeta0 column");
      for (const auto& row : inst.h_matrix) {
        if (row.size() != i1) throw ConfigError("h must prescribe one colour per column pair");
        check_colours(row, params.sigma, "h");
      }
      break;
    case Variant::Pr1:
      if (inst.h_const >= params.sigma) throw ConfigError("the constant colour exceeds sigma");
      break;
    case Variant::Pr0i:
    case Variant::Pr0uf:
      break;
    default:
      throw ConfigError(std::string("variant ") + variant_name(params.variant) +
                        " does not take a pr instance");
  }
  if (params.variant == Variant::Pr0i || params.variant == Variant::Pr0uf) {
    if (inst.h_vec.size() != ii)
      throw ConfigError("h must prescribe one colour per iota-side column");
    check_colours(inst.h_vec, params.sigma, "h");
  }
  if (params.variant == Variant::Pr0uf) {
    if (io == 0) throw ConfigError("the ultrafilter side must have at least one column");
    if (inst.jd >= io) throw ConfigError("jd must pick a column on the other side");
  }
}

void validate_qr_instance(const PartitionParams& params, const QrInstance& inst) {
  params.validate();
  if (!is_qr(params.variant))
    throw ConfigError("qr instances answer Qr variants, pr instances the rest");
  if (inst.families.size() > params.mu) throw ConfigError("more families than mu allows");
  std::set<std::uint32_t> taken;  // by earlier families
  for (std::size_t a = 0; a < inst.families.size(); ++a) {
    const QrFamily& f = inst.families[a];
    if (f.u0.size() >= params.theta0 || f.u1.size() >= params.theta1)
      throw ConfigError("family sets must stay below their theta bounds");
    if (f.h0.size() != f.u0.size() || f.h1.size() != f.u1.size())
      throw ConfigError("h values must sit parallel to their u entries");
    check_colours(f.h0, params.sigma, "h0");
    check_colours(f.h1, params.sigma, "h1");
    std::set<std::uint32_t> mine;
    for (int side = 0; side < 2; ++side) {
      std::set<std::uint32_t> in_side;
      for (std::uint32_t z : side == 0 ? f.u0 : f.u1) {
        if (z >= params.lambda) throw ConfigError("family member outside lambda");
        if (!in_side.insert(z).second) throw ConfigError("repetition inside a family side");
        mine.insert(z);
      }
    }
    for (std::uint32_t z : mine)
      if (!taken.insert(z).second)
        throw ConfigError("family unions must be pairwise disjoint; " + std::to_string(z) +
                          " repeats");
    if (params.variant == Variant::Qr0i) {
      if (!all_equal(params.iota == 0 ? f.h1 : f.h0))
        throw ConfigError("the off-side h must be constant per family");
    } else if (params.variant == Variant::Qr1) {
      if (!all_equal(f.h0) || !all_equal(f.h1))
        throw ConfigError("both h sides must be constant per family");
    }
  }
}

// ---------------------------------------------------------------------------
// Checkers

nlohmann::json Verdict::to_json() const {
  nlohmann::json out{{"schema", "walkforge/1"}, {"kind", "verdict"}};
  if (witness)
    out["witness"] = {witness->first, witness->second};
  else
    out["witness"] = nullptr;
  return out;
}

Verdict Verdict::from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("schema", "") != "walkforge/1" ||
      j.value("kind", "") != "verdict")
    throw ConfigError("not a walkforge/1 verdict document");
  Verdict v;
  if (j.contains("witness") && j["witness"].is_array() && j["witness"].size() == 2)
    v.witness = {j["witness"][0].get<std::uint32_t>(), j["witness"][1].get<std::uint32_t>()};
  return v;
}

namespace {

PartitionParams effective(const PartitionParams& params) {
  return params.variant == Variant::Col ? expand_col(params) : params;
}

bool pr_pair_ok(const ColourTable& c, const PartitionParams& p, const PrInstance& inst,
                std::uint32_t a0, std::uint32_t a1) {
  const auto& z0 = inst.zeta0[a0];
  const auto& z1 = inst.zeta1[a1];
  switch (p.variant) {
    case Variant::Pr0:
      for (std::size_t i = 0; i < z0.size(); ++i)
        for (std::size_t j = 0; j < z1.size(); ++j)
          if (c.at(z0[i], z1[j]) != inst.h_matrix[i][j]) return false;
      return true;
    case Variant::Pr1:
      for (std::uint32_t x : z0)
        for (std::uint32_t y : z1)
          if (c.at(x, y) != inst.h_const) return false;
      return true;
    case Variant::Pr0i:
      for (std::size_t i = 0; i < z0.size(); ++i)
        for (std::size_t j = 0; j < z1.size(); ++j)
          if (c.at(z0[i], z1[j]) != inst.h_vec[p.iota == 0 ? i : j]) return false;
      return true;
    case Variant::Pr0uf: {
      // a finite ultrafilter is principal, so membership in D collapses to
      // "holds at the principal column jd"
      const auto& zi = (p.iota == 0 ? inst.zeta0 : inst.zeta1)[p.iota == 0 ? a0 : a1];
      const auto& zo = (p.iota == 0 ? inst.zeta1 : inst.zeta0)[p.iota == 0 ? a1 : a0];
      for (std::size_t i = 0; i < zi.size(); ++i)
        if (c.at(zi[i], zo[inst.jd]) != inst.h_vec[i]) return false;
      return true;
    }
    default:
      return false;
  }
}

bool qr_pair_ok(const ColourTable& c, const QrInstance& inst, std::uint32_t a0,
                std::uint32_t a1) {
  const QrFamily& f0 = inst.families[a0];
  const QrFamily& f1 = inst.families[a1];
  for (std::size_t i = 0; i < f0.u0.size(); ++i)
    for (std::size_t j = 0; j < f1.u1.size(); ++j) {
      std::uint32_t z0 = f0.u0[i], z1 = f1.u1[j];
      if (!(z0 < z1)) return false;
      if (c.at(z0, z1) != pairing_pr(f0.h0[i], f1.h1[j])) return false;
    }
  return true;
}

void check_coverage(const ColourTable& c, const PartitionParams& p) {
  if (c.n < p.lambda)
    throw ConfigError("the colouring covers " + std::to_string(c.n) +
                      " points but lambda is " + std::to_string(p.lambda));
}

}  // namespace

Verdict check_pr_instance(const ColourTable& c, const PartitionParams& params,
                          const PrInstance& inst) {
  PartitionParams p = effective(params);
  validate_pr_instance(p, inst);
  check_coverage(c, p);
  std::uint32_t rows = static_cast<std::uint32_t>(inst.rows());
  for (std::uint32_t a0 = 0; a0 < rows; ++a0)
    for (std::uint32_t a1 = a0 + 1; a1 < rows; ++a1)
      if (pr_pair_ok(c, p, inst, a0, a1)) return Verdict{{{a0, a1}}};
  return Verdict{};
}

Verdict check_qr_instance(const ColourTable& c, const PartitionParams& params,
                          const QrInstance& inst) {
  PartitionParams p = effective(params);
  validate_qr_instance(p, inst);
  check_coverage(c, p);
  std::uint32_t rows = static_cast<std::uint32_t>(inst.families.size());
  for (std::uint32_t a0 = 0; a0 < rows; ++a0)
    for (std::uint32_t a1 = a0 + 1; a1 < rows; ++a1)
      if (qr_pair_ok(c, inst, a0, a1)) return Verdict{{{a0, a1}}};
  return Verdict{};
}

// ---------------------------------------------------------------------------
// Search

SearchBounds SearchBounds::from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("schema", "") != "walkforge/1" ||
      j.value("kind", "") != "search-bounds")
    throw ConfigError("not a walkforge/1 search-bounds document");
  SearchBounds b;
  b.rows = j.value("rows", b.rows);
  b.i0 = j.value("i0", b.i0);
  b.i1 = j.value("i1", b.i1);
  b.u0 = j.value("u0", b.u0);
  b.u1 = j.value("u1", b.u1);
  b.guard = j.value("guard", b.guard);
  return b;
}

nlohmann::json SearchBounds::to_json() const {
  return nlohmann::json{{"schema", "walkforge/1"},
                        {"kind", "search-bounds"},
                        {"rows", rows},
                        {"i0", i0},
                        {"i1", i1},
                        {"u0", u0},
                        {"u1", u1},
                        {"guard", guard}};
}

nlohmann::json SearchReport::to_json() const {
  nlohmann::json out{{"schema", "walkforge/1"},
                     {"kind", "search-report"},
                     {"params", params.to_json()},
                     {"bounds", bounds.to_json()},
                     {"strategy", strategy == SearchStrategy::Exhaustive ? "exhaustive" : "random"},
                     {"rng", kRngName},
                     {"seed", seed},
                     {"trials", trials},
                     {"tried", tried}};
  if (pr_counterexample)
    out["counterexample"] = pr_counterexample->to_json(params.variant);
  else if (qr_counterexample)
    out["counterexample"] = qr_counterexample->to_json();
  else
    out["counterexample"] = nullptr;
  return out;
}

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  return __builtin_mul_overflow(a, b, &r) ? std::numeric_limits<std::uint64_t>::max() : r;
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = sat_mul(r, n - k + i) / i;
  return r;
}

// advance a strictly increasing k-subset of [0, n); false when exhausted
bool next_combination(std::vector<std::uint32_t>& idx, std::uint32_t n) {
  std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] + 1 < n - (k - 1 - i)) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool next_digits(std::vector<std::uint32_t>& digits, const std::vector<std::uint32_t>& radix) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < radix[i]) return true;
    digits[i] = 0;
  }
  return false;
}

std::vector<std::uint32_t> first_subset(std::uint32_t k) {
  std::vector<std::uint32_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

// how the prescription space is digitized, shared by counting, exhaustive
// decoding, and the random generators
std::vector<std::uint32_t> prescription_radix(const PartitionParams& p,
                                              const SearchBounds& b) {
  std::vector<std::uint32_t> radix;
  switch (p.variant) {
    case Variant::Pr0:
      radix.assign(std::size_t(b.i0) * b.i1, p.sigma);
      break;
    case Variant::Pr1:
      radix.assign(1, p.sigma);
      break;
    case Variant::Pr0i:
      radix.assign(p.iota == 0 ? b.i0 : b.i1, p.sigma);
      break;
    case Variant::Pr0uf:
      radix.assign(p.iota == 0 ? b.i0 : b.i1, p.sigma);
      radix.push_back(p.iota == 0 ? b.i1 : b.i0);  // the principal column
      break;
    case Variant::Qr0:
      radix.assign(std::size_t(b.rows) * (b.u0 + b.u1), p.sigma);
      break;
    case Variant::Qr0i:
      radix.assign(std::size_t(b.rows) * ((p.iota == 0 ? b.u0 : b.u1) + 1), p.sigma);
      break;
    case Variant::Qr1:
      radix.assign(std::size_t(b.rows) * 2, p.sigma);
      break;
    case Variant::Col:
      throw ConfigError("Col must be expanded before searching");
  }
  return radix;
}

void apply_pr_prescription(const PartitionParams& p, const SearchBounds& b,
                           const std::vector<std::uint32_t>& digits, PrInstance& inst) {
  switch (p.variant) {
    case Variant::Pr0:
      inst.h_matrix.assign(b.i0, std::vector<std::uint32_t>(b.i1));
      for (std::uint32_t i = 0; i < b.i0; ++i)
        for (std::uint32_t j = 0; j < b.i1; ++j)
          inst.h_matrix[i][j] = digits[std::size_t(i) * b.i1 + j];
      break;
    case Variant::Pr1:
      inst.h_const = digits[0];
      break;
    case Variant::Pr0i:
      inst.h_vec.assign(digits.begin(), digits.end());
      break;
    case Variant::Pr0uf:
      inst.h_vec.assign(digits.begin(), digits.end() - 1);
      inst.jd = digits.back();
      break;
    default:
      break;
  }
}

void apply_qr_prescription(const PartitionParams& p, const SearchBounds& b,
                           const std::vector<std::uint32_t>& digits, QrInstance& inst) {
  std::size_t at = 0;
  for (QrFamily& f : inst.families) {
    switch (p.variant) {
      case Variant::Qr0:
        f.h0.assign(digits.begin() + at, digits.begin() + at + b.u0);
        at += b.u0;
        f.h1.assign(digits.begin() + at, digits.begin() + at + b.u1);
        at += b.u1;
        break;
      case Variant::Qr0i:
        if (p.iota == 0) {
          f.h0.assign(digits.begin() + at, digits.begin() + at + b.u0);
          at += b.u0;
          f.h1.assign(b.u1, digits[at++]);
        } else {
          f.h1.assign(digits.begin() + at, digits.begin() + at + b.u1);
          at += b.u1;
          f.h0.assign(b.u0, digits[at++]);
        }
        break;
      case Variant::Qr1:
        f.h0.assign(b.u0, digits[at++]);
        f.h1.assign(b.u1, digits[at++]);
        break;
      default:
        break;
    }
  }
}

void check_search_bounds(const PartitionParams& p, const SearchBounds& b) {
  if (b.rows > p.mu) throw ConfigError("bounds ask for more rows than mu");
  if (is_qr(p.variant)) {
    if (b.u0 >= p.theta0 || b.u1 >= p.theta1)
      throw ConfigError("family-size bounds must stay below theta");
    if (std::uint64_t(b.rows) * (b.u0 + b.u1) > p.lambda)
      throw ConfigError("bounds need more distinct points than lambda holds");
  } else {
    if (b.i0 >= p.theta0 || b.i1 >= p.theta1)
      throw ConfigError("width bounds must stay below theta");
    if (p.variant == Variant::Pr0uf && (p.iota == 0 ? b.i1 : b.i0) == 0)
      throw ConfigError("the ultrafilter side must have at least one column");
    if (std::uint64_t(b.rows) * b.i0 + std::uint64_t(b.rows) * b.i1 > p.lambda)
      throw ConfigError("bounds need more distinct points than lambda holds");
  }
}

}  // namespace

PrInstance random_pr_instance(const PartitionParams& params, const SearchBounds& bounds,
                              Rng& rng) {
  PartitionParams p = effective(params);
  check_search_bounds(p, bounds);
  std::size_t k0 = std::size_t(bounds.rows) * bounds.i0;
  std::size_t k1 = std::size_t(bounds.rows) * bounds.i1;
  std::vector<std::uint32_t> draw = rng.sample_distinct(p.lambda, k0 + k1);
  PrInstance inst;
  inst.zeta0.assign(bounds.rows, {});
  inst.zeta1.assign(bounds.rows, {});
  std::size_t at = 0;
  for (auto& row : inst.zeta0)
    for (std::uint32_t i = 0; i < bounds.i0; ++i) row.push_back(draw[at++]);
  for (auto& row : inst.zeta1)
    for (std::uint32_t i = 0; i < bounds.i1; ++i) row.push_back(draw[at++]);
  std::vector<std::uint32_t> radix = prescription_radix(p, bounds);
  std::vector<std::uint32_t> digits(radix.size());
  for (std::size_t i = 0; i < radix.size(); ++i) digits[i] = rng.below32(radix[i]);
  apply_pr_prescription(p, bounds, digits, inst);
  return inst;
}

QrInstance random_qr_instance(const PartitionParams& params, const SearchBounds& bounds,
                              Rng& rng) {
  PartitionParams p = effective(params);
  check_search_bounds(p, bounds);
  std::size_t per = std::size_t(bounds.u0) + bounds.u1;
  std::vector<std::uint32_t> draw = rng.sample_distinct(p.lambda, per * bounds.rows);
  QrInstance inst;
  inst.families.assign(bounds.rows, {});
  std::size_t at = 0;
  for (QrFamily& f : inst.families) {
    f.u0.assign(draw.begin() + at, draw.begin() + at + bounds.u0);
    at += bounds.u0;
    f.u1.assign(draw.begin() + at, draw.begin() + at + bounds.u1);
    at += bounds.u1;
  }
  std::vector<std::uint32_t> radix = prescription_radix(p, bounds);
  std::vector<std::uint32_t> digits(radix.size());
  for (std::size_t i = 0; i < radix.size(); ++i) digits[i] = rng.below32(radix[i]);
  apply_qr_prescription(p, bounds, digits, inst);
  return inst;
}

SearchReport search_counterexample(const ColourTable& c, const PartitionParams& params,
                                   const SearchBounds& bounds, SearchStrategy strategy,
                                   std::uint64_t seed, std::uint64_t trials) {
  PartitionParams p = effective(params);
  p.validate();
  check_search_bounds(p, bounds);
  check_coverage(c, p);

  SearchReport report;
  report.params = params;
  report.bounds = bounds;
  report.strategy = strategy;
  report.seed = seed;
  report.trials = trials;

  if (strategy == SearchStrategy::Random) {
    if (trials == 0) throw ConfigError("random search needs a positive trial budget");
    Rng rng(seed);
    for (std::uint64_t t = 0; t < trials; ++t) {
      ++report.tried;
      if (is_qr(p.variant)) {
        QrInstance inst = random_qr_instance(p, bounds, rng);
        if (!check_qr_instance(c, p, inst).holds()) {
          report.qr_counterexample = std::move(inst);
          break;
        }
      } else {
        PrInstance inst = random_pr_instance(p, bounds, rng);
        if (!check_pr_instance(c, p, inst).holds()) {
          report.pr_counterexample = std::move(inst);
          break;
        }
      }
    }
    return report;
  }

  // exhaustive: strictly increasing point streams, then the prescription space
  std::vector<std::uint32_t> radix = prescription_radix(p, bounds);
  std::uint64_t h_count = 1;
  for (std::uint32_t r : radix) h_count = sat_mul(h_count, r);
  std::size_t k0 = std::size_t(bounds.rows) * (is_qr(p.variant) ? bounds.u0 : bounds.i0);
  std::size_t k1 = std::size_t(bounds.rows) * (is_qr(p.variant) ? bounds.u1 : bounds.i1);
  std::uint64_t space =
      sat_mul(sat_mul(binom(p.lambda, k0), binom(p.lambda - k0, k1)), h_count);
  if (space > bounds.guard)
    throw ConfigError("exhaustive space holds about " + std::to_string(space) +
                      " challenges, over the guard " + std::to_string(bounds.guard));

  std::vector<std::uint32_t> comb0 = first_subset(static_cast<std::uint32_t>(k0));
  do {
    // the complement of comb0 in [0, lambda), ascending
    std::vector<std::uint32_t> rest;
    rest.reserve(p.lambda - k0);
    for (std::uint32_t v = 0, j = 0; v < p.lambda; ++v) {
      if (j < comb0.size() && comb0[j] == v)
        ++j;
      else
        rest.push_back(v);
    }
    std::vector<std::uint32_t> sel1 = first_subset(static_cast<std::uint32_t>(k1));
    do {
      std::vector<std::uint32_t> digits(radix.size(), 0);
      bool more_digits = true;
      while (more_digits) {
        ++report.tried;
        if (is_qr(p.variant)) {
          QrInstance inst;
          inst.families.assign(bounds.rows, {});
          std::size_t a0 = 0, a1 = 0;
          for (QrFamily& f : inst.families) {
            for (std::uint32_t i = 0; i < bounds.u0; ++i) f.u0.push_back(comb0[a0++]);
            for (std::uint32_t i = 0; i < bounds.u1; ++i) f.u1.push_back(rest[sel1[a1++]]);
          }
          apply_qr_prescription(p, bounds, digits, inst);
          if (!check_qr_instance(c, p, inst).holds()) {
            report.qr_counterexample = std::move(inst);
            return report;
          }
        } else {
          PrInstance inst;
          inst.zeta0.assign(bounds.rows, {});
          inst.zeta1.assign(bounds.rows, {});
          std::size_t a0 = 0, a1 = 0;
          for (auto& row : inst.zeta0)
            for (std::uint32_t i = 0; i < bounds.i0; ++i) row.push_back(comb0[a0++]);
          for (auto& row : inst.zeta1)
            for (std::uint32_t i = 0; i < bounds.i1; ++i) row.push_back(rest[sel1[a1++]]);
          apply_pr_prescription(p, bounds, digits, inst);
          if (!check_pr_instance(c, p, inst).holds()) {
            report.pr_counterexample = std::move(inst);
            return report;
          }
        }
        more_digits = next_digits(digits, radix);
      }
    } while (next_combination(sel1, static_cast<std::uint32_t>(rest.size())));
  } while (next_combination(comb0, p.lambda));
  return report;
}

}  // namespace walkforge
