#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "walkforge/colouring.hpp"
#include "walkforge/rng.hpp"

namespace walkforge {

// The partition properties a finite pair colouring can be challenged with.
// Pr-style challenges prescribe colours through index maps over two zeta
// matrices; Qr-style challenges prescribe pr-paired colours over families of
// sets; Col is sugar for a Pr0 challenge at two colours.
enum class Variant { Pr0, Pr1, Pr0i, Pr0uf, Qr0, Qr0i, Qr1, Col };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);
bool is_qr(Variant v);

// pi(x, y) = (x + y)(x + y + 1)/2 + y, the standard pairing.
std::uint64_t pairing_pr(std::uint64_t x, std::uint64_t y);

struct PartitionParams {
  Variant variant = Variant::Pr0;
  std::uint32_t lambda = 0;  // points: colourings live on [lambda]^2
  std::uint32_t mu = 0;      // rows/families available to a challenge
  std::uint32_t sigma = 1;   // colours
  std::uint32_t theta0 = 1, theta1 = 1;  // strict bounds on widths/set sizes
  int iota = 0;              // side selector for Pr0i, Pr0uf, Qr0i

  static PartitionParams from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  // lambda >= mu >= each of sigma, theta0, theta1; positive sigma and thetas.
  void validate() const;

  bool operator==(const PartitionParams&) const = default;
};

// theta given as a single value stands for the pair (theta, theta).
std::pair<std::uint32_t, std::uint32_t> normalize_theta(std::uint32_t theta);

// Col(lambda, theta) means Pr0(lambda, lambda, 2, theta^+); at finite scale
// theta^+ is theta + 1.
PartitionParams expand_col(const PartitionParams& params);

// A Pr-style challenge: two matrices of points, one per side, plus the
// prescription h in the shape the variant wants.  Matrix entries must be
// pairwise distinct within each side and the two sides must not meet.
struct PrInstance {
  std::vector<std::vector<std::uint32_t>> zeta0, zeta1;
  std::vector<std::vector<std::uint32_t>> h_matrix;  // Pr0: i0 x i1
  std::vector<std::uint32_t> h_vec;                  // Pr0i / Pr0uf: size i_iota
  std::uint32_t h_const = 0;                         // Pr1
  std::uint32_t jd = 0;  // Pr0uf: the principal point of the ultrafilter

  std::size_t rows() const { return zeta0.size(); }
  std::size_t i0() const { return zeta0.empty() ? 0 : zeta0.front().size(); }
  std::size_t i1() const { return zeta1.empty() ? 0 : zeta1.front().size(); }

  static PrInstance from_json(const nlohmann::json& j);
  nlohmann::json to_json(Variant v) const;

  bool operator==(const PrInstance&) const = default;
};

// A Qr-style challenge: families (u0, u1, h0, h1) where h values sit parallel
// to their u entries.  Unions u0 ∪ u1 are pairwise disjoint across families;
// inside one family the two sides may meet.
struct QrFamily {
  std::vector<std::uint32_t> u0, u1;
  std::vector<std::uint32_t> h0, h1;

  bool operator==(const QrFamily&) const = default;
};

struct QrInstance {
  std::vector<QrFamily> families;

  static QrInstance from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  bool operator==(const QrInstance&) const = default;
};

// Structural checks; ConfigError on the first violation.
void validate_pr_instance(const PartitionParams& params, const PrInstance& inst);
void validate_qr_instance(const PartitionParams& params, const QrInstance& inst);

struct Verdict {
  std::optional<std::pair<std::uint32_t, std::uint32_t>> witness;

  bool holds() const { return witness.has_value(); }
  nlohmann::json to_json() const;
  static Verdict from_json(const nlohmann::json& j);

  bool operator==(const Verdict&) const = default;
};

// Scan pairs alpha0 < alpha1 in lexicographic order and return the first one
// realizing the prescription, or none.  The instance is validated first; the
// colouring must cover all lambda points.
Verdict check_pr_instance(const ColourTable& c, const PartitionParams& params,
                          const PrInstance& inst);
Verdict check_qr_instance(const ColourTable& c, const PartitionParams& params,
                          const QrInstance& inst);

// Counterexample search: generate challenges within the bounds and return the
// first one the checker cannot satisfy.
struct SearchBounds {
  std::uint32_t rows = 2;      // mu' for Pr, family count for Qr
  std::uint32_t i0 = 1, i1 = 1;  // Pr column widths
  std::uint32_t u0 = 1, u1 = 1;  // Qr side sizes
  std::uint64_t guard = 2'000'000;  // exhaustive-mode instance budget

  static SearchBounds from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

enum class SearchStrategy { Exhaustive, Random };

struct SearchReport {
  PartitionParams params;
  SearchBounds bounds;
  SearchStrategy strategy = SearchStrategy::Exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;  // random mode budget
  std::uint64_t tried = 0;   // challenges actually generated
  std::optional<PrInstance> pr_counterexample;
  std::optional<QrInstance> qr_counterexample;

  bool found() const { return pr_counterexample || qr_counterexample; }
  nlohmann::json to_json() const;
};

// Exhaustive mode walks zeta/u streams as strictly increasing choices (with
// the prescription space in mixed-radix order) and aborts with a size
// estimate when the space exceeds bounds.guard.  Random mode draws `trials`
// seeded challenges.  Both are deterministic.
SearchReport search_counterexample(const ColourTable& c, const PartitionParams& params,
                                   const SearchBounds& bounds, SearchStrategy strategy,
                                   std::uint64_t seed = 0, std::uint64_t trials = 0);

// The seeded generators behind random-mode search, exposed for test harnesses.
PrInstance random_pr_instance(const PartitionParams& params, const SearchBounds& bounds,
                              Rng& rng);
QrInstance random_qr_instance(const PartitionParams& params, const SearchBounds& bounds,
                              Rng& rng);

}  // namespace walkforge
