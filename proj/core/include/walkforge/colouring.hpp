#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "walkforge/csequence.hpp"
#include "walkforge/dfunction.hpp"
#include "walkforge/rng.hpp"
#include "walkforge/walks.hpp"

namespace walkforge {

// A function slot configured from a short spec string:
//   "identity"     x -> x
//   "mod:k"        x -> x mod k
//   "const:k"      x -> k
//   "table:[...]"  x -> table[x]   (JSON array payload)
// Slots act on natural values; ordinals pass through their finite value.
struct Slot {
  enum class Kind { Identity, Mod, Const, Table };
  Kind kind = Kind::Identity;
  std::uint64_t k = 0;
  std::vector<std::uint64_t> table;
  std::string spec = "identity";

  static Slot parse(const std::string& spec);
  std::uint64_t operator()(std::uint64_t x) const;
};

// Membership predicate for the set S the labelling vanishes off:
//   "all" | "none" | "mod:k:r" (x ∈ S iff x mod k == r) | "set:[...]".
struct SetPredicate {
  enum class Kind { All, None, Mod, Set };
  Kind kind = Kind::All;
  std::uint64_t k = 1, r = 0;
  std::vector<std::uint64_t> members;  // sorted
  std::string spec = "all";

  static SetPredicate parse(const std::string& spec);
  bool operator()(std::uint64_t x) const;
};

// The data behind the two walk colourings: a labelling h (zero off S), three
// lenses F0/F1/F2 into bounded value ranges kappa0 < kappa1 <= kappa2, and
// the post-processing maps hprime, h1, h2.
class ColouringSystem {
 public:
  ColouringSystem();  // identity everything, kappa = (2,3,3)

  static ColouringSystem from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  std::uint32_t kappa0() const { return kappa0_; }
  std::uint32_t kappa1() const { return kappa1_; }
  std::uint32_t kappa2() const { return kappa2_; }

  // h masked by S: gamma -> h(gamma) when gamma ∈ S, else 0.
  Ordinal label(const Ordinal& gamma) const;

  // Lenses applied to a label; results are range-checked against kappa.
  std::uint32_t f0(const Ordinal& label) const;
  std::uint32_t f1(const Ordinal& label) const;
  std::uint32_t f2(const Ordinal& label) const;

  std::uint32_t hprime(std::uint32_t eps) const { return static_cast<std::uint32_t>(hp_(eps)); }
  std::uint32_t h1(std::uint32_t eps) const { return static_cast<std::uint32_t>(h1_(eps)); }
  std::uint32_t h2(std::uint32_t eps) const { return static_cast<std::uint32_t>(h2_(eps)); }

  // The two lenses applied componentwise to a label sequence.
  LabelledSeq lenses(const std::vector<Ordinal>& labels) const;

 private:
  std::uint32_t apply_lens(const Slot& slot, const Ordinal& label, std::uint32_t bound,
                           const char* name) const;

  std::uint32_t kappa0_, kappa1_, kappa2_;
  Slot h_, f0_, f1_, f2_, hp_, h1_, h2_;
  SetPredicate s_;
};

// First colouring: walk from b down to a, label the steps, and read off the
// hprime image of the f1 value at the walk's canonical index.
struct C1Result {
  std::uint32_t colour = 0;
  std::size_t index = 0;   // the canonical index into the label sequence
  std::size_t length = 0;  // lg of the label sequence
};
C1Result c1_detailed(const ColouringSystem& sys, const CSequence& cs, const Ordinal& a,
                     const Ordinal& b);
std::uint32_t c1(const ColouringSystem& sys, const CSequence& cs, const Ordinal& a,
                 const Ordinal& b);

// Second colouring: from the same canonical position, chase eps = f1 there,
// collect P = { l : f1(l) = h1(eps) } and step to its h2(eps)-th member; when
// h2 overshoots, fall back to the last member (or position 0 if P is empty)
// and say so.
struct C2Result {
  std::uint32_t colour = 0;
  std::size_t index = 0;
  bool fallback = false;
};
C2Result c2_detailed(const ColouringSystem& sys, const CSequence& cs, const Ordinal& a,
                     const Ordinal& b);
std::uint32_t c2(const ColouringSystem& sys, const CSequence& cs, const Ordinal& a,
                 const Ordinal& b);

// A total symmetric pair colouring on {0, ..., n-1}, stored as the strict
// upper triangle in row-major order.
struct ColourTable {
  std::uint32_t n = 0;
  std::uint32_t sigma = 1;  // colours lie in [0, sigma)
  std::vector<std::uint32_t> cells;

  static ColourTable constant(std::uint32_t n, std::uint32_t sigma, std::uint32_t value);
  static ColourTable from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  std::size_t cell_index(std::uint32_t a, std::uint32_t b) const;  // needs a < b
  std::uint32_t at(std::uint32_t a, std::uint32_t b) const;        // unordered pair
  void set(std::uint32_t a, std::uint32_t b, std::uint32_t value);

  bool operator==(const ColourTable&) const = default;
};

// Full tables over the finite domain {0, ..., n-1} of a C-sequence.
ColourTable c1_table(const ColouringSystem& sys, const CSequence& cs, std::uint32_t n);
ColourTable c2_table(const ColouringSystem& sys, const CSequence& cs, std::uint32_t n);

ColourTable random_colour_table(std::uint32_t n, std::uint32_t sigma, Rng& rng);

// Surjectivity onto lens triples: which (e0, e1, e2) in the kappa box have an
// empty fiber { v < domain : (f0, f1, f2)(label v) = (e0, e1, e2) }.
struct RichnessReport {
  std::uint32_t domain = 0;
  std::vector<std::array<std::uint32_t, 3>> missing;
  bool ok() const { return missing.empty(); }
};
RichnessReport validate_richness(const ColouringSystem& sys, std::uint32_t domain);

// Recipe for a colouring derived from pair data: a ground set chi, per-point
// subsets A_alpha, and per-colour pairs (a_i, d_i) where d_i is a sparsely
// stored map from subsets of a_i to colours below sigma2.  The derived
// colouring reads d_{c(a0,a1)}(A_{a_iota} ∩ a_{c(a0,a1)}).
struct DerivationTable {
  std::uint32_t chi = 0;  // ground set size, at most 64 (subsets are masks)
  std::uint32_t sigma2 = 1;
  std::uint32_t theta = 0;  // when positive: |support(d_i)| < theta must hold
  std::vector<std::uint64_t> A;
  struct ColourEntry {
    std::uint64_t a = 0;
    std::map<std::uint64_t, std::uint32_t> d;  // nonzero values only
  };
  std::vector<ColourEntry> entries;

  static DerivationTable from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  std::uint32_t dvalue(std::uint32_t colour, std::uint64_t mask) const;

  // Structural problems: indistinct A's, stray subset keys, support too big.
  std::vector<std::string> validate() const;
};

ColourTable derive_colouring(const ColourTable& c, const DerivationTable& table, int iota);

// Pointwise promotion through per-beta injections: the promoted colour of
// {a, b} with a < b is f[b][c(a, b)].  Each f[b] must be injective on the
// colours actually taken at b; violations are configuration errors.
struct Promotion {
  std::vector<std::vector<std::uint32_t>> f;
  std::uint32_t sigma_out = 1;

  static Promotion identity(std::uint32_t n, std::uint32_t sigma);
  // f[b](x) = x + b, the standard way to make the target depend on the point
  static Promotion shift(std::uint32_t n, std::uint32_t sigma);
  static Promotion from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

ColourTable promote_colouring(const ColourTable& c, const Promotion& promotion);

}  // namespace walkforge
