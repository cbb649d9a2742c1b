#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "walkforge/errors.hpp"

namespace walkforge {

// A finite sequence of symbols seen only through two bounded lenses
// F0 and F1; entry i carries the pair (f0[i], f1[i]).
struct LabelledSeq {
  std::vector<std::uint32_t> f0, f1;

  LabelledSeq() = default;
  LabelledSeq(std::vector<std::uint32_t> a, std::vector<std::uint32_t> b);
  std::size_t size() const { return f0.size(); }
  bool operator==(const LabelledSeq&) const = default;
};

// A five-way split of a sequence q into eta0 ++ nu0 ++ rho ++ nu1 ++ eta1 at
// positions p1 <= p2 <= p3 <= p4, together with the indices the validity
// clauses derive from it:
//   l1: first position of the nu0-maximum of f1 (local to nu0),
//   l2: first position of rho attaining the global f0-maximum (local to rho),
//   l3: first position of the nu1-maximum of f1 (local to nu1),
//   u:  all l in [l1, lg(nu0)+l2) with f1((nu0++rho)(l)) >= f1(nu1(l3)),
//       indexed from the start of nu0,
//   l4: the member of u with minimal f1 value, first on ties.
//
// The index the split certifies is d() = lg(eta0) + l4 = p1 + l4.  Note that
// u runs past nu0 up to (but not including) rho's position l2: stopping u at
// the nu0/rho boundary would let two valid splits of the same sequence
// certify different indices (shifting the boundary into a plateau moves the
// boundary but not the data), and the whole point of the index is to depend
// on the sequence alone.
struct Decomposition {
  std::size_t p1 = 0, p2 = 0, p3 = 0, p4 = 0;
  std::size_t l1 = 0, l2 = 0, l3 = 0, l4 = 0;
  std::vector<std::size_t> u;

  std::size_t d() const { return p1 + l4; }
};

// Two splits of the same sequence certifying different indices.  Carries the
// offending sequence and both splits so reports can show the conflict.
struct InconsistentDecompositions : Error {
  InconsistentDecompositions(LabelledSeq sequence, Decomposition a, Decomposition b);
  LabelledSeq seq;
  Decomposition first, second;
};

// Checks the validity clauses for the split of q at (p1, p2, p3, p4) and
// returns the certified decomposition, or nullopt if any clause fails.  A
// maximum over an empty range fails its clause.  Split points must be
// ascending and at most q.size().
std::optional<Decomposition> valid_decomposition(const LabelledSeq& q, std::size_t p1,
                                                 std::size_t p2, std::size_t p3,
                                                 std::size_t p4);

// The semantic index: enumerate every split tuple, collect the certified
// indices, and insist they agree.  Returns 0 for sequences no split
// certifies; throws InconsistentDecompositions if two splits disagree.
std::size_t d_by_enumeration(const LabelledSeq& q);

// Single-pass evaluation of the same index:
//   p1 := first position of the global f1-maximum,
//   m0 := max f0 over positions > p1, p2 := first such position attaining m0,
//   m1 := max f1 over positions > p2,
//   U  := { p in [p1, p2) : f1[p] >= m1 },
//   result: the member of U with minimal f1 value, first on ties;
// 0 when any of the ranges above is empty.  Agreement with the enumeration
// is measured, not assumed; see claim_e4_sweep.
std::size_t d_direct(const LabelledSeq& q);

// All certified indices of q with a witness split per index; at most one
// entry when the index is well defined.
struct EnumerationOutcome {
  std::set<std::size_t> values;
  std::optional<Decomposition> first;
  std::optional<std::pair<Decomposition, Decomposition>> conflict;
};
EnumerationOutcome enumerate_decompositions(const LabelledSeq& q);

struct SweepExample {
  LabelledSeq seq;
  std::size_t d_enum = 0;
  std::size_t d_dir = 0;
  std::optional<std::pair<Decomposition, Decomposition>> conflict;
};

struct SweepConfig {
  std::uint32_t k0 = 2;       // f0 values range over [0, k0)
  std::uint32_t k1 = 2;       // f1 values range over [0, k1)
  std::size_t max_len = 5;
  bool random = false;        // exhaustive by default
  std::uint64_t seed = 0;     // random mode only
  std::uint64_t trials = 0;   // random mode only
  std::size_t example_cap = 8;
  unsigned threads = 0;       // 0 = WALKFORGE_THREADS, then hardware

  nlohmann::json to_json() const;
};

struct SweepReport {
  SweepConfig config;
  std::uint64_t sequences = 0;
  std::uint64_t decomposable = 0;
  std::uint64_t inconsistencies = 0;
  // d_by_enumeration vs d_direct as plain values.  On sequences without any
  // valid split the two defaults are allowed to differ (the enumeration says
  // 0, the single pass may land on a position), so that count is kept apart
  // from the decomposable one, which the equivalence contract pins to zero.
  std::uint64_t disagreements = 0;
  std::uint64_t decomposable_disagreements = 0;
  std::vector<SweepExample> inconsistency_examples;
  std::vector<SweepExample> disagreement_examples;
  bool consistent() const { return inconsistencies == 0; }

  nlohmann::json to_json() const;
};

// Runs d_by_enumeration against d_direct over every sequence with entries
// below (k0, k1) and length <= max_len (or over random trials).  The result
// does not depend on the worker count: work is split by sequence index and
// merged back in index order.
SweepReport claim_e4_sweep(const SweepConfig& config);

}  // namespace walkforge
