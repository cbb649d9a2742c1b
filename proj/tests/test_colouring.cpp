#include <doctest.h>

#include <vector>

#include <nlohmann/json.hpp>

#include "walkforge/colouring.hpp"
#include "walkforge/csequence.hpp"
#include "walkforge/errors.hpp"
#include "walkforge/ordinal.hpp"
#include "walkforge/rng.hpp"

using namespace walkforge;

namespace {

Ordinal N(std::uint64_t n) { return Ordinal::nat(n); }

// kappas (2, 3, 3); F0 = mod 2, F1 = F2 = mod 3; post-processing as given.
ColouringSystem mod_system(const char* hprime, const char* h1, const char* h2) {
  return ColouringSystem::from_json(nlohmann::json{{"schema", "walkforge/1"},
                                                   {"kind", "colouring-system"},
                                                   {"kappa0", 2},
                                                   {"kappa1", 3},
                                                   {"kappa2", 3},
                                                   {"F0", "mod:2"},
                                                   {"F1", "mod:3"},
                                                   {"F2", "mod:3"},
                                                   {"hprime", hprime},
                                                   {"h1", h1},
                                                   {"h2", h2}});
}

}  // namespace

TEST_SUITE("colouring") {

TEST_CASE("slots apply their spec strings") {
  CHECK(Slot::parse("identity")(42) == 42);
  CHECK(Slot::parse("mod:5")(42) == 2);
  CHECK(Slot::parse("const:3")(42) == 3);
  Slot table = Slot::parse("table:[4, 0, 9]");
  CHECK(table(0) == 4);
  CHECK(table(2) == 9);
  CHECK_THROWS_AS(table(3), ConfigError);  // past the table
  CHECK_THROWS_AS(Slot::parse("mod:0"), ConfigError);
  CHECK_THROWS_AS(Slot::parse("frobnicate"), ConfigError);
}

TEST_CASE("set predicates answer membership") {
  CHECK(SetPredicate::parse("all")(7));
  CHECK(!SetPredicate::parse("none")(7));
  SetPredicate even = SetPredicate::parse("mod:2:0");
  CHECK(even(4));
  CHECK(!even(5));
  SetPredicate some = SetPredicate::parse("set:[2, 5, 11]");
  CHECK(some(5));
  CHECK(!some(6));
  CHECK_THROWS_AS(SetPredicate::parse("mod:2:2"), ConfigError);  // residue not below modulus
}

TEST_CASE("system documents validate their lens bounds") {
  auto doc = [](std::uint32_t k0, std::uint32_t k1, std::uint32_t k2) {
    return nlohmann::json{{"schema", "walkforge/1"}, {"kind", "colouring-system"},
                          {"kappa0", k0},            {"kappa1", k1},
                          {"kappa2", k2}};
  };
  CHECK_NOTHROW(ColouringSystem::from_json(doc(1, 2, 2)));
  CHECK_THROWS_AS(ColouringSystem::from_json(doc(0, 2, 2)), ConfigError);
  CHECK_THROWS_AS(ColouringSystem::from_json(doc(2, 2, 3)), ConfigError);  // kappa0 < kappa1
  CHECK_THROWS_AS(ColouringSystem::from_json(doc(1, 3, 2)), ConfigError);  // kappa1 <= kappa2
  CHECK_THROWS_AS(ColouringSystem::from_json(nlohmann::json{{"schema", "walkforge/1"}}),
                  ConfigError);

  ColouringSystem sys = mod_system("identity", "identity", "const:0");
  CHECK(ColouringSystem::from_json(sys.to_json()).to_json() == sys.to_json());
}

TEST_CASE("the labelling vanishes off its set") {
  ColouringSystem sys = ColouringSystem::from_json(
      nlohmann::json{{"schema", "walkforge/1"}, {"kind", "colouring-system"},
                     {"kappa0", 2},             {"kappa1", 3},
                     {"kappa2", 3},             {"s", "mod:2:0"},
                     {"F0", "mod:2"},           {"F1", "mod:3"},
                     {"F2", "mod:3"}});
  CHECK(sys.label(N(4)) == N(4));
  CHECK(sys.label(N(5)) == N(0));

  // "all" lets infinite ordinals through untouched
  ColouringSystem pass = mod_system("identity", "identity", "identity");
  CHECK(pass.label(parse_ordinal("w*2")) == parse_ordinal("w*2"));
}

TEST_CASE("lens values are range-checked against their kappa") {
  ColouringSystem sys = ColouringSystem::from_json(
      nlohmann::json{{"schema", "walkforge/1"}, {"kind", "colouring-system"},
                     {"kappa0", 2},             {"kappa1", 3},
                     {"kappa2", 3},             {"F0", "identity"},
                     {"F1", "mod:3"},           {"F2", "mod:3"}});
  CHECK(sys.f0(N(1)) == 1);
  CHECK_THROWS_AS(sys.f0(N(2)), ConfigError);  // identity exceeds kappa0 = 2
}

TEST_CASE("c1 reads the hprime image at the canonical index") {
  FiniteSuccessor cs(8);
  ColouringSystem sys = mod_system("identity", "identity", "const:0");

  // walk 6 -> 2 has labels 5,4,3,2; lenses give f1 = (2,1,0,2); the canonical
  // index of that sequence is 0
  C1Result r = c1_detailed(sys, cs, N(2), N(6));
  CHECK(r.length == 4);
  CHECK(r.index == 0);
  CHECK(r.colour == 2);
  CHECK(c1(sys, cs, N(2), N(6)) == 2);

  // pair order is immaterial and the diagonal is rejected
  CHECK(c1(sys, cs, N(6), N(2)) == 2);
  CHECK_THROWS_AS(c1(sys, cs, N(3), N(3)), Error);

  // hprime postprocesses the colour
  ColouringSystem shifted = mod_system("table:[10, 11, 12]", "identity", "const:0");
  CHECK(c1(shifted, cs, N(2), N(6)) == 12);
}

TEST_CASE("c2 chases h1 and steps h2 members along the hit list") {
  FiniteSuccessor cs(8);

  // f1 = (2,1,0,2), eps = 2, hits of f1 == 2 are {0, 3}
  C2Result direct = c2_detailed(mod_system("identity", "identity", "const:0"), cs, N(2), N(6));
  CHECK(direct.index == 0);
  CHECK(!direct.fallback);
  CHECK(direct.colour == 5 % 3);  // f2 of label 5

  C2Result second = c2_detailed(mod_system("identity", "identity", "const:1"), cs, N(2), N(6));
  CHECK(second.index == 3);
  CHECK(!second.fallback);
  CHECK(second.colour == 2 % 3);  // f2 of label 2

  // h2 overshooting the hit list falls back to its last member
  C2Result over = c2_detailed(mod_system("identity", "identity", "const:9"), cs, N(2), N(6));
  CHECK(over.index == 3);
  CHECK(over.fallback);

  // an unreachable h1 target leaves no hits at all; position 0 stands in
  C2Result empty = c2_detailed(mod_system("identity", "const:1", "const:0"), cs, N(5), N(6));
  CHECK(empty.index == 0);
  CHECK(empty.fallback);
}

TEST_CASE("colour tables store the strict upper triangle row-major") {
  ColourTable t = ColourTable::constant(4, 3, 1);
  CHECK(t.cells.size() == 6);
  CHECK(t.cell_index(0, 1) == 0);
  CHECK(t.cell_index(0, 3) == 2);
  CHECK(t.cell_index(1, 2) == 3);
  CHECK(t.cell_index(2, 3) == 5);
  CHECK_THROWS_AS(t.cell_index(2, 2), Error);
  CHECK_THROWS_AS(t.cell_index(1, 4), Error);

  t.set(2, 0, 2);
  CHECK(t.at(0, 2) == 2);
  CHECK(t.at(2, 0) == 2);  // symmetric access
  CHECK(t.at(1, 3) == 1);
  CHECK_THROWS_AS(t.at(1, 1), Error);

  ColourTable back = ColourTable::from_json(t.to_json());
  CHECK(back == t);
  CHECK_THROWS_AS(ColourTable::from_json(nlohmann::json{{"schema", "walkforge/1"}}),
                  ConfigError);
}

TEST_CASE("full walk-colour tables are deterministic") {
  FiniteSuccessor cs(16);
  ColouringSystem sys = mod_system("identity", "identity", "const:0");
  ColourTable a = c1_table(sys, cs, 16);
  ColourTable b = c1_table(sys, cs, 16);
  CHECK(a == b);
  CHECK(a.n == 16);
  CHECK(a.sigma >= 1);
  for (std::uint32_t x = 0; x < 16; ++x)
    for (std::uint32_t y = x + 1; y < 16; ++y) CHECK(a.at(x, y) == c1(sys, cs, N(x), N(y)));

  ColourTable c2a = c2_table(sys, cs, 16);
  ColourTable c2b = c2_table(sys, cs, 16);
  CHECK(c2a == c2b);
  for (std::uint32_t x = 0; x < 16; ++x)
    for (std::uint32_t y = x + 1; y < 16; ++y) CHECK(c2a.at(x, y) == c2(sys, cs, N(x), N(y)));
}

TEST_CASE("random colour tables replay from their seed") {
  Rng a(11), b(11), c(12);
  ColourTable x = random_colour_table(10, 4, a);
  ColourTable y = random_colour_table(10, 4, b);
  ColourTable z = random_colour_table(10, 4, c);
  CHECK(x == y);
  CHECK(x != z);
  for (std::uint32_t value : x.cells) CHECK(value < 4);
}

TEST_CASE("richness counts exactly the lens triples without a fiber") {
  // mod 3/5/7 lenses: v -> (v%3, v%5, v%7) is a bijection onto the 105 box
  ColouringSystem sys = ColouringSystem::from_json(
      nlohmann::json{{"schema", "walkforge/1"}, {"kind", "colouring-system"},
                     {"kappa0", 3},             {"kappa1", 5},
                     {"kappa2", 7},             {"F0", "mod:3"},
                     {"F1", "mod:5"},           {"F2", "mod:7"}});
  CHECK(validate_richness(sys, 105).ok());
  RichnessReport partial = validate_richness(sys, 64);
  CHECK(!partial.ok());
  CHECK(partial.missing.size() == 105 - 64);
}

TEST_CASE("derived colourings read the stored subset values pointwise") {
  ColourTable c = ColourTable::constant(3, 2, 0);
  c.set(0, 2, 1);

  DerivationTable table;
  table.chi = 4;
  table.sigma2 = 4;
  table.A = {0b0011, 0b0101, 0b1001};
  table.entries.resize(2);
  table.entries[0].a = 0b0011;
  table.entries[0].d = {{0b0001, 2}, {0b0011, 1}};
  table.entries[1].a = 0b0101;
  table.entries[1].d = {{0b0101, 3}};
  CHECK(table.validate().empty());

  ColourTable low = derive_colouring(c, table, 0);
  CHECK(low.sigma == 4);
  CHECK(low.at(0, 1) == 1);  // colour 0, A_0 ∩ a_0 = {0,1}
  CHECK(low.at(0, 2) == 0);  // colour 1, A_0 ∩ a_1 = {0}: unlisted, defaults 0
  CHECK(low.at(1, 2) == 2);  // colour 0, A_1 ∩ a_0 = {0}

  ColourTable high = derive_colouring(c, table, 1);
  CHECK(high.at(0, 1) == 2);  // colour 0, A_1 ∩ a_0 = {0}
  CHECK(high.at(0, 2) == 0);  // colour 1, A_2 ∩ a_1 = {0}
  CHECK(high.at(1, 2) == 2);  // colour 0, A_2 ∩ a_0 = {0}

  CHECK_THROWS_AS(derive_colouring(c, table, 2), ConfigError);
  DerivationTable short_table = table;
  short_table.A.pop_back();
  CHECK_THROWS_AS(derive_colouring(c, short_table, 0), ConfigError);
}

TEST_CASE("derivation structural validation names each problem") {
  DerivationTable table;
  table.chi = 4;
  table.sigma2 = 2;
  table.theta = 2;
  table.A = {0b0001, 0b0001};  // indistinct
  table.entries.resize(1);
  table.entries[0].a = 0b0011;
  table.entries[0].d = {{0b0100, 1}, {0b0001, 1}};  // stray key; support not below theta
  const auto problems = table.validate();
  CHECK(problems.size() == 3);

  // documents reject out-of-range values on load
  nlohmann::json doc{{"schema", "walkforge/1"},
                     {"kind", "derivation"},
                     {"chi", 4},
                     {"sigma2", 2},
                     {"A", {{0}, {1}}},
                     {"colours", {{{"a", {0, 1}}, {"d", {{{0}, 5}}}}}}};
  CHECK_THROWS_AS(DerivationTable::from_json(doc), ConfigError);
  doc["colours"][0]["d"] = {{{0}, 1}};
  CHECK_NOTHROW(DerivationTable::from_json(doc));

  DerivationTable loaded = DerivationTable::from_json(doc);
  CHECK(DerivationTable::from_json(loaded.to_json()).to_json() == loaded.to_json());
}

TEST_CASE("promotions relabel pointwise through the right maps") {
  ColourTable c = ColourTable::constant(4, 2, 0);
  c.set(1, 2, 1);
  c.set(1, 3, 1);

  ColourTable same = promote_colouring(c, Promotion::identity(4, 2));
  CHECK(same == c);

  ColourTable shifted = promote_colouring(c, Promotion::shift(4, 2));
  CHECK(shifted.sigma == 2 + 3);
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = a + 1; b < 4; ++b) CHECK(shifted.at(a, b) == c.at(a, b) + b);
}

TEST_CASE("promotions must be injective on the colours actually used") {
  ColourTable c = ColourTable::constant(3, 2, 0);
  c.set(0, 2, 1);  // point 2 sees colours 0 and 1

  Promotion glue;
  glue.sigma_out = 2;
  glue.f = {{0, 1}, {0, 1}, {0, 0}};  // f[2] glues them
  CHECK_THROWS_AS(promote_colouring(c, glue), ConfigError);

  // gluing colours never seen together at one point is fine
  ColourTable mono = ColourTable::constant(3, 2, 0);
  CHECK_NOTHROW(promote_colouring(mono, glue));

  CHECK(Promotion::from_json(Promotion::shift(3, 2).to_json()).to_json() ==
        Promotion::shift(3, 2).to_json());
  CHECK_THROWS_AS(Promotion::from_json(nlohmann::json{{"schema", "walkforge/1"}}), ConfigError);
}

}  // TEST_SUITE
