#include <doctest.h>

#include <cstdlib>
#include <functional>
#include <random>
#include <string>

#include "coarse/decomposition.hpp"

using namespace coarse;

namespace {

Entourage path_radius(const SpacePtr& sp, int r) {
  std::vector<PointPair> pairs;
  for (PointId x = 0; x < sp->size; ++x)
    for (PointId y = 0; y < sp->size; ++y)
      if (std::abs(x - y) <= r) pairs.emplace_back(x, y);
  return Entourage::from_pairs(sp, pairs);
}

std::string input_error_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

// Definition chased literally: every pair of l between two blocks of one
// part that are different sets.
std::vector<PointPair> cross_pairs_oracle(const Decomposition& dec,
                                          const Entourage& l) {
  std::vector<PointPair> out;
  for (const auto& p : dec.parts)
    for (std::size_t a = 0; a < p.blocks.size(); ++a)
      for (std::size_t b = 0; b < p.blocks.size(); ++b) {
        if (a == b || p.blocks[a] == p.blocks[b]) continue;
        for (PointId x : p.blocks[a].to_indices())
          for (PointId y : p.blocks[b].to_indices())
            if (l.contains(x, y)) out.emplace_back(x, y);
      }
  return out;
}

DecompositionPart part_of(int n,
                          std::initializer_list<std::initializer_list<PointId>>
                              blocks) {
  DecompositionPart p{PointSet(n), {}};
  for (const auto& b : blocks) {
    const PointSet s = PointSet::of(n, b);
    p.part = p.part | s;
    p.blocks.push_back(s);
  }
  return p;
}

// The nine-point path split into near and far halves; one block per part, so
// it holds at every entourage.
FamilyDecomposition halves_of_nine(const SpacePtr& sp, const Entourage& l) {
  const SubsetFamily whole =
      SubsetFamily::make(sp, {PointSet::full(sp->size)});
  const SubsetFamily halves = SubsetFamily::make(
      sp, {PointSet::of(9, {0, 1, 2, 3, 4}), PointSet::of(9, {5, 6, 7, 8})});
  Decomposition dec{sp,
                    PointSet::full(9),
                    {part_of(9, {{0, 1, 2, 3, 4}}), part_of(9, {{5, 6, 7, 8}})}};
  return FamilyDecomposition{whole, halves, l, 2, {dec}};
}

// Each half broken into blocks of diameter at most one, gaps of two keeping
// same-part blocks separated at radius one.
FamilyDecomposition halves_into_flats(const SpacePtr& sp, const Entourage& l) {
  const SubsetFamily halves = SubsetFamily::make(
      sp, {PointSet::of(9, {0, 1, 2, 3, 4}), PointSet::of(9, {5, 6, 7, 8})});
  const SubsetFamily flats = SubsetFamily::make(
      sp, {PointSet::of(9, {0, 1}), PointSet::of(9, {2}),
           PointSet::of(9, {3, 4}), PointSet::of(9, {5, 6}),
           PointSet::of(9, {7}), PointSet::of(9, {8})});
  Decomposition low{sp,
                    PointSet::of(9, {0, 1, 2, 3, 4}),
                    {part_of(9, {{0, 1}, {3, 4}}), part_of(9, {{2}})}};
  Decomposition high{sp,
                     PointSet::of(9, {5, 6, 7, 8}),
                     {part_of(9, {{5, 6}, {8}}), part_of(9, {{7}})}};
  return FamilyDecomposition{halves, flats, l, 2, {low, high}};
}

// Blocks of one part as the l-components inside it, which are separated by
// construction.
std::vector<PointSet> component_blocks(const Entourage& l,
                                       const PointSet& inside) {
  std::vector<PointSet> blocks;
  PointSet left = inside;
  while (!left.empty()) {
    PointSet comp(inside.universe_size());
    comp.insert(left.first());
    for (;;) {
      const PointSet grown = (comp | image(l, comp)) & inside;
      if (grown == comp) break;
      comp = grown;
    }
    blocks.push_back(comp);
    left = left - comp;
  }
  return blocks;
}

FamilyDecomposition random_family_decomposition(const SubsetFamily& source,
                                                const Entourage& l, int d,
                                                std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, d - 1);
  std::vector<Decomposition> decs;
  std::vector<PointSet> all_blocks;
  for (const auto& member : source.members) {
    std::vector<PointSet> assigned(d, PointSet(source.space->size));
    member.for_each([&](PointId p) { assigned[pick(rng)].insert(p); });
    Decomposition dec{source.space, member, {}};
    for (int i = 0; i < d; ++i) {
      DecompositionPart part{assigned[i], component_blocks(l, assigned[i])};
      all_blocks.insert(all_blocks.end(), part.blocks.begin(),
                        part.blocks.end());
      dec.parts.push_back(std::move(part));
    }
    decs.push_back(std::move(dec));
  }
  return FamilyDecomposition{
      source, SubsetFamily::canonicalized(source.space, std::move(all_blocks)),
      l, d, std::move(decs)};
}

Entourage random_reflexive_symmetric(const SpacePtr& sp, std::mt19937_64& rng,
                                     double density) {
  std::bernoulli_distribution bit(density);
  std::vector<PointPair> pairs;
  for (PointId x = 0; x < sp->size; ++x) {
    pairs.emplace_back(x, x);
    for (PointId y = x + 1; y < sp->size; ++y)
      if (bit(rng)) {
        pairs.emplace_back(x, y);
        pairs.emplace_back(y, x);
      }
  }
  return Entourage::from_pairs(sp, pairs);
}

PointSet random_subset(int n, std::mt19937_64& rng, int max_size) {
  std::uniform_int_distribution<int> count(1, max_size);
  std::uniform_int_distribution<int> pick(0, n - 1);
  PointSet s(n);
  const int c = count(rng);
  for (int i = 0; i < c; ++i) s.insert(pick(rng));
  return s;
}

}  // namespace

TEST_CASE("nine-point path splits into two separated part families") {
  auto sp = Space::make(9);
  const Entourage r1 = path_radius(sp, 1);
  const Entourage r3 = path_radius(sp, 3);
  const SubsetFamily family = SubsetFamily::make(
      sp, {PointSet::of(9, {0, 1}), PointSet::of(9, {4, 5}),
           PointSet::of(9, {8}), PointSet::of(9, {2, 3}),
           PointSet::of(9, {6, 7})});
  const Decomposition dec{sp,
                          PointSet::full(9),
                          {part_of(9, {{0, 1}, {4, 5}, {8}}),
                           part_of(9, {{2, 3}, {6, 7}})}};

  CHECK(dec.arity() == 2);
  CHECK(verify_decomposition(dec, family, r1).ok());
  CHECK(cross_pairs_oracle(dec, r1).empty());

  // At radius three the first two blocks of the first part touch.
  const Verdict wide = verify_decomposition(dec, family, r3);
  REQUIRE(wide.violations.size() == 1);
  CHECK(wide.violations[0].rule == "disjoint");
  CHECK(wide.violations[0].detail ==
        "part 0 blocks {0,1} and {4,5} linked by (1,4)");
  CHECK(!cross_pairs_oracle(dec, r3).empty());
}

TEST_CASE("a single whole-space block decomposes at every entourage") {
  auto sp = Space::make(9);
  const SubsetFamily family =
      SubsetFamily::make(sp, {PointSet::full(9), PointSet::of(9, {0})});
  const Decomposition dec{sp, PointSet::full(9), {part_of(9, {{0, 1, 2, 3, 4,
                                                               5, 6, 7, 8}})}};
  CHECK(verify_decomposition(dec, family, path_radius(sp, 0)).ok());
  CHECK(verify_decomposition(dec, family, path_radius(sp, 3)).ok());
  CHECK(verify_decomposition(dec, family, Entourage::full(sp)).ok());
}

TEST_CASE("each decomposition clause reports its own witness") {
  auto sp = Space::make(9);
  const Entourage r1 = path_radius(sp, 1);
  const SubsetFamily family = SubsetFamily::make(
      sp, {PointSet::of(9, {0, 1}), PointSet::of(9, {4, 5}),
           PointSet::of(9, {8}), PointSet::of(9, {2, 3}),
           PointSet::of(9, {6, 7})});
  const DecompositionPart even = part_of(9, {{0, 1}, {4, 5}, {8}});
  const DecompositionPart odd = part_of(9, {{2, 3}, {6, 7}});

  SUBCASE("dropping a part leaves target points unplaced") {
    const Decomposition dec{sp, PointSet::full(9), {even}};
    const Verdict v = verify_decomposition(dec, family, r1);
    REQUIRE(v.violations.size() == 1);
    CHECK(v.violations[0].rule == "part_union");
    CHECK(v.violations[0].detail == "target points {2,3,6,7} lie in no part");
  }

  SUBCASE("a part beyond the target is a spill") {
    const Decomposition dec{
        sp, PointSet::of(9, {0, 1, 2, 3, 4, 5, 6, 7}), {even, odd}};
    const Verdict v = verify_decomposition(dec, family, r1);
    REQUIRE(v.violations.size() == 1);
    CHECK(v.violations[0].rule == "part_union");
    CHECK(v.violations[0].detail == "parts spill outside the target at {8}");
  }

  SUBCASE("a part must be exactly the union of its blocks") {
    DecompositionPart padded = even;
    padded.part = padded.part | PointSet::of(9, {2});
    Decomposition dec{sp, PointSet::full(9), {padded, odd}};
    const Verdict v = verify_decomposition(dec, family, r1);
    REQUIRE(v.violations.size() == 1);
    CHECK(v.violations[0].rule == "block_union");
    CHECK(v.violations[0].detail ==
          "part 0 is not covered by its blocks at {2}");

    DecompositionPart trimmed = even;
    trimmed.part = trimmed.part - PointSet::of(9, {8});
    dec.target = PointSet::of(9, {0, 1, 2, 3, 4, 5, 6, 7});
    dec.parts = {trimmed, odd};
    const Verdict w = verify_decomposition(dec, family, r1);
    REQUIRE(w.violations.size() == 1);
    CHECK(w.violations[0].rule == "block_union");
    CHECK(w.violations[0].detail == "part 0 blocks spill outside it at {8}");
  }

  SUBCASE("blocks come from the family") {
    DecompositionPart stretched = part_of(9, {{0, 1}, {4, 5}, {7, 8}});
    const Decomposition dec{
        sp, PointSet::of(9, {0, 1, 2, 3, 4, 5, 6, 7, 8}),
        {stretched, part_of(9, {{2, 3}, {6, 7}})}};
    const Verdict v = verify_decomposition(dec, family, r1);
    REQUIRE(v.violations.size() == 1);
    CHECK(v.violations[0].rule == "member");
    CHECK(v.violations[0].detail ==
          "part 0 block {7,8} is not a family member");
  }

  SUBCASE("a repeated block is flagged once") {
    DecompositionPart doubled = even;
    doubled.blocks.push_back(PointSet::of(9, {0, 1}));
    const Decomposition dec{sp, PointSet::full(9), {doubled, odd}};
    const Verdict v = verify_decomposition(dec, family, r1);
    REQUIRE(v.violations.size() == 1);
    CHECK(v.violations[0].rule == "distinct");
    CHECK(v.violations[0].detail == "part 0 repeats block {0,1}");
  }

  SUBCASE("structural mismatches throw instead of reporting") {
    const Decomposition dec{sp, PointSet::full(9), {even, odd}};
    auto other = Space::make(7);
    CHECK_THROWS_AS(
        verify_decomposition(
            dec, SubsetFamily::make(other, {PointSet::of(7, {0})}), r1),
        InputError);
    Decomposition undersized = dec;
    undersized.target = PointSet::full(7);
    CHECK_THROWS_AS(verify_decomposition(undersized, family, r1), InputError);
  }
}

TEST_CASE("family decompositions line up member by member") {
  auto sp = Space::make(9);
  const Entourage r1 = path_radius(sp, 1);
  const FamilyDecomposition fd = halves_into_flats(sp, r1);
  CHECK(verify_family_decomposition(fd).ok());

  SUBCASE("a missing member decomposition is structural") {
    FamilyDecomposition broken = fd;
    broken.members.pop_back();
    const std::string msg = input_error_message(
        [&] { verify_family_decomposition(broken); });
    CHECK(msg.find("1 decompositions for 2 source members") !=
          std::string::npos);
  }

  SUBCASE("decomposing the wrong member is reported by index") {
    FamilyDecomposition swapped = fd;
    std::swap(swapped.members[0], swapped.members[1]);
    const Verdict v = verify_family_decomposition(swapped);
    REQUIRE(v.violations.size() == 2);
    CHECK(v.violations[0].rule == "target");
    CHECK(v.violations[0].detail ==
          "member 0: decomposes {5,6,7,8} instead of {0,1,2,3,4}");
    CHECK(v.violations[1].rule == "target");
  }

  SUBCASE("arity is declared once and holds for every member") {
    FamilyDecomposition lopsided = fd;
    lopsided.members[1].parts.pop_back();
    lopsided.members[1].parts[0] = part_of(9, {{5, 6}, {8}});
    lopsided.members[1].parts[0].part =
        lopsided.members[1].parts[0].part | PointSet::of(9, {7});
    const Verdict v = verify_family_decomposition(lopsided);
    bool saw_arity = false;
    for (const auto& viol : v.violations)
      saw_arity = saw_arity || (viol.rule == "arity" &&
                                viol.detail.find("member 1: arity 1 against "
                                                 "declared arity 2") == 0);
    CHECK(saw_arity);
  }

  SUBCASE("member verdicts carry their index") {
    FamilyDecomposition foreign = fd;
    foreign.members[0].parts[1] = part_of(9, {{2}, {3}});
    const Verdict v = verify_family_decomposition(foreign);
    REQUIRE(!v.ok());
    CHECK(v.violations[0].detail.find("member 0: ") == 0);
  }
}

TEST_CASE("composition refines blocks through their own decompositions") {
  auto sp = Space::make(4);
  const Entourage d0 = path_radius(sp, 0);
  const SubsetFamily whole = SubsetFamily::make(sp, {PointSet::full(4)});
  const SubsetFamily pairs = SubsetFamily::make(
      sp, {PointSet::of(4, {0, 1}), PointSet::of(4, {2, 3})});
  const SubsetFamily dots = SubsetFamily::make(
      sp, {PointSet::of(4, {0}), PointSet::of(4, {1}), PointSet::of(4, {2}),
           PointSet::of(4, {3})});
  const FamilyDecomposition outer{
      whole,
      pairs,
      d0,
      1,
      {Decomposition{sp, PointSet::full(4), {part_of(4, {{0, 1}, {2, 3}})}}}};
  const FamilyDecomposition inner{
      pairs,
      dots,
      d0,
      1,
      {Decomposition{sp, PointSet::of(4, {0, 1}), {part_of(4, {{0}, {1}})}},
       Decomposition{sp, PointSet::of(4, {2, 3}), {part_of(4, {{2}, {3}})}}}};

  SUBCASE("arities one compose to arity one") {
    const FamilyDecomposition composed = compose_weak(outer, inner);
    CHECK(composed.arity == 1);
    CHECK(composed.source == whole);
    CHECK(composed.target == dots);
    CHECK(composed.entourage == d0);
    CHECK(verify_family_decomposition(composed).ok());
    REQUIRE(composed.members.size() == 1);
    REQUIRE(composed.members[0].parts.size() == 1);
    CHECK(composed.members[0].parts[0].blocks.size() == 4);
  }

  SUBCASE("an identity inner stage changes nothing but bookkeeping") {
    const FamilyDecomposition identity{
        pairs,
        pairs,
        d0,
        1,
        {Decomposition{sp, PointSet::of(4, {0, 1}), {part_of(4, {{0, 1}})}},
         Decomposition{sp, PointSet::of(4, {2, 3}), {part_of(4, {{2, 3}})}}}};
    const FamilyDecomposition composed = compose_weak(outer, identity);
    CHECK(composed.arity == 1);
    CHECK(composed.target == pairs);
    CHECK(verify_family_decomposition(composed).ok());
    CHECK(composed.members[0].parts[0].part ==
          outer.members[0].parts[0].part);
    CHECK(composed.members[0].parts[0].blocks ==
          outer.members[0].parts[0].blocks);
  }

  SUBCASE("an outer block without an inner decomposition is named") {
    FamilyDecomposition clipped = inner;
    clipped.source = SubsetFamily::make(sp, {PointSet::of(4, {0, 1})});
    clipped.members.pop_back();
    const std::string msg =
        input_error_message([&] { compose_weak(outer, clipped); });
    CHECK(msg.find("outer block {2,3} has no inner decomposition") !=
          std::string::npos);
  }

  SUBCASE("inputs must verify before composing") {
    FamilyDecomposition broken = inner;
    broken.members[0].parts[0] = part_of(4, {{0}});
    const std::string msg =
        input_error_message([&] { compose_weak(outer, broken); });
    CHECK(msg.find("inner decomposition does not verify") !=
          std::string::npos);
  }
}

TEST_CASE("two stages over the nine-point path compose at radius one") {
  auto sp = Space::make(9);
  const Entourage r1 = path_radius(sp, 1);
  const FamilyDecomposition outer = halves_of_nine(sp, r1);
  const FamilyDecomposition inner = halves_into_flats(sp, r1);
  REQUIRE(verify_family_decomposition(outer).ok());
  REQUIRE(verify_family_decomposition(inner).ok());

  const FamilyDecomposition composed = compose_weak(outer, inner);
  CHECK(composed.arity == 4);
  CHECK(composed.entourage == r1);
  CHECK(composed.source == outer.source);
  CHECK(composed.target == inner.target);
  CHECK(verify_family_decomposition(composed).ok());

  REQUIRE(composed.members.size() == 1);
  const Decomposition& dec = composed.members[0];
  REQUIRE(dec.parts.size() == 4);
  CHECK(dec.parts[0].part == PointSet::of(9, {0, 1, 3, 4}));
  CHECK(dec.parts[0].blocks ==
        std::vector<PointSet>{PointSet::of(9, {0, 1}),
                              PointSet::of(9, {3, 4})});
  CHECK(dec.parts[1].part == PointSet::of(9, {2}));
  CHECK(dec.parts[2].part == PointSet::of(9, {5, 6, 8}));
  CHECK(dec.parts[3].part == PointSet::of(9, {7}));
  CHECK(cross_pairs_oracle(dec, r1).empty());
}

TEST_CASE("composition of random stages verifies on small spaces") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> size(4, 10);
  std::uniform_int_distribution<int> arity(1, 3);
  int composed_parts = 0;
  for (int trial = 0; trial < 25; ++trial) {
    auto sp = Space::make(size(rng));
    const Entourage l1 = random_reflexive_symmetric(sp, rng, 0.3);
    const Entourage l2 = random_reflexive_symmetric(sp, rng, 0.3);
    std::vector<PointSet> seeds;
    seeds.push_back(PointSet::full(sp->size));
    if (trial % 2) seeds.push_back(random_subset(sp->size, rng, 4));
    const SubsetFamily source = SubsetFamily::canonicalized(sp, seeds);

    const int d1 = arity(rng);
    const int d2 = arity(rng);
    const FamilyDecomposition outer =
        random_family_decomposition(source, l1, d1, rng);
    REQUIRE(verify_family_decomposition(outer).ok());
    const FamilyDecomposition inner =
        random_family_decomposition(outer.target, l2, d2, rng);
    REQUIRE(verify_family_decomposition(inner).ok());

    const FamilyDecomposition composed = compose_weak(outer, inner);
    CHECK(composed.arity == d1 * d2);
    CHECK(composed.entourage == intersect(l1, l2));
    REQUIRE(verify_family_decomposition(composed).ok());
    for (const auto& dec : composed.members) {
      CHECK(cross_pairs_oracle(dec, composed.entourage).empty());
      composed_parts += static_cast<int>(dec.parts.size());
    }
  }
  CHECK(composed_parts > 25);
}

TEST_CASE("a chain at one entourage collapses to a single stage") {
  auto sp = Space::make(8);
  const Entourage r1 = path_radius(sp, 1);

  const SubsetFamily whole = SubsetFamily::make(sp, {PointSet::full(8)});
  const SubsetFamily halves = SubsetFamily::make(
      sp, {PointSet::of(8, {0, 1, 2, 3}), PointSet::of(8, {4, 5, 6, 7})});
  const SubsetFamily quarters = SubsetFamily::make(
      sp, {PointSet::of(8, {0, 1}), PointSet::of(8, {2, 3}),
           PointSet::of(8, {4, 5}), PointSet::of(8, {6, 7})});
  std::vector<PointSet> dots;
  for (PointId p = 0; p < 8; ++p) dots.push_back(PointSet::of(8, {p}));
  const SubsetFamily singletons = SubsetFamily::make(sp, dots);

  auto split = [&](std::initializer_list<PointId> lo,
                   std::initializer_list<PointId> hi) {
    PointSet a = PointSet::of(8, lo);
    PointSet b = PointSet::of(8, hi);
    return Decomposition{
        sp, a | b, {DecompositionPart{a, {a}}, DecompositionPart{b, {b}}}};
  };
  const FamilyDecomposition s1{
      whole, halves, r1, 2, {split({0, 1, 2, 3}, {4, 5, 6, 7})}};
  const FamilyDecomposition s2{
      halves, quarters, r1, 2, {split({0, 1}, {2, 3}), split({4, 5}, {6, 7})}};
  const FamilyDecomposition s3{quarters,
                               singletons,
                               r1,
                               2,
                               {split({0}, {1}), split({2}, {3}),
                                split({4}, {5}), split({6}, {7})}};

  SUBCASE("a chain of one is returned as it came") {
    const FamilyDecomposition same = first_turn_collapse({s2});
    CHECK(same.source == s2.source);
    CHECK(same.target == s2.target);
    CHECK(same.arity == 2);
    CHECK(same.members[0].parts[0].blocks == s2.members[0].parts[0].blocks);
  }

  SUBCASE("three two-fold stages make arity eight") {
    const FamilyDecomposition flat = first_turn_collapse({s1, s2, s3});
    CHECK(flat.arity == 8);
    CHECK(flat.source == whole);
    CHECK(flat.target == singletons);
    CHECK(verify_family_decomposition(flat).ok());
    REQUIRE(flat.members.size() == 1);
    REQUIRE(flat.members[0].parts.size() == 8);
    for (PointId p = 0; p < 8; ++p)
      CHECK(flat.members[0].parts[p].part == PointSet::of(8, {p}));
  }

  SUBCASE("the collapse is the fold of pairwise composition") {
    auto sp9 = Space::make(9);
    const Entourage nine_r1 = path_radius(sp9, 1);
    const FamilyDecomposition once =
        compose_weak(halves_of_nine(sp9, nine_r1),
                     halves_into_flats(sp9, nine_r1));
    const FamilyDecomposition folded = first_turn_collapse(
        {halves_of_nine(sp9, nine_r1), halves_into_flats(sp9, nine_r1)});
    CHECK(folded.arity == once.arity);
    CHECK(folded.target == once.target);
    CHECK(verify_family_decomposition(folded).ok());
    REQUIRE(folded.members.size() == 1);
    for (std::size_t i = 0; i < folded.members[0].parts.size(); ++i)
      CHECK(folded.members[0].parts[i].part == once.members[0].parts[i].part);
  }

  SUBCASE("chains must agree on the entourage") {
    FamilyDecomposition other = s2;
    other.entourage = path_radius(sp, 2);
    const std::string msg =
        input_error_message([&] { first_turn_collapse({s1, other}); });
    CHECK(msg.find("stage 2 plays a different entourage") !=
          std::string::npos);
    CHECK_THROWS_AS(first_turn_collapse({}), InputError);
  }
}
