#include <doctest.h>

#include <random>

#include "coarse/entourage.hpp"

using namespace coarse;

namespace {

// Oracle: composition by direct enumeration of all point triples.
Entourage compose_oracle(const Entourage& a, const Entourage& b) {
  const int n = a.space_size();
  std::vector<PointPair> out;
  for (PointId x = 0; x < n; ++x)
    for (PointId z = 0; z < n; ++z)
      for (PointId y = 0; y < n; ++y)
        if (a.contains(x, y) && b.contains(y, z)) {
          out.emplace_back(x, z);
          break;
        }
  return Entourage::from_pairs(a.space(), out);
}

// Oracle: k-fold iterated composition from the definition.
Entourage power_oracle(const Entourage& e, std::uint64_t k) {
  Entourage acc = Entourage::diagonal(e.space());
  for (std::uint64_t i = 0; i < k; ++i) acc = compose_oracle(e, acc);
  return acc;
}

Entourage path_radius(const SpacePtr& sp, int r) {
  std::vector<PointPair> pairs;
  for (PointId i = 0; i < sp->size; ++i)
    for (PointId j = 0; j < sp->size; ++j)
      if (std::abs(i - j) <= r) pairs.emplace_back(i, j);
  return Entourage::from_pairs(sp, pairs);
}

Entourage random_relation(const SpacePtr& sp, std::mt19937_64& rng,
                          double density = 0.35) {
  std::bernoulli_distribution bit(density);
  std::vector<PointPair> pairs;
  for (PointId x = 0; x < sp->size; ++x)
    for (PointId y = 0; y < sp->size; ++y)
      if (bit(rng)) pairs.emplace_back(x, y);
  return Entourage::from_pairs(sp, pairs);
}

Entourage from_mask(const SpacePtr& sp, unsigned mask) {
  const int n = sp->size;
  std::vector<PointPair> pairs;
  for (int b = 0; b < n * n; ++b)
    if (mask & (1u << b)) pairs.emplace_back(b / n, b % n);
  return Entourage::from_pairs(sp, pairs);
}

}  // namespace

TEST_CASE("composition on the 5-path matches the radius picture") {
  auto sp = Space::make(5);
  const Entourage l1 = path_radius(sp, 1);
  CHECK(compose(l1, l1) == path_radius(sp, 2));
  CHECK(power(l1, 3) == path_radius(sp, 3));
  CHECK(power(l1, 0) == Entourage::diagonal(sp));
  CHECK(compose(l1, l1) == compose_oracle(l1, l1));
  for (int k = 0; k <= 6; ++k) CHECK(power(l1, k) == power_oracle(l1, k));
}

TEST_CASE("image varies the first coordinate") {
  auto sp = Space::make(5);
  const Entourage l1 = path_radius(sp, 1);
  CHECK(image(l1, PointSet::of(5, {2})) == PointSet::of(5, {1, 2, 3}));
  const Entourage one = Entourage::from_pairs(sp, {{0, 4}});
  CHECK(image(one, PointSet::of(5, {4})) == PointSet::of(5, {0}));
  CHECK(image(one, PointSet::of(5, {0})).empty());
}

TEST_CASE("diagonal is a two-sided identity") {
  auto sp = Space::make(6);
  std::mt19937_64 rng(7);
  const Entourage d = Entourage::diagonal(sp);
  for (int t = 0; t < 20; ++t) {
    const Entourage e = random_relation(sp, rng);
    CHECK(compose(d, e) == e);
    CHECK(compose(e, d) == e);
  }
}

TEST_CASE("relation algebra laws, exhaustive on 2 points") {
  auto sp = Space::make(2);
  std::vector<Entourage> all;
  for (unsigned m = 0; m < 16; ++m) all.push_back(from_mask(sp, m));
  for (const auto& a : all)
    for (const auto& b : all) {
      CHECK(inverse_of(compose(a, b)) == compose(inverse_of(b), inverse_of(a)));
      CHECK(compose(a, b) == compose_oracle(a, b));
      for (const auto& c : all)
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    }
}

TEST_CASE("relation algebra laws on random relations up to 8 points") {
  std::mt19937_64 rng(20240817);
  for (int t = 0; t < 300; ++t) {
    const int n = 2 + static_cast<int>(rng() % 7);
    auto sp = Space::make(n);
    const Entourage a = random_relation(sp, rng);
    const Entourage b = random_relation(sp, rng);
    const Entourage c = random_relation(sp, rng);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    CHECK(inverse_of(compose(a, b)) == compose(inverse_of(b), inverse_of(a)));
    CHECK(inverse_of(inverse_of(a)) == a);
    const Entourage r = unite(a, Entourage::diagonal(sp));
    for (int j = 0; j <= 3; ++j)
      for (int k = 0; k <= 3; ++k)
        CHECK(power(r, j + k) == compose(power(r, j), power(r, k)));
    // image distributes over composition
    PointSet s(n);
    for (PointId p = 0; p < n; ++p)
      if (rng() & 1) s.insert(p);
    CHECK(image(compose(a, b), s) == image(a, image(b, s)));
    // monotonicity of composition under union-enlargement
    const Entourage a2 = unite(a, c);
    const Entourage b2 = unite(b, inverse_of(c));
    CHECK(is_subset(compose(a, b), compose(a2, b2)));
  }
}

TEST_CASE("set algebra and subset witnesses") {
  auto sp = Space::make(4);
  std::mt19937_64 rng(99);
  for (int t = 0; t < 50; ++t) {
    const Entourage a = random_relation(sp, rng);
    const Entourage b = random_relation(sp, rng);
    CHECK(is_subset(intersect(a, b), a));
    CHECK(is_subset(a, unite(a, b)));
    CHECK(unite(difference(a, b), intersect(a, b)) == a);
    if (auto w = a.first_pair_not_in(b)) {
      CHECK(a.contains(w->first, w->second));
      CHECK(!b.contains(w->first, w->second));
    } else {
      CHECK(is_subset(a, b));
    }
  }
}

TEST_CASE("reflexivity and symmetry witnesses") {
  auto sp = Space::make(4);
  const Entourage e = Entourage::from_pairs(sp, {{0, 0}, {1, 2}, {2, 1}, {3, 1}});
  auto rw = e.reflexivity_witness();
  REQUIRE(rw.has_value());
  CHECK(*rw == 1);
  auto swit = e.symmetry_witness();
  REQUIRE(swit.has_value());
  CHECK(*swit == PointPair{3, 1});
  CHECK(path_radius(sp, 1).is_reflexive());
  CHECK(path_radius(sp, 1).is_symmetric());
}

TEST_CASE("dense and sparse representations agree") {
  auto sp = Space::make(6);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const Entourage d = random_relation(sp, rng);
    const Entourage s =
        Entourage::from_pairs_with_rep(sp, d.pairs(), Entourage::Rep::sparse);
    CHECK(d.rep() == Entourage::Rep::dense);
    CHECK(s.rep() == Entourage::Rep::sparse);
    CHECK(d == s);
    const Entourage e = random_relation(sp, rng);
    const Entourage es =
        Entourage::from_pairs_with_rep(sp, e.pairs(), Entourage::Rep::sparse);
    CHECK(compose(s, es) == compose(d, e));
    CHECK(unite(s, es) == unite(d, e));
    CHECK(intersect(s, es) == intersect(d, e));
    CHECK(difference(s, es) == difference(d, e));
    CHECK(inverse_of(s) == inverse_of(d));
    CHECK(image(s, PointSet::of(6, {0, 3})) == image(d, PointSet::of(6, {0, 3})));
  }
}

TEST_CASE("mismatched spaces are input errors") {
  auto a = Space::make(3);
  auto b = Space::make(4);
  CHECK_THROWS_AS(compose(Entourage::diagonal(a), Entourage::diagonal(b)),
                  InputError);
  CHECK_THROWS_AS(Entourage::from_pairs(a, {{0, 3}}), InputError);
}
