#include <doctest.h>

#include <random>

#include "coarse/hop_distance.hpp"
#include "coarse/metric.hpp"

using namespace coarse;

namespace {

FiniteMetric path_metric(int n) {
  auto sp = Space::make(n);
  std::vector<Rat> d(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[static_cast<std::size_t>(i) * n + j] = std::abs(i - j);
  return FiniteMetric::checked(sp, d);
}

// Oracle from the definition: first k with (x, y) in base^k.
ExtNat hop_oracle(const Entourage& base, PointId x, PointId y) {
  Entourage p = Entourage::diagonal(base.space());
  for (int k = 0; k <= base.space_size(); ++k) {
    if (p.contains(x, y)) return ExtNat::finite(k);
    p = compose(base, p);
  }
  return ExtNat::infinity();
}

Entourage random_base(const SpacePtr& sp, std::mt19937_64& rng,
                      double density = 0.3) {
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

}  // namespace

TEST_CASE("radius entourages on the 5-path") {
  const FiniteMetric m = path_metric(5);
  const Entourage l1 = entourage_at_radius(m, Rat(1));
  CHECK(l1.pair_count() == 13);
  CHECK(l1.contains(2, 3));
  CHECK(!l1.contains(2, 4));
  auto r = radius_of_entourage(m, l1);
  CHECK(r.value == Rat(1));
  CHECK(!r.degenerate);
  auto r0 = radius_of_entourage(m, Entourage::empty(m.space));
  CHECK(r0.value == Rat(0));
  CHECK(r0.degenerate);
}

TEST_CASE("filtration from scales and its invariants") {
  const FiniteMetric m = path_metric(5);
  const Filtration f = filtration_at_scales(m, {Rat(1), Rat(2), Rat(4)});
  CHECK(f.depth() == 3);
  CHECK(check_presentation(f).ok());
  CHECK(f.top() == Entourage::full(m.space));
  CHECK_THROWS_AS(filtration_at_scales(m, {Rat(2), Rat(1)}), InputError);

  // a presentation whose invariants fail is reported, not silently fixed
  Filtration bad{m.space,
                 {Entourage::from_pairs(m.space, {{0, 1}}),
                  Entourage::diagonal(m.space)}};
  const Verdict v = check_presentation(bad);
  REQUIRE(!v.ok());
  CHECK(v.violations.size() == 3);  // reflexivity, symmetry, monotonicity
}

TEST_CASE("metric validation") {
  auto sp = Space::make(2);
  CHECK_THROWS_AS(FiniteMetric::checked(sp, {Rat(0), Rat(1), Rat(2), Rat(0)}),
                  InputError);
  CHECK_THROWS_AS(FiniteMetric::checked(sp, {Rat(0), Rat(0), Rat(0), Rat(0)}),
                  InputError);
  auto sp3 = Space::make(3);
  std::vector<Rat> d{Rat(0), Rat(1), Rat(5), Rat(1), Rat(0), Rat(1),
                     Rat(5), Rat(1), Rat(0)};
  CHECK_THROWS_AS(FiniteMetric::checked(sp3, d), InputError);
}

TEST_CASE("hop distance reproduces the path metric at radius 1") {
  const FiniteMetric m = path_metric(7);
  const HopDistance h = hop_distance(entourage_at_radius(m, Rat(1)));
  for (PointId x = 0; x < 7; ++x)
    for (PointId y = 0; y < 7; ++y)
      CHECK(h.at(x, y) == ExtNat::finite(std::abs(x - y)));
}

TEST_CASE("hop distance requires reflexive symmetric bases") {
  auto sp = Space::make(3);
  CHECK_THROWS_AS(hop_distance(Entourage::from_pairs(sp, {{0, 1}, {1, 0}})),
                  InputError);
  CHECK_THROWS_AS(
      hop_distance(unite(Entourage::diagonal(sp),
                         Entourage::from_pairs(sp, {{0, 1}}))),
      InputError);
}

TEST_CASE("hop distance clauses, exhaustive on up to 4 points") {
  for (int n = 1; n <= 4; ++n) {
    auto sp = Space::make(n);
    const int off = n * (n - 1) / 2;
    for (unsigned mask = 0; mask < (1u << off); ++mask) {
      std::vector<PointPair> pairs;
      for (PointId x = 0; x < n; ++x) pairs.emplace_back(x, x);
      int b = 0;
      for (PointId x = 0; x < n; ++x)
        for (PointId y = x + 1; y < n; ++y, ++b)
          if (mask & (1u << b)) {
            pairs.emplace_back(x, y);
            pairs.emplace_back(y, x);
          }
      const Entourage base = Entourage::from_pairs(sp, pairs);
      const HopDistance h = hop_distance(base);
      for (PointId x = 0; x < n; ++x)
        for (PointId y = 0; y < n; ++y) {
          CHECK(h.at(x, y) == hop_oracle(base, x, y));
          CHECK((h.at(x, y) == ExtNat::finite(0)) == (x == y));
          CHECK(h.at(x, y) == h.at(y, x));
          for (PointId z = 0; z < n; ++z)
            CHECK(h.at(x, y) <= h.at(x, z) + h.at(z, y));
        }
    }
  }
}

TEST_CASE("set distance is 1-Lipschitz in the point") {
  std::mt19937_64 rng(424242);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + static_cast<int>(rng() % 8);
    auto sp = Space::make(n);
    const HopDistance h = hop_distance(random_base(sp, rng));
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      PointSet a(n);
      for (int p = 0; p < n; ++p)
        if (mask & (1u << p)) a.insert(p);
      for (PointId w = 0; w < n; ++w)
        for (PointId z = 0; z < n; ++z) {
          const ExtNat dw = set_distance(h, w, a).value;
          const ExtNat dz = set_distance(h, z, a).value;
          const ExtNat dwz = h.at(w, z);
          if (dw.is_infinite() != dz.is_infinite()) {
            CHECK(dwz.is_infinite());
          } else if (!dw.is_infinite()) {
            const std::uint64_t gap = dw >= dz ? dw.value() - dz.value()
                                               : dz.value() - dw.value();
            CHECK(ExtNat::finite(gap) <= dwz);
          }
        }
    }
  }
}

TEST_CASE("distance to the empty set is infinite and degenerate") {
  auto sp = Space::make(3);
  const HopDistance h = hop_distance(Entourage::diagonal(sp));
  const auto d = set_distance(h, 0, PointSet(3));
  CHECK(d.value.is_infinite());
  CHECK(d.degenerate);
  CHECK(h.at(0, 1).is_infinite());
}
