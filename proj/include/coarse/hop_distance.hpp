#pragma once

#include <vector>

#include "coarse/entourage.hpp"
#include "coarse/point_set.hpp"

namespace coarse {

// D(x, y) = min{k >= 0 : (x, y) in base^k} for a reflexive symmetric base,
// with infinity as an explicit value on unreachable pairs.
struct HopDistance {
  Entourage base;
  std::vector<ExtNat> table;  // row-major

  ExtNat at(PointId x, PointId y) const {
    return table[static_cast<std::size_t>(x) * base.space_size() + y];
  }
};

HopDistance hop_distance(const Entourage& base);

// min over a of D(x, a); the empty set is at distance infinity, flagged
// degenerate.
Flagged<ExtNat> set_distance(const HopDistance& h, PointId x,
                             const PointSet& a);

}  // namespace coarse
