#pragma once

#include <vector>

#include "coarse/entourage.hpp"
#include "coarse/filtration.hpp"
#include "coarse/rational.hpp"

namespace coarse {

// Finite metric with exact rational distances.
struct FiniteMetric {
  SpacePtr space;
  std::vector<Rat> dist;  // row-major, size*size

  static FiniteMetric checked(SpacePtr space, std::vector<Rat> dist);

  const Rat& at(PointId x, PointId y) const {
    return dist[static_cast<std::size_t>(x) * space->size + y];
  }
};

// {(x, y) : d(x, y) <= r}.
Entourage entourage_at_radius(const FiniteMetric& m, const Rat& r);

// Largest distance realized by a pair of e. The empty relation has radius 0,
// flagged degenerate.
Flagged<Rat> radius_of_entourage(const FiniteMetric& m, const Entourage& e);

// Levels at the given nonnegative nondecreasing scales.
Filtration filtration_at_scales(const FiniteMetric& m,
                                const std::vector<Rat>& scales);

}  // namespace coarse
