#include "coarse/metric.hpp"

namespace coarse {

FiniteMetric FiniteMetric::checked(SpacePtr space, std::vector<Rat> dist) {
  const int n = space->size;
  if (dist.size() != static_cast<std::size_t>(n) * n)
    throw InputError("metric needs " + std::to_string(n) + "x" +
                     std::to_string(n) + " entries");
  FiniteMetric m{std::move(space), std::move(dist)};
  for (PointId x = 0; x < n; ++x) {
    if (m.at(x, x) != 0)
      throw InputError("metric: d(" + m.space->label_of(x) + "," +
                       m.space->label_of(x) + ") must be 0");
    for (PointId y = 0; y < n; ++y) {
      if (m.at(x, y) < 0)
        throw InputError("metric: negative distance at " +
                         pair_to_string(m.space, {x, y}));
      if (x != y && m.at(x, y) == 0)
        throw InputError("metric: distinct points " +
                         pair_to_string(m.space, {x, y}) + " at distance 0");
      if (m.at(x, y) != m.at(y, x))
        throw InputError("metric: asymmetric at " +
                         pair_to_string(m.space, {x, y}));
      for (PointId z = 0; z < n; ++z)
        if (m.at(x, z) > m.at(x, y) + m.at(y, z))
          throw InputError("metric: triangle inequality fails for (" +
                           m.space->label_of(x) + "," + m.space->label_of(y) +
                           "," + m.space->label_of(z) + ")");
    }
  }
  return m;
}

Entourage entourage_at_radius(const FiniteMetric& m, const Rat& r) {
  const int n = m.space->size;
  std::vector<PointPair> pairs;
  for (PointId x = 0; x < n; ++x)
    for (PointId y = 0; y < n; ++y)
      if (m.at(x, y) <= r) pairs.emplace_back(x, y);
  return Entourage::from_pairs(m.space, pairs);
}

Flagged<Rat> radius_of_entourage(const FiniteMetric& m, const Entourage& e) {
  require_same_space(m.space, e.space(), "radius_of_entourage");
  const auto pairs = e.pairs();
  if (pairs.empty()) return {Rat(0), true};
  Rat best(0);
  for (const auto& [x, y] : pairs)
    if (m.at(x, y) > best) best = m.at(x, y);
  return {best, false};
}

Filtration filtration_at_scales(const FiniteMetric& m,
                                const std::vector<Rat>& scales) {
  if (scales.empty()) throw InputError("at least one scale is required");
  std::vector<Entourage> levels;
  levels.reserve(scales.size());
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (scales[i] < 0)
      throw InputError("scales must be nonnegative");
    if (i > 0 && scales[i] < scales[i - 1])
      throw InputError("scales must be nondecreasing");
    levels.push_back(entourage_at_radius(m, scales[i]));
  }
  return Filtration::checked(m.space, std::move(levels));
}

}  // namespace coarse
