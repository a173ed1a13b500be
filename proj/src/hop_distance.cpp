#include "coarse/hop_distance.hpp"

#include <deque>

namespace coarse {

HopDistance hop_distance(const Entourage& base) {
  if (auto w = base.reflexivity_witness())
    throw InputError("hop distance needs a reflexive base; diagonal pair " +
                     pair_to_string(base.space(), {*w, *w}) + " is missing");
  if (auto w = base.symmetry_witness())
    throw InputError("hop distance needs a symmetric base; " +
                     pair_to_string(base.space(), *w) +
                     " is present without its flip");
  const int n = base.space_size();
  HopDistance h{base, std::vector<ExtNat>(static_cast<std::size_t>(n) * n,
                                          ExtNat::infinity())};
  std::vector<std::vector<PointId>> adj(n);
  for (const auto& [x, y] : base.pairs())
    if (x != y) adj[x].push_back(y);
  for (PointId src = 0; src < n; ++src) {
    std::vector<std::uint64_t> dist(n, 0);
    std::vector<bool> seen(n, false);
    std::deque<PointId> queue{src};
    seen[src] = true;
    while (!queue.empty()) {
      PointId u = queue.front();
      queue.pop_front();
      h.table[static_cast<std::size_t>(src) * n + u] = ExtNat::finite(dist[u]);
      for (PointId v : adj[u])
        if (!seen[v]) {
          seen[v] = true;
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
    }
  }
  return h;
}

Flagged<ExtNat> set_distance(const HopDistance& h, PointId x,
                             const PointSet& a) {
  if (a.universe_size() != h.base.space_size())
    throw InputError("set_distance: set universe does not match the space");
  if (a.empty()) return {ExtNat::infinity(), true};
  ExtNat best = ExtNat::infinity();
  a.for_each([&](PointId p) { best = min(best, h.at(x, p)); });
  return {best, false};
}

}  // namespace coarse
