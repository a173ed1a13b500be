#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "coarse/games.hpp"

namespace coarse {

// A point map between two presented spaces, respecting the presentations:
// every source level must push forward inside the target's largest level.
// `preimage_bounds`, when declared, assert that the map embeds coarsely
// uniformly: one source entourage per target level, each containing the
// preimage of its level and itself contained in the source's largest level.
struct CoarseMap {
  Filtration source;
  Filtration target;
  std::vector<PointId> graph;
  std::vector<Entourage> preimage_bounds;

  PointId at(PointId x) const { return graph[static_cast<std::size_t>(x)]; }

  // Validates everything above; throws InputError with the first witness.
  static CoarseMap checked(Filtration source, Filtration target,
                           std::vector<PointId> graph,
                           std::vector<Entourage> preimage_bounds = {});
};

// {(f(x), f(x')) | (x, x') in e}.
Entourage pushforward(const CoarseMap& f, const Entourage& e);

// {(x, x') | (f(x), f(x')) in e}.
Entourage pullback_entourage(const CoarseMap& f, const Entourage& e);

// {x | f(x) in s}.
PointSet preimage(const CoarseMap& f, const PointSet& s);

// Preimages of the members; empty preimages dropped, collisions merged,
// canonical order.
SubsetFamily pullback_family(const CoarseMap& f, const SubsetFamily& u);

// Maps with the same source and target are close under e when every point's
// two images form a pair of e.
Verdict is_close(const CoarseMap& f, const CoarseMap& g, const Entourage& e);

// Bounded sets are those whose square lies in the presentation's largest
// level. A map is proper when preimages of bounded sets are bounded, which
// reduces to: the preimage of the largest target level lies in the largest
// source level.
Verdict check_properness(const CoarseMap& f);

// f and g witness a coarse equivalence when both are bornologous and proper,
// g after f displaces source points within source_closeness, and f after g
// displaces target points within target_closeness. The verdict itemizes
// every failed clause.
Verdict check_coarse_equivalence(const CoarseMap& f, const CoarseMap& g,
                                 const Entourage& source_closeness,
                                 const Entourage& target_closeness);

// Preimage of a decomposition: a decomposition of f^-1(target set) over the
// pulled-back family, valid at l whenever the input is valid at the
// pushforward of l. Empty-preimage blocks are dropped and collisions merged.
Decomposition pullback_decomposition(const CoarseMap& f,
                                     const Decomposition& dec,
                                     const SubsetFamily& family,
                                     const Entourage& l);

// Member-by-member preimage of a verified family decomposition whose
// entourage contains the pushforward of l.
FamilyDecomposition pullback_family_decomposition(const CoarseMap& f,
                                                  const FamilyDecomposition& fd,
                                                  const Entourage& l);

// Two presented spaces multiplied pointwise. Product points are indexed
// row-major over (left, right) pairs; level t pairs the factors' levels at
// stage t, holding a factor at its last level once its presentation runs
// out. Every product level projects into a factor level by construction.
struct ProductSpace {
  Filtration left;
  Filtration right;
  SpacePtr space;
  Filtration levels;

  PointId pair_index(PointId x, PointId y) const {
    return x * right.space->size + y;
  }
  std::pair<PointId, PointId> unpair(PointId p) const {
    return {p / right.space->size, p % right.space->size};
  }

  static ProductSpace make(Filtration left, Filtration right);
};

// {((x,y),(x',y')) | (x,x') in on_left and (y,y') in on_right}.
Entourage product_entourage(const ProductSpace& ps, const Entourage& on_left,
                            const Entourage& on_right);

// The two coordinate projections as presentation-checked maps.
std::pair<CoarseMap, CoarseMap> product_projections(const ProductSpace& ps);

struct BoundedFactorEquivalence {
  ProductSpace product;
  CoarseMap to_factor;    // (b, y) -> y
  CoarseMap from_factor;  // y -> (basepoint, y)
  Verdict verdict;
};

// For a piece bounded by its own presentation, the product piece x factor is
// coarsely equivalent to the factor: projection one way, pairing with the
// basepoint the other. Closeness of the round trip on the product is piece
// square paired with the factor diagonal. Throws if the piece is unbounded.
BoundedFactorEquivalence bounded_factor_equivalence(const Filtration& piece,
                                                    PointId basepoint,
                                                    const Filtration& factor);

// Player 2 for the source of f, built in two phases. While the base game on
// the target is unfinished, base moves against pushed-forward assertions are
// pulled back through f. Once the target's standing family fits
// base_win_bound, play is handed to fiber_for applied to that family;
// a missing fiber strategy resigns, naming the family. Both phases are
// reconstructed from the transcript each round, so the base and fiber
// strategies must be deterministic.
PlayerTwoStrategy fibering_strategy(
    const CoarseMap& f, const PlayerTwoStrategy& base,
    const Entourage& base_win_bound,
    std::function<std::optional<PlayerTwoStrategy>(const SubsetFamily&)>
        fiber_for);

// Player 2 for the product space that answers by transporting a strategy
// for the right factor: each standing member is cut along the preimages of
// the factor strategy's blocks under the second projection. Works from any
// standing family whose members project into the reconstructed factor
// family.
PlayerTwoStrategy parallel_over(const ProductSpace& ps,
                                const PlayerTwoStrategy& factor_strategy,
                                const Entourage& factor_win_bound);

// Player 2 for the product space: fibers over the first projection with the
// left strategy as base and the transported right strategy on every fiber.
PlayerTwoStrategy product_strategy(const ProductSpace& ps,
                                   const PlayerTwoStrategy& left_strategy,
                                   const Entourage& left_win_bound,
                                   const PlayerTwoStrategy& right_strategy,
                                   const Entourage& right_win_bound);

// Player 2 for a space covered by pieces with a separating core. The first
// move answers the assertion L with two parts: the core chosen by the
// separation oracle, and the pieces minus that core, which must come out
// L-disjoint (otherwise the strategy resigns with the witness). Later
// rounds split the standing family by descent from that first move and
// delegate each branch to its piece's strategy, or to the core strategy.
PlayerTwoStrategy union_strategy(
    const SubsetFamily& pieces,
    std::vector<PlayerTwoStrategy> piece_strategies,
    const PlayerTwoStrategy& core_strategy,
    std::function<PointSet(const Entourage&)> separation_oracle);

}  // namespace coarse
