#include "coarse/maps.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace coarse {

namespace {

void require_presentation(const Filtration& f, const char* who,
                          const char* role) {
  const Verdict v = check_presentation(f);
  if (!v.ok())
    throw InputError(std::string(who) + ": invalid " + role +
                     " presentation: " + v.summary());
}

void check_bornologous(Verdict& v, const CoarseMap& f, const char* who) {
  for (int i = 0; i < f.source.depth(); ++i) {
    const Entourage pushed = pushforward(f, f.source.level(i));
    if (auto w = pushed.first_pair_not_in(f.target.top())) {
      v.add("bornologous",
            std::string(who) + ": level " + std::to_string(i + 1) +
                " pushes forward outside the target presentation at " +
                pair_to_string(f.target.space, *w));
      return;
    }
  }
}

// Preimage of one decomposition, droppping emptied blocks and merging
// collisions. The caller guarantees the input verifies at the pushforward.
Decomposition pulled_decomposition(const CoarseMap& f,
                                   const Decomposition& dec) {
  Decomposition out{f.source.space, preimage(f, dec.target), {}};
  for (const auto& part : dec.parts) {
    DecompositionPart p{preimage(f, part.part), {}};
    for (const auto& block : part.blocks) {
      PointSet b = preimage(f, block);
      if (!b.empty()) p.blocks.push_back(std::move(b));
    }
    std::sort(p.blocks.begin(), p.blocks.end(), PointSet::canonical_less);
    p.blocks.erase(std::unique(p.blocks.begin(), p.blocks.end()),
                   p.blocks.end());
    out.parts.push_back(std::move(p));
  }
  return out;
}

SubsetFamily whole_space_family(const SpacePtr& sp) {
  return SubsetFamily::make(sp, {PointSet::full(sp->size)});
}

}  // namespace

CoarseMap CoarseMap::checked(Filtration source, Filtration target,
                             std::vector<PointId> graph,
                             std::vector<Entourage> preimage_bounds) {
  require_presentation(source, "CoarseMap", "source");
  require_presentation(target, "CoarseMap", "target");
  if (static_cast<int>(graph.size()) != source.space->size)
    throw InputError("CoarseMap: graph assigns " +
                     std::to_string(graph.size()) + " points in a space of " +
                     std::to_string(source.space->size));
  for (PointId x = 0; x < source.space->size; ++x)
    if (graph[x] < 0 || graph[x] >= target.space->size)
      throw InputError("CoarseMap: point " + source.space->label_of(x) +
                       " is sent outside the target space");

  CoarseMap f{std::move(source), std::move(target), std::move(graph), {}};
  for (int i = 0; i < f.source.depth(); ++i) {
    const Entourage pushed = pushforward(f, f.source.level(i));
    if (auto w = pushed.first_pair_not_in(f.target.top()))
      throw InputError("CoarseMap: source level " + std::to_string(i + 1) +
                       " pushes forward outside the target presentation at " +
                       pair_to_string(f.target.space, *w));
  }
  if (!preimage_bounds.empty()) {
    if (static_cast<int>(preimage_bounds.size()) != f.target.depth())
      throw InputError("CoarseMap: " +
                       std::to_string(preimage_bounds.size()) +
                       " preimage bounds for " +
                       std::to_string(f.target.depth()) + " target levels");
    for (int j = 0; j < f.target.depth(); ++j) {
      require_same_space(preimage_bounds[j].space(), f.source.space,
                         "CoarseMap preimage bound");
      const Entourage pulled = pullback_entourage(f, f.target.level(j));
      if (auto w = pulled.first_pair_not_in(preimage_bounds[j]))
        throw InputError("CoarseMap: preimage of target level " +
                         std::to_string(j + 1) +
                         " escapes its declared bound at " +
                         pair_to_string(f.source.space, *w));
      if (auto w = preimage_bounds[j].first_pair_not_in(f.source.top()))
        throw InputError("CoarseMap: declared preimage bound " +
                         std::to_string(j + 1) +
                         " is not a source entourage at " +
                         pair_to_string(f.source.space, *w));
    }
    f.preimage_bounds = std::move(preimage_bounds);
  }
  return f;
}

Entourage pushforward(const CoarseMap& f, const Entourage& e) {
  require_same_space(e.space(), f.source.space, "pushforward");
  std::vector<PointPair> pairs;
  const int n = f.source.space->size;
  for (PointId x = 0; x < n; ++x)
    for (PointId y = 0; y < n; ++y)
      if (e.contains(x, y)) pairs.emplace_back(f.at(x), f.at(y));
  return Entourage::from_pairs(f.target.space, pairs);
}

Entourage pullback_entourage(const CoarseMap& f, const Entourage& e) {
  require_same_space(e.space(), f.target.space, "pullback_entourage");
  std::vector<PointPair> pairs;
  const int n = f.source.space->size;
  for (PointId x = 0; x < n; ++x)
    for (PointId y = 0; y < n; ++y)
      if (e.contains(f.at(x), f.at(y))) pairs.emplace_back(x, y);
  return Entourage::from_pairs(f.source.space, pairs);
}

PointSet preimage(const CoarseMap& f, const PointSet& s) {
  if (s.universe_size() != f.target.space->size)
    throw InputError("preimage: subset of the wrong space");
  PointSet out(f.source.space->size);
  for (PointId x = 0; x < f.source.space->size; ++x)
    if (s.contains(f.at(x))) out.insert(x);
  return out;
}

SubsetFamily pullback_family(const CoarseMap& f, const SubsetFamily& u) {
  require_same_space(u.space, f.target.space, "pullback_family");
  std::vector<PointSet> pre;
  pre.reserve(u.members.size());
  for (const auto& m : u.members) pre.push_back(preimage(f, m));
  return SubsetFamily::canonicalized(f.source.space, std::move(pre));
}

Verdict is_close(const CoarseMap& f, const CoarseMap& g, const Entourage& e) {
  require_same_space(f.source.space, g.source.space, "is_close");
  require_same_space(f.target.space, g.target.space, "is_close");
  require_same_space(e.space(), f.target.space, "is_close");
  Verdict v;
  for (PointId x = 0; x < f.source.space->size; ++x)
    if (!e.contains(f.at(x), g.at(x))) {
      v.add("close", "point " + f.source.space->label_of(x) + " is sent to " +
                         pair_to_string(f.target.space, {f.at(x), g.at(x)}) +
                         " outside the closeness entourage");
      break;
    }
  return v;
}

Verdict check_properness(const CoarseMap& f) {
  Verdict v;
  const int n = f.source.space->size;
  for (PointId x = 0; x < n; ++x)
    for (PointId y = 0; y < n; ++y)
      if (f.target.top().contains(f.at(x), f.at(y)) &&
          !f.source.top().contains(x, y)) {
        v.add("proper", "pair " + pair_to_string(f.source.space, {x, y}) +
                            " has bounded image " +
                            pair_to_string(f.target.space,
                                           {f.at(x), f.at(y)}) +
                            " but is itself unbounded");
        return v;
      }
  return v;
}

Verdict check_coarse_equivalence(const CoarseMap& f, const CoarseMap& g,
                                 const Entourage& source_closeness,
                                 const Entourage& target_closeness) {
  require_same_space(f.source.space, g.target.space,
                     "check_coarse_equivalence");
  require_same_space(f.target.space, g.source.space,
                     "check_coarse_equivalence");
  require_same_space(source_closeness.space(), f.source.space,
                     "check_coarse_equivalence");
  require_same_space(target_closeness.space(), f.target.space,
                     "check_coarse_equivalence");
  Verdict v;
  check_bornologous(v, f, "forward map");
  check_bornologous(v, g, "backward map");
  for (const auto& viol : check_properness(f).violations)
    v.add(viol.rule, "forward map: " + viol.detail);
  for (const auto& viol : check_properness(g).violations)
    v.add(viol.rule, "backward map: " + viol.detail);
  for (PointId x = 0; x < f.source.space->size; ++x)
    if (!source_closeness.contains(g.at(f.at(x)), x)) {
      v.add("close",
            "backward after forward displaces " +
                pair_to_string(f.source.space, {x, g.at(f.at(x))}) +
                " beyond the source closeness");
      break;
    }
  for (PointId y = 0; y < g.source.space->size; ++y)
    if (!target_closeness.contains(f.at(g.at(y)), y)) {
      v.add("close",
            "forward after backward displaces " +
                pair_to_string(f.target.space, {y, f.at(g.at(y))}) +
                " beyond the target closeness");
      break;
    }
  return v;
}

Decomposition pullback_decomposition(const CoarseMap& f,
                                     const Decomposition& dec,
                                     const SubsetFamily& family,
                                     const Entourage& l) {
  require_same_space(l.space(), f.source.space, "pullback_decomposition");
  require_same_space(dec.space, f.target.space, "pullback_decomposition");
  const Verdict v = verify_decomposition(dec, family, pushforward(f, l));
  if (!v.ok())
    throw InputError(
        "pullback_decomposition: decomposition does not verify at the "
        "pushforward: " +
        v.summary());
  return pulled_decomposition(f, dec);
}

FamilyDecomposition pullback_family_decomposition(const CoarseMap& f,
                                                  const FamilyDecomposition& fd,
                                                  const Entourage& l) {
  require_same_space(l.space(), f.source.space,
                     "pullback_family_decomposition");
  require_same_space(fd.source.space, f.target.space,
                     "pullback_family_decomposition");
  const Verdict v = verify_family_decomposition(fd);
  if (!v.ok())
    throw InputError(
        "pullback_family_decomposition: decomposition does not verify: " +
        v.summary());
  if (auto w = pushforward(f, l).first_pair_not_in(fd.entourage))
    throw InputError(
        "pullback_family_decomposition: the entourage pushes forward outside "
        "the decomposition's at " +
        pair_to_string(f.target.space, *w));
  FamilyDecomposition out{pullback_family(f, fd.source),
                          pullback_family(f, fd.target), l, fd.arity, {}};
  for (const auto& member : out.source.members)
    for (std::size_t i = 0; i < fd.source.members.size(); ++i)
      if (preimage(f, fd.source.members[i]) == member) {
        out.members.push_back(pulled_decomposition(f, fd.members[i]));
        break;
      }
  return out;
}

ProductSpace ProductSpace::make(Filtration left, Filtration right) {
  require_presentation(left, "ProductSpace", "left factor");
  require_presentation(right, "ProductSpace", "right factor");
  const int points = left.space->size * right.space->size;
  std::vector<std::string> labels;
  labels.reserve(points);
  for (PointId x = 0; x < left.space->size; ++x)
    for (PointId y = 0; y < right.space->size; ++y)
      labels.push_back("(" + left.space->label_of(x) + "," +
                       right.space->label_of(y) + ")");
  ProductSpace ps{std::move(left), std::move(right),
                  Space::make(points, std::move(labels)),
                  Filtration{nullptr, {}}};
  std::vector<Entourage> levels;
  const int depth = std::max(ps.left.depth(), ps.right.depth());
  for (int t = 0; t < depth; ++t)
    levels.push_back(
        product_entourage(ps, ps.left.level(std::min(t, ps.left.depth() - 1)),
                          ps.right.level(std::min(t, ps.right.depth() - 1))));
  ps.levels = Filtration::checked(ps.space, std::move(levels));
  return ps;
}

Entourage product_entourage(const ProductSpace& ps, const Entourage& on_left,
                            const Entourage& on_right) {
  require_same_space(on_left.space(), ps.left.space, "product_entourage");
  require_same_space(on_right.space(), ps.right.space, "product_entourage");
  std::vector<PointPair> pairs;
  const int n = ps.space->size;
  for (PointId p = 0; p < n; ++p)
    for (PointId q = 0; q < n; ++q) {
      const auto a = ps.unpair(p);
      const auto b = ps.unpair(q);
      if (on_left.contains(a.first, b.first) &&
          on_right.contains(a.second, b.second))
        pairs.emplace_back(p, q);
    }
  return Entourage::from_pairs(ps.space, pairs);
}

std::pair<CoarseMap, CoarseMap> product_projections(const ProductSpace& ps) {
  std::vector<PointId> lg(ps.space->size), rg(ps.space->size);
  for (PointId p = 0; p < ps.space->size; ++p) {
    lg[p] = ps.unpair(p).first;
    rg[p] = ps.unpair(p).second;
  }
  return {CoarseMap::checked(ps.levels, ps.left, std::move(lg)),
          CoarseMap::checked(ps.levels, ps.right, std::move(rg))};
}

BoundedFactorEquivalence bounded_factor_equivalence(const Filtration& piece,
                                                    PointId basepoint,
                                                    const Filtration& factor) {
  ProductSpace ps = ProductSpace::make(piece, factor);
  if (auto w = Entourage::full(ps.left.space).first_pair_not_in(ps.left.top()))
    throw InputError(
        "bounded_factor_equivalence: the piece is not bounded by its "
        "presentation at " +
        pair_to_string(ps.left.space, *w));
  if (basepoint < 0 || basepoint >= ps.left.space->size)
    throw InputError("bounded_factor_equivalence: basepoint outside the piece");

  std::vector<PointId> down(ps.space->size);
  for (PointId p = 0; p < ps.space->size; ++p) down[p] = ps.unpair(p).second;
  std::vector<Entourage> down_bounds;
  for (int j = 0; j < ps.right.depth(); ++j)
    down_bounds.push_back(product_entourage(
        ps, Entourage::full(ps.left.space), ps.right.level(j)));
  CoarseMap to_factor = CoarseMap::checked(ps.levels, ps.right,
                                           std::move(down),
                                           std::move(down_bounds));

  std::vector<PointId> up(ps.right.space->size);
  for (PointId y = 0; y < ps.right.space->size; ++y)
    up[y] = ps.pair_index(basepoint, y);
  std::vector<Entourage> up_bounds;
  for (int t = 0; t < ps.levels.depth(); ++t)
    up_bounds.push_back(ps.right.level(std::min(t, ps.right.depth() - 1)));
  CoarseMap from_factor = CoarseMap::checked(ps.right, ps.levels,
                                             std::move(up),
                                             std::move(up_bounds));

  const Entourage round_trip = product_entourage(
      ps, Entourage::full(ps.left.space), Entourage::diagonal(ps.right.space));
  Verdict verdict =
      check_coarse_equivalence(to_factor, from_factor, round_trip,
                               Entourage::diagonal(ps.right.space));
  return BoundedFactorEquivalence{std::move(ps), std::move(to_factor),
                                  std::move(from_factor), std::move(verdict)};
}

PlayerTwoStrategy fibering_strategy(
    const CoarseMap& f, const PlayerTwoStrategy& base,
    const Entourage& base_win_bound,
    std::function<std::optional<PlayerTwoStrategy>(const SubsetFamily&)>
        fiber_for) {
  require_same_space(base_win_bound.space(), f.target.space,
                     "fibering_strategy");
  return PlayerTwoStrategy{[f, base, base_win_bound,
                            fiber_for = std::move(fiber_for)](
                               const GameTranscript& t,
                               const Entourage& l) -> DecompositionMove {
    require_same_space(t.space, f.source.space, "fibering_strategy");
    GameTranscript bt{f.target.space,
                      base_win_bound,
                      {},
                      GameOutcome::lost,
                      whole_space_family(f.target.space),
                      {}};
    std::size_t consumed = 0;
    while (!is_bounded_by(bt.final_family, base_win_bound).ok()) {
      const bool pending = consumed == t.moves.size();
      const Entourage pushed = pushforward(
          f, pending ? l : t.moves[consumed].assertion);
      DecompositionMove mv = base.respond(bt, pushed);
      if (!mv.play)
        return DecompositionMove{std::nullopt, "base strategy resigned: " +
                                                   mv.resignation};
      if (pending)
        return DecompositionMove{pullback_family_decomposition(f, *mv.play, l),
                                 ""};
      bt.final_family = mv.play->target;
      bt.moves.push_back(GameMove{pushed, bt.final_family, std::move(mv.play)});
      ++consumed;
    }
    const std::optional<PlayerTwoStrategy> fiber = fiber_for(bt.final_family);
    if (!fiber)
      return DecompositionMove{std::nullopt, "no fiber strategy for " +
                                                 bt.final_family.to_string()};
    const GameTranscript rest{
        t.space,
        t.win_bound,
        std::vector<GameMove>(t.moves.begin() + consumed, t.moves.end()),
        t.outcome,
        t.final_family,
        t.failure};
    return fiber->respond(rest, l);
  }};
}

PlayerTwoStrategy parallel_over(const ProductSpace& ps,
                                const PlayerTwoStrategy& factor_strategy,
                                const Entourage& factor_win_bound) {
  require_same_space(factor_win_bound.space(), ps.right.space,
                     "parallel_over");
  return PlayerTwoStrategy{[ps, factor_strategy, factor_win_bound](
                               const GameTranscript& t,
                               const Entourage& l) -> DecompositionMove {
    require_same_space(t.space, ps.space, "parallel_over");
    const CoarseMap proj = product_projections(ps).second;
    GameTranscript ft{ps.right.space,
                      factor_win_bound,
                      {},
                      GameOutcome::lost,
                      whole_space_family(ps.right.space),
                      {}};
    for (const auto& m : t.moves) {
      const Entourage fa = pushforward(proj, m.assertion);
      DecompositionMove mv = factor_strategy.respond(ft, fa);
      if (!mv.play)
        return DecompositionMove{std::nullopt, "factor strategy resigned: " +
                                                   mv.resignation};
      ft.final_family = mv.play->target;
      ft.moves.push_back(GameMove{fa, ft.final_family, std::move(mv.play)});
    }
    DecompositionMove mv = factor_strategy.respond(ft, pushforward(proj, l));
    if (!mv.play)
      return DecompositionMove{std::nullopt, "factor strategy resigned: " +
                                                 mv.resignation};
    const FamilyDecomposition& ffd = *mv.play;

    std::vector<Decomposition> decs;
    std::vector<PointSet> all_blocks;
    for (const auto& member : t.final_family.members) {
      PointSet shadow(ps.right.space->size);
      member.for_each(
          [&](PointId p) { shadow.insert(ps.unpair(p).second); });
      const Decomposition* fdec = nullptr;
      for (std::size_t i = 0; i < ffd.source.members.size(); ++i)
        if (shadow.is_subset_of(ffd.source.members[i])) {
          fdec = &ffd.members[i];
          break;
        }
      if (!fdec)
        return DecompositionMove{
            std::nullopt, "standing member " + member.to_string(ps.space) +
                              " does not project into the factor game"};
      Decomposition dec{ps.space, member, {}};
      for (const auto& fpart : fdec->parts) {
        DecompositionPart part{member & preimage(proj, fpart.part), {}};
        for (const auto& fblock : fpart.blocks) {
          PointSet b = member & preimage(proj, fblock);
          if (!b.empty()) part.blocks.push_back(std::move(b));
        }
        std::sort(part.blocks.begin(), part.blocks.end(),
                  PointSet::canonical_less);
        part.blocks.erase(
            std::unique(part.blocks.begin(), part.blocks.end()),
            part.blocks.end());
        all_blocks.insert(all_blocks.end(), part.blocks.begin(),
                          part.blocks.end());
        dec.parts.push_back(std::move(part));
      }
      decs.push_back(std::move(dec));
    }
    return DecompositionMove{
        FamilyDecomposition{t.final_family,
                            SubsetFamily::canonicalized(ps.space, all_blocks),
                            l, ffd.arity, std::move(decs)},
        ""};
  }};
}

PlayerTwoStrategy product_strategy(const ProductSpace& ps,
                                   const PlayerTwoStrategy& left_strategy,
                                   const Entourage& left_win_bound,
                                   const PlayerTwoStrategy& right_strategy,
                                   const Entourage& right_win_bound) {
  CoarseMap proj = product_projections(ps).first;
  PlayerTwoStrategy fiber =
      parallel_over(ps, right_strategy, right_win_bound);
  return fibering_strategy(
      std::move(proj), left_strategy, left_win_bound,
      [fiber = std::move(fiber)](const SubsetFamily&) {
        return std::optional<PlayerTwoStrategy>(fiber);
      });
}

PlayerTwoStrategy union_strategy(
    const SubsetFamily& pieces,
    std::vector<PlayerTwoStrategy> piece_strategies,
    const PlayerTwoStrategy& core_strategy,
    std::function<PointSet(const Entourage&)> separation_oracle) {
  if (pieces.empty()) throw InputError("union_strategy: no pieces");
  {
    const Verdict cover = is_cover(pieces.space, {pieces});
    if (!cover.ok())
      throw InputError("union_strategy: pieces do not cover the space: " +
                       cover.violations[0].detail);
  }
  if (piece_strategies.size() != static_cast<std::size_t>(pieces.size()))
    throw InputError("union_strategy: " +
                     std::to_string(piece_strategies.size()) +
                     " strategies for " + std::to_string(pieces.size()) +
                     " pieces");

  return PlayerTwoStrategy{[pieces,
                            piece_strategies = std::move(piece_strategies),
                            core_strategy,
                            separation_oracle = std::move(separation_oracle)](
                               const GameTranscript& t,
                               const Entourage& l) -> DecompositionMove {
    const SpacePtr sp = pieces.space;
    require_same_space(t.space, sp, "union_strategy");

    // The oracle's core for an assertion, and the pieces with it removed.
    auto split_at = [&](const Entourage& assertion) {
      PointSet core = separation_oracle(assertion);
      if (core.universe_size() != sp->size)
        throw InputError(
            "union_strategy: separation oracle returned a subset of the "
            "wrong space");
      std::vector<PointSet> rests;
      for (const auto& piece : pieces.members) {
        PointSet r = piece - core;
        if (!r.empty()) rests.push_back(std::move(r));
      }
      std::sort(rests.begin(), rests.end(), PointSet::canonical_less);
      rests.erase(std::unique(rests.begin(), rests.end()), rests.end());
      return std::make_pair(std::move(core), std::move(rests));
    };

    if (t.moves.empty()) {
      auto [core, rests] = split_at(l);
      const Verdict dis =
          is_disjoint(SubsetFamily::canonicalized(sp, rests), l);
      if (!dis.ok())
        return DecompositionMove{
            std::nullopt, "separated pieces are not disjoint at the "
                          "assertion: " +
                              dis.violations[0].detail};
      std::vector<Decomposition> decs;
      std::vector<PointSet> all;
      for (const auto& member : t.final_family.members) {
        DecompositionPart core_part{member & core, {}};
        if (!core_part.part.empty()) core_part.blocks.push_back(core_part.part);
        DecompositionPart rest_part{PointSet(sp->size), {}};
        for (const auto& r : rests) {
          PointSet b = member & r;
          if (b.empty()) continue;
          rest_part.part = rest_part.part | b;
          rest_part.blocks.push_back(std::move(b));
        }
        std::sort(rest_part.blocks.begin(), rest_part.blocks.end(),
                  PointSet::canonical_less);
        rest_part.blocks.erase(std::unique(rest_part.blocks.begin(),
                                           rest_part.blocks.end()),
                               rest_part.blocks.end());
        all.insert(all.end(), core_part.blocks.begin(),
                   core_part.blocks.end());
        all.insert(all.end(), rest_part.blocks.begin(),
                   rest_part.blocks.end());
        decs.push_back(Decomposition{
            sp, member, {std::move(core_part), std::move(rest_part)}});
      }
      return DecompositionMove{
          FamilyDecomposition{t.final_family,
                              SubsetFamily::canonicalized(sp, all), l, 2,
                              std::move(decs)},
          ""};
    }

    // Rebuild which branch each standing member descends from: branch 0 is
    // the core, branch a+1 is piece a.
    const PointSet core0 = split_at(t.moves[0].assertion).first;
    const int branches = pieces.size() + 1;
    std::vector<std::pair<PointSet, int>> branch_of;
    auto lookup = [&](const PointSet& m) -> int {
      for (const auto& [set, b] : branch_of)
        if (set == m) return b;
      return -1;
    };
    for (const auto& m : t.moves[0].response.members) {
      int b = -1;
      if (m.is_subset_of(core0)) b = 0;
      for (int a = 0; b < 0 && a < pieces.size(); ++a)
        if (m.is_subset_of(pieces.members[a] - core0)) b = a + 1;
      if (b < 0)
        return DecompositionMove{
            std::nullopt, "cannot attribute member " + m.to_string(sp) +
                              " to the core or a separated piece"};
      branch_of.emplace_back(m, b);
    }

    std::vector<GameTranscript> bt;
    bt.reserve(branches);
    for (int b = 0; b < branches; ++b)
      bt.push_back(GameTranscript{sp, t.win_bound, {}, GameOutcome::lost,
                                  SubsetFamily{sp, {}}, {}});
    for (const auto& [m, b] : branch_of)
      bt[b].final_family.members.push_back(m);

    for (std::size_t i = 1; i < t.moves.size(); ++i) {
      const GameMove& gm = t.moves[i];
      if (!gm.certificate)
        return DecompositionMove{std::nullopt,
                                 "transcript move without a decomposition"};
      const FamilyDecomposition& fd = *gm.certificate;
      std::vector<std::vector<std::size_t>> owned(branches);
      for (std::size_t k = 0; k < fd.source.members.size(); ++k) {
        const int b = lookup(fd.source.members[k]);
        if (b < 0)
          return DecompositionMove{
              std::nullopt, "cannot attribute member " +
                                fd.source.members[k].to_string(sp) +
                                " to the core or a separated piece"};
        owned[b].push_back(k);
      }
      std::vector<std::pair<PointSet, int>> next;
      auto remember = [&](const PointSet& set, int b) {
        for (const auto& [s, old] : next)
          if (s == set) return;
        next.emplace_back(set, b);
      };
      for (int b = 0; b < branches; ++b) {
        if (owned[b].empty()) continue;
        std::vector<PointSet> sources;
        std::vector<Decomposition> decs;
        std::vector<PointSet> blocks;
        for (std::size_t k : owned[b]) {
          sources.push_back(fd.source.members[k]);
          decs.push_back(fd.members[k]);
          for (const auto& part : fd.members[k].parts)
            for (const auto& blk : part.blocks) {
              blocks.push_back(blk);
              remember(blk, b);
            }
        }
        FamilyDecomposition bfd{SubsetFamily{sp, std::move(sources)},
                                SubsetFamily::canonicalized(sp, blocks),
                                gm.assertion, fd.arity, std::move(decs)};
        bt[b].final_family = bfd.target;
        bt[b].moves.push_back(
            GameMove{gm.assertion, bfd.target, std::move(bfd)});
      }
      branch_of = std::move(next);
    }

    // Now ask every live branch for its next move and stitch the answers.
    std::vector<std::optional<FamilyDecomposition>> answers(branches);
    int arity = 1;
    std::vector<PointSet> all;
    for (int b = 0; b < branches; ++b) {
      if (bt[b].final_family.empty()) continue;
      const PlayerTwoStrategy& s =
          b == 0 ? core_strategy : piece_strategies[b - 1];
      DecompositionMove mv = s.respond(bt[b], l);
      if (!mv.play)
        return DecompositionMove{std::nullopt,
                                 "delegated strategy resigned: " +
                                     mv.resignation};
      arity = std::max(arity, mv.play->arity);
      for (const auto& m : mv.play->target.members) all.push_back(m);
      answers[b] = std::move(mv.play);
    }

    std::vector<Decomposition> decs;
    for (const auto& member : t.final_family.members) {
      const int b = lookup(member);
      if (b < 0 || !answers[b])
        return DecompositionMove{
            std::nullopt, "cannot attribute member " + member.to_string(sp) +
                              " to the core or a separated piece"};
      const FamilyDecomposition& bfd = *answers[b];
      const Decomposition* dec = nullptr;
      for (std::size_t k = 0; k < bfd.source.members.size(); ++k)
        if (bfd.source.members[k] == member) {
          dec = &bfd.members[k];
          break;
        }
      if (!dec)
        return DecompositionMove{std::nullopt,
                                 "delegated strategy answered a different "
                                 "family"};
      Decomposition padded = *dec;
      while (padded.arity() < arity)
        padded.parts.push_back(DecompositionPart{PointSet(sp->size), {}});
      decs.push_back(std::move(padded));
    }
    return DecompositionMove{
        FamilyDecomposition{t.final_family,
                            SubsetFamily::canonicalized(sp, all), l, arity,
                            std::move(decs)},
        ""};
  }};
}

}  // namespace coarse
