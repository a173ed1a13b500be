#include "coarse/games.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>

namespace coarse {

namespace {

void validate_challenge(const Challenge& c) {
  Verdict v = check_presentation(c.levels);
  if (!v.ok()) throw InputError("invalid challenge: " + v.summary());
  require_same_space(c.levels.space, c.win_bound.space(), "Challenge");
  if (auto w = c.win_bound.reflexivity_witness())
    throw InputError("invalid challenge: win bound misses diagonal pair " +
                     pair_to_string(c.levels.space, {*w, *w}));
  if (auto w = c.win_bound.symmetry_witness())
    throw InputError("invalid challenge: win bound contains " +
                     pair_to_string(c.levels.space, *w) +
                     " but not its flip");
}

SubsetFamily whole_space_family(const SpacePtr& space) {
  return SubsetFamily::make(space, {PointSet::full(space->size)});
}

// Reflexivity and symmetry of player 1's assertion, details naming them.
Verdict check_assertion(const SpacePtr& space, const Entourage& l) {
  require_same_space(space, l.space(), "asserted entourage");
  Verdict v;
  if (auto w = l.reflexivity_witness())
    v.add("reflexive", "player 1 asserts an entourage missing diagonal pair " +
                           pair_to_string(space, {*w, *w}));
  if (auto w = l.symmetry_witness())
    v.add("symmetric", "player 1 asserts " + pair_to_string(space, *w) +
                           " without its flip");
  return v;
}

Verdict check_decomposition_move(const GameTranscript& t,
                                 const Entourage& assertion,
                                 const FamilyDecomposition& fd, bool weak) {
  require_same_space(t.space, fd.source.space, "decomposition move");
  Verdict v;
  if (fd.source != t.final_family)
    v.add("source", "player 2 decomposes " + fd.source.to_string() +
                        " instead of the standing family " +
                        t.final_family.to_string());
  if (fd.entourage != assertion)
    v.add("entourage",
          "player 2 certifies a different entourage than the one asserted");
  if (!weak && fd.arity > 2)
    v.add("arity", "player 2 plays arity " + std::to_string(fd.arity) +
                       " in a strict game");
  for (const auto& viol : verify_family_decomposition(fd).violations)
    v.add(viol.rule, "player 2: " + viol.detail);
  return v;
}

// Plays one exchange. Returns true when the game ended on it.
bool apply_decomposition_move(GameTranscript& t, const Entourage& assertion,
                              const PlayerTwoStrategy& p2, bool weak) {
  DecompositionMove mv = p2.respond(t, assertion);
  if (!mv.play) {
    t.outcome = GameOutcome::lost;
    t.failure.add("resigned", mv.resignation.empty() ? "player 2 resigned"
                                                     : mv.resignation);
    return true;
  }
  Verdict bad = check_decomposition_move(t, assertion, *mv.play, weak);
  t.moves.push_back(GameMove{assertion, mv.play->target, std::move(mv.play)});
  if (!bad.ok()) {
    t.outcome = GameOutcome::invalid;
    t.failure = std::move(bad);
    return true;
  }
  t.final_family = t.moves.back().response;
  if (is_bounded_by(t.final_family, t.win_bound).ok()) {
    t.outcome = GameOutcome::won;
    return true;
  }
  return false;
}

}  // namespace

Challenge Challenge::checked(Filtration levels, Entourage win_bound) {
  Challenge c{std::move(levels), std::move(win_bound)};
  validate_challenge(c);
  return c;
}

GameTranscript run_sfdc(SpacePtr space, const Challenge& challenge,
                        const PlayerTwoStrategy& p2) {
  if (!space) throw InputError("run_sfdc: missing space");
  validate_challenge(challenge);
  require_same_space(space, challenge.levels.space, "run_sfdc");
  GameTranscript t{space,
                   challenge.win_bound,
                   {},
                   GameOutcome::lost,
                   whole_space_family(space),
                   {}};
  if (is_bounded_by(t.final_family, t.win_bound).ok()) {
    t.outcome = GameOutcome::won;
    return t;
  }
  for (int i = 0; i < challenge.levels.depth(); ++i)
    if (apply_decomposition_move(t, challenge.levels.level(i), p2,
                                 /*weak=*/false))
      return t;
  return t;
}

GameTranscript play_fdc(SpacePtr space, const PlayerOneStrategy& p1,
                        const PlayerTwoStrategy& p2, const GameRules& rules) {
  if (!space) throw InputError("play_fdc: missing space");
  require_same_space(space, rules.win_bound.space(), "play_fdc");
  if (rules.max_rounds < 1)
    throw InputError("play_fdc: max_rounds must be at least 1");
  GameTranscript t{space,
                   rules.win_bound,
                   {},
                   GameOutcome::lost,
                   whole_space_family(space),
                   {}};
  if (is_bounded_by(t.final_family, t.win_bound).ok()) {
    t.outcome = GameOutcome::won;
    return t;
  }
  for (int round = 0; round < rules.max_rounds; ++round) {
    const Entourage l = p1.assert_entourage(t);
    Verdict bad = check_assertion(space, l);
    if (!bad.ok()) {
      t.outcome = GameOutcome::invalid;
      t.failure = std::move(bad);
      return t;
    }
    if (apply_decomposition_move(t, l, p2, rules.weak)) return t;
  }
  return t;
}

Verdict verify_sfdc(const SfdcCertificate& cert) {
  validate_challenge(cert.challenge);
  const SpacePtr& space = cert.challenge.levels.space;
  Verdict v;
  if (cert.steps.empty()) {
    v.add("steps", "certificate plays no steps");
    return v;
  }
  if (static_cast<int>(cert.steps.size()) > cert.challenge.levels.depth()) {
    v.add("steps", std::to_string(cert.steps.size()) + " steps against " +
                       std::to_string(cert.challenge.levels.depth()) +
                       " challenge levels");
    return v;
  }
  const SubsetFamily start = whole_space_family(space);
  for (std::size_t j = 0; j < cert.steps.size(); ++j) {
    const auto& step = cert.steps[j];
    require_same_space(space, step.source.space, "verify_sfdc");
    const std::string where = "step " + std::to_string(j + 1) + ": ";
    if (j == 0) {
      if (step.source != start)
        v.add("chain", where + "does not start at the whole space");
    } else if (step.source != cert.steps[j - 1].target) {
      v.add("chain", where + "does not continue the previous target");
    }
    if (step.entourage != cert.challenge.levels.level(static_cast<int>(j)))
      v.add("entourage",
            where + "plays a different entourage than its challenge level");
    if (step.arity > 2)
      v.add("arity", where + "arity " + std::to_string(step.arity) +
                         " in a strict chain");
    for (const auto& viol : verify_family_decomposition(step).violations)
      v.add(viol.rule, where + viol.detail);
  }
  for (const auto& viol :
       is_bounded_by(cert.steps.back().target, cert.challenge.win_bound)
           .violations)
    v.add(viol.rule, "final family: " + viol.detail);
  return v;
}

namespace {

PlayerTwoStrategy replay_strategy(std::vector<FamilyDecomposition> steps) {
  return PlayerTwoStrategy{
      [steps = std::move(steps)](const GameTranscript& t, const Entourage&) {
        const std::size_t i = t.moves.size();
        if (i >= steps.size())
          return DecompositionMove{std::nullopt, "recorded steps exhausted"};
        return DecompositionMove{steps[i], ""};
      }};
}

}  // namespace

PlayerTwoStrategy strategy_from_sfdc(const SfdcCertificate& cert) {
  Verdict v = verify_sfdc(cert);
  if (!v.ok())
    throw InputError("strategy_from_sfdc: certificate does not verify: " +
                     v.summary());
  return replay_strategy(cert.steps);
}

PlayerTwoStrategy strategy_from_transcript(const GameTranscript& t) {
  std::vector<FamilyDecomposition> steps;
  for (const auto& mv : t.moves) {
    if (!mv.certificate)
      throw InputError(
          "strategy_from_transcript: move without a decomposition");
    steps.push_back(*mv.certificate);
  }
  return replay_strategy(std::move(steps));
}

SfdcCertificate sfdc_from_propc(const PropertyCCertificate& cert) {
  Verdict v = verify_property_c(cert);
  if (!v.ok())
    throw InputError("sfdc_from_propc: certificate does not verify: " +
                     v.summary());
  const SpacePtr& space = cert.challenge.space;
  if (cert.carrier != PointSet::full(space->size))
    throw InputError("sfdc_from_propc: certificate carries only part of the space");

  const int n = static_cast<int>(cert.families.size());
  const std::vector<Entourage> levels(cert.challenge.levels.begin(),
                                      cert.challenge.levels.begin() + n);
  const Entourage win_bound =
      unite(cert.bound,
            unite(inverse_of(cert.bound), Entourage::diagonal(space)));
  Challenge challenge =
      Challenge::checked(Filtration::checked(space, levels), win_bound);

  std::vector<FamilyDecomposition> steps;
  PointSet residual = PointSet::full(space->size);
  SubsetFamily standing = whole_space_family(space);
  std::vector<PointSet> hat_members;
  for (int j = 0; j < n; ++j) {
    const SubsetFamily hat = restrict_family(cert.families[j], residual);
    PointSet next_residual = residual;
    for (const auto& m : cert.families[j].members)
      next_residual = next_residual - m;

    std::vector<PointSet> target_members = hat_members;
    target_members.insert(target_members.end(), hat.members.begin(),
                          hat.members.end());
    if (!next_residual.empty()) target_members.push_back(next_residual);
    SubsetFamily target = SubsetFamily::canonicalized(space, target_members);

    std::vector<Decomposition> decs;
    for (const auto& member : standing.members) {
      if (member == residual) {
        DecompositionPart remainder{next_residual, {}};
        if (!next_residual.empty()) remainder.blocks.push_back(next_residual);
        PointSet clipped(space->size);
        for (const auto& m : hat.members) clipped = clipped | m;
        decs.push_back(Decomposition{
            space, member,
            {std::move(remainder), DecompositionPart{clipped, hat.members}}});
      } else {
        decs.push_back(Decomposition{
            space, member,
            {DecompositionPart{member, {member}},
             DecompositionPart{PointSet(space->size), {}}}});
      }
    }
    steps.push_back(FamilyDecomposition{standing, target,
                                        challenge.levels.level(j), 2,
                                        std::move(decs)});
    hat_members.insert(hat_members.end(), hat.members.begin(),
                       hat.members.end());
    residual = std::move(next_residual);
    standing = std::move(target);
  }
  return SfdcCertificate{std::move(challenge), std::move(steps)};
}

PlayerTwoStrategy strategy_from_dimension(const DimensionCertificate& cert) {
  Verdict v = verify_dimension(cert);
  if (!v.ok())
    throw InputError(
        "strategy_from_dimension: certificate does not verify: " +
        v.summary());
  const SpacePtr space = cert.scale.space();
  if (cert.carrier != PointSet::full(space->size))
    throw InputError(
        "strategy_from_dimension: certificate carries only part of the space");

  return PlayerTwoStrategy{[cert](const GameTranscript& t,
                                  const Entourage& assertion)
                               -> DecompositionMove {
    require_same_space(t.space, cert.scale.space(), "strategy_from_dimension");
    if (!is_subset(assertion, cert.scale))
      return {std::nullopt, "assertion exceeds the certificate scale"};
    const SubsetFamily& standing = t.final_family;
    std::vector<Decomposition> decs;
    std::vector<PointSet> all_blocks;
    for (const auto& member : standing.members) {
      Decomposition dec{t.space, member, {}};
      for (const auto& fam : cert.families) {
        DecompositionPart part{PointSet(t.space->size), {}};
        for (const auto& block : fam.members) {
          const PointSet cut = block & member;
          if (cut.empty()) continue;
          part.part = part.part | cut;
          part.blocks.push_back(cut);
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
    SubsetFamily target =
        SubsetFamily::canonicalized(t.space, std::move(all_blocks));
    return {FamilyDecomposition{standing, std::move(target), assertion,
                                static_cast<int>(cert.families.size()),
                                std::move(decs)},
            ""};
  }};
}

GameTranscript gamec_play(SpacePtr space, const PlayerOneStrategy& p1,
                          const CoverStrategy& p2, const Entourage& win_bound,
                          int max_rounds) {
  if (!space) throw InputError("gamec_play: missing space");
  require_same_space(space, win_bound.space(), "gamec_play");
  if (max_rounds < 1)
    throw InputError("gamec_play: max_rounds must be at least 1");
  GameTranscript t{space,         win_bound,
                   {},            GameOutcome::lost,
                   SubsetFamily{space, {}}, {}};
  PointSet covered(space->size);
  std::vector<SubsetFamily> played;
  for (int round = 0; round < max_rounds; ++round) {
    const Entourage l = p1.assert_entourage(t);
    Verdict bad = check_assertion(space, l);
    if (!bad.ok()) {
      t.outcome = GameOutcome::invalid;
      t.failure = std::move(bad);
      return t;
    }
    const SubsetFamily fam = p2.respond(t, l);
    require_same_space(space, fam.space, "gamec_play");
    for (const auto& viol : is_disjoint(fam, l).violations)
      bad.add(viol.rule, "player 2: " + viol.detail);
    for (const auto& viol : is_bounded_by(fam, win_bound).violations)
      bad.add(viol.rule, "player 2: " + viol.detail);
    t.moves.push_back(GameMove{l, fam, std::nullopt});
    if (!bad.ok()) {
      t.outcome = GameOutcome::invalid;
      t.failure = std::move(bad);
      return t;
    }
    played.push_back(fam);
    t.final_family = pooled_family(played);
    for (const auto& m : fam.members) covered = covered | m;
    if (covered == PointSet::full(space->size)) {
      t.outcome = GameOutcome::won;
      return t;
    }
  }
  return t;
}

PlayerOneStrategy gamec_adversary(Entourage first) {
  if (auto w = first.reflexivity_witness())
    throw InputError("gamec_adversary: opening entourage misses diagonal at " +
                     first.space()->label_of(*w));
  if (auto w = first.symmetry_witness())
    throw InputError("gamec_adversary: opening entourage not symmetric at " +
                     pair_to_string(first.space(), *w));
  return PlayerOneStrategy{
      [first = std::move(first)](const GameTranscript& t) {
        if (t.moves.empty()) return first;
        const GameMove& last = t.moves.back();
        return saturation_challenge(last.assertion, last.response);
      }};
}

CollapseResult gamec_collapse(const GameTranscript& t) {
  if (!t.space) throw InputError("gamec_collapse: missing space");
  if (t.outcome != GameOutcome::won)
    throw InputError("gamec_collapse: transcript is not a win");
  if (t.moves.empty()) throw InputError("gamec_collapse: no moves to fold");
  for (std::size_t i = 1; i < t.moves.size(); ++i)
    if (t.moves[i].assertion !=
        saturation_challenge(t.moves[i - 1].assertion,
                             t.moves[i - 1].response))
      throw InputError("gamec_collapse: assertion at round " +
                       std::to_string(i + 1) +
                       " does not follow the adversary growth law");

  SubsetFamily folded = t.moves.back().response;
  Entourage bound = t.win_bound;
  for (std::size_t i = t.moves.size() - 1; i-- > 0;) {
    bound = saturated_union_bound(folded, t.moves[i].response,
                                  t.moves[i].assertion);
    folded = saturated_union(folded, t.moves[i].response,
                             t.moves[i].assertion);
  }
  Verdict check;
  check.absorb(is_disjoint(folded, t.moves.front().assertion));
  check.absorb(is_cover(t.space, {folded}));
  check.absorb(is_bounded_by(folded, bound));
  if (!check.ok())
    throw InputError("gamec_collapse: folded family fails its checks: " +
                     check.summary());
  return CollapseResult{std::move(folded), std::move(bound)};
}

}  // namespace coarse
