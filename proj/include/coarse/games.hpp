#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coarse/certificates.hpp"
#include "coarse/decomposition.hpp"

namespace coarse {

// What player 1 gets to assert, in order, plus the bound inside which a
// family counts as won. Levels come from a presentation, so they are
// reflexive, symmetric and nondecreasing; the win bound must be reflexive
// and symmetric as well.
struct Challenge {
  Filtration levels;
  Entourage win_bound;

  static Challenge checked(Filtration levels, Entourage win_bound);
};

enum class GameOutcome { won, lost, invalid };

// One exchange: the asserted entourage, player 2's new family, and, in
// decomposition games, the member-by-member decomposition of the standing
// family over the new one. Cover-game moves carry no certificate.
struct GameMove {
  Entourage assertion;
  SubsetFamily response;
  std::optional<FamilyDecomposition> certificate;
};

// Full record of a play. `final_family` is the standing family when the
// game ended: the last response in decomposition games (initially the whole
// space), the pool of all responses in cover games. An invalid move ends
// the game immediately; the offending move is kept and `failure` carries
// the verdict, with details naming the player at fault. A resignation
// loses and leaves its explanation in `failure`.
struct GameTranscript {
  SpacePtr space;
  Entourage win_bound;
  std::vector<GameMove> moves;
  GameOutcome outcome = GameOutcome::lost;
  SubsetFamily final_family;
  Verdict failure;
};

// Player 2's reply in a decomposition game: a decomposition of the standing
// family over its target, or no play plus the reason for resigning.
struct DecompositionMove {
  std::optional<FamilyDecomposition> play;
  std::string resignation;
};

// Strategies are deterministic functions of the visible position; a
// randomized strategy must be seeded explicitly by whoever builds it.
struct PlayerOneStrategy {
  std::function<Entourage(const GameTranscript&)> assert_entourage;
};

struct PlayerTwoStrategy {
  std::function<DecompositionMove(const GameTranscript&, const Entourage&)>
      respond;
};

// Player 2 of the cover game answers an assertion with one family, expected
// disjoint at the assertion and inside the win bound.
struct CoverStrategy {
  std::function<SubsetFamily(const GameTranscript&, const Entourage&)> respond;
};

struct GameRules {
  Entourage win_bound;
  int max_rounds = 1;
  // Weak games allow any arity; strict moves have at most two parts.
  bool weak = false;
};

// Scripted strict game: challenge levels are asserted in order until the
// standing family fits the win bound (a win, checked before the first move
// as well), the levels run out (a loss), player 2 resigns (a loss), or a
// move fails to verify (invalid).
GameTranscript run_sfdc(SpacePtr space, const Challenge& challenge,
                        const PlayerTwoStrategy& p2);

// Adaptive game: player 1 asserts any reflexive symmetric entourage each
// round, player 2 decomposes the standing family. Wins and losses as in the
// scripted game, with max_rounds bounding the play; invalid moves are
// attributed to their mover.
GameTranscript play_fdc(SpacePtr space, const PlayerOneStrategy& p1,
                        const PlayerTwoStrategy& p2, const GameRules& rules);

// A self-contained scripted-game win: step j decomposes its source over its
// target at challenge level j, chained from the whole space down to a family
// inside the win bound.
struct SfdcCertificate {
  Challenge challenge;
  std::vector<FamilyDecomposition> steps;
};

Verdict verify_sfdc(const SfdcCertificate& cert);

// Replays recorded steps in order and resigns past the end. The recorded
// entourages still face the referee, so a replay only survives under the
// challenge it was built for.
PlayerTwoStrategy strategy_from_sfdc(const SfdcCertificate& cert);

// Replays the responses of a finished decomposition-game transcript.
PlayerTwoStrategy strategy_from_transcript(const GameTranscript& t);

// Turns a covering certificate into a scripted-game win along its own
// challenge levels: families are clipped to the part of the space not yet
// covered, and each step splits the running residual into the next residual
// and the clipped family. Rejects certificates that do not verify or do not
// carry the whole space.
SfdcCertificate sfdc_from_propc(const PropertyCCertificate& cert);

// One-size-fits-all player 2 built from a dimension certificate: every
// member of the standing family is decomposed along the certificate's
// families, restricted to the member. Resigns when the assertion leaves the
// certificate's scale. The arity is the certificate's family count, so
// strict games need a certificate with at most two families.
PlayerTwoStrategy strategy_from_dimension(const DimensionCertificate& cert);

// Cover game: each round player 1 asserts a reflexive symmetric entourage
// and player 2 answers with a family disjoint at it and inside the win
// bound. Player 2 wins once the accumulated families cover the space.
GameTranscript gamec_play(SpacePtr space, const PlayerOneStrategy& p1,
                          const CoverStrategy& p2, const Entourage& win_bound,
                          int max_rounds);

// The canonical player 1 of the cover game: opens with `first`, then
// strengthens each assertion by saturating it through the family just
// played, so that later families can be folded into earlier ones.
PlayerOneStrategy gamec_adversary(Entourage first);

struct CollapseResult {
  SubsetFamily family;
  Entourage bound;
};

// Folds a game won against the adversary's growth law into one family:
// working backwards, each round's family is saturated into the previous
// round's at the earlier assertion. The result covers the space, is
// disjoint at the first assertion, and fits the returned bound; all three
// are checked. Transcripts that are not wins, or whose assertions do not
// follow the growth law, are rejected.
CollapseResult gamec_collapse(const GameTranscript& t);

}  // namespace coarse
