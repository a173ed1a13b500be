#pragma once

#include <vector>

#include "coarse/entourage.hpp"

namespace coarse {

// Presentation of a coarse structure at explicit scales: a nonempty
// nondecreasing chain of reflexive symmetric entourages.
struct Filtration {
  SpacePtr space;
  std::vector<Entourage> levels;

  static Filtration checked(SpacePtr space, std::vector<Entourage> levels);

  const Entourage& level(int i) const { return levels[i]; }  // 0-based
  int depth() const { return static_cast<int>(levels.size()); }
  const Entourage& top() const { return levels.back(); }

  bool operator==(const Filtration& o) const {
    return same_space(space, o.space) && levels == o.levels;
  }
};

// Lists every violated presentation invariant with a witness.
Verdict check_presentation(const Filtration& f);

}  // namespace coarse
