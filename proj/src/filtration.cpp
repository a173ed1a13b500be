#include "coarse/filtration.hpp"

namespace coarse {

Verdict check_presentation(const Filtration& f) {
  Verdict v;
  if (!f.space) {
    v.add("space", "missing space");
    return v;
  }
  if (f.levels.empty()) {
    v.add("nonempty", "a presentation needs at least one level");
    return v;
  }
  for (std::size_t i = 0; i < f.levels.size(); ++i) {
    const Entourage& e = f.levels[i];
    const std::string name = "level " + std::to_string(i + 1);
    if (!same_space(e.space(), f.space)) {
      v.add("space", name + " lives on a different space");
      continue;
    }
    if (auto w = e.reflexivity_witness())
      v.add("reflexive", name + " misses diagonal pair " +
                             pair_to_string(f.space, {*w, *w}));
    if (auto w = e.symmetry_witness())
      v.add("symmetric", name + " contains " + pair_to_string(f.space, *w) +
                             " but not its flip");
    if (i > 0)
      if (auto w = f.levels[i - 1].first_pair_not_in(e))
        v.add("nondecreasing", name + " drops pair " +
                                   pair_to_string(f.space, *w) +
                                   " present at level " + std::to_string(i));
  }
  return v;
}

Filtration Filtration::checked(SpacePtr space, std::vector<Entourage> levels) {
  Filtration f{std::move(space), std::move(levels)};
  Verdict v = check_presentation(f);
  if (!v.ok()) throw InputError("invalid presentation: " + v.summary());
  return f;
}

}  // namespace coarse
