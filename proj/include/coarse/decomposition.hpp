#pragma once

#include <vector>

#include "coarse/cover.hpp"

namespace coarse {

// One part of a decomposition: a subset together with the blocks whose union
// it is. A part may be empty (zero blocks); arities then stay exact under
// composition.
struct DecompositionPart {
  PointSet part;
  std::vector<PointSet> blocks;
};

// A target subset written as a union of parts, each part a disjoint union of
// blocks drawn from a named family. Blocks are stored by value, so the
// certificate is self-contained.
struct Decomposition {
  SpacePtr space;
  PointSet target;
  std::vector<DecompositionPart> parts;

  int arity() const { return static_cast<int>(parts.size()); }
};

// Checks that the parts union to the target, every part is the union of its
// blocks, blocks are members of the family, and distinct blocks within a
// part never meet l as a product pair.
Verdict verify_decomposition(const Decomposition& dec,
                             const SubsetFamily& family, const Entourage& l);

// A whole family decomposed member by member over a target family, at one
// entourage and one declared arity. members[i] decomposes source.members[i].
struct FamilyDecomposition {
  SubsetFamily source;
  SubsetFamily target;
  Entourage entourage;
  int arity = 0;
  std::vector<Decomposition> members;
};

Verdict verify_family_decomposition(const FamilyDecomposition& fd);

// Composes member-by-member decompositions: each block of the outer
// decomposition is replaced by its own decomposition from `inner`. The
// result decomposes outer.source over inner.target at the intersection of
// the entourages with arity exactly outer.arity * inner.arity. Both inputs
// must verify, and every outer block needs a matching inner member.
FamilyDecomposition compose_weak(const FamilyDecomposition& outer,
                                 const FamilyDecomposition& inner);

// Folds a chain of decompositions at one shared entourage into a single
// decomposition of the first source over the last target; the arity is the
// product of the arities.
FamilyDecomposition first_turn_collapse(
    const std::vector<FamilyDecomposition>& chain);

}  // namespace coarse
