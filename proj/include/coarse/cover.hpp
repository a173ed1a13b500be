#pragma once

#include <string>
#include <vector>

#include "coarse/entourage.hpp"
#include "coarse/point_set.hpp"

namespace coarse {

// Family of distinct nonempty subsets of one space, kept in canonical order
// (sorted by smallest element, then lexicographically on the index sequence).
struct SubsetFamily {
  SpacePtr space;
  std::vector<PointSet> members;

  // Rejects empty or duplicate members.
  static SubsetFamily make(SpacePtr space, std::vector<PointSet> members);
  // Drops empty members and duplicates, then orders canonically. Used where
  // constructions legitimately produce collisions.
  static SubsetFamily canonicalized(SpacePtr space,
                                    std::vector<PointSet> members);

  int size() const { return static_cast<int>(members.size()); }
  bool empty() const { return members.empty(); }

  bool operator==(const SubsetFamily& o) const;
  bool operator!=(const SubsetFamily& o) const { return !(*this == o); }

  std::string to_string() const;
};

// All members of every family, deduplicated into one canonical family.
SubsetFamily pooled_family(const std::vector<SubsetFamily>& families);

// Members intersected with the carrier; emptied members are dropped.
SubsetFamily restrict_family(const SubsetFamily& u, const PointSet& carrier);

// Union of U x U over the members.
Entourage family_diagonal(const SubsetFamily& u);

// A family is e-disjoint when (A x B) meets e for no two distinct members.
Verdict is_disjoint(const SubsetFamily& u, const Entourage& e);

// Uniform boundedness relative to an explicit entourage: diagonal inside k.
Verdict is_bounded_by(const SubsetFamily& u, const Entourage& k);

// Every point of the space lies in some member of some family.
Verdict is_cover(const SpacePtr& space,
                 const std::vector<SubsetFamily>& families);

// Every point of `carrier` lies in some member of some family.
Verdict covers_subset(const std::vector<SubsetFamily>& families,
                      const PointSet& carrier);

// N_l(v, u) = v together with every member of u that l links to v.
PointSet saturated_neighborhood(const PointSet& v, const SubsetFamily& u,
                                const Entourage& l);

// The l-saturated union of v in u: the saturated neighborhoods of v's
// members, plus the members of u untouched by every one of them. Either side
// may be empty, in which case the other is returned.
SubsetFamily saturated_union(const SubsetFamily& v, const SubsetFamily& u,
                             const Entourage& l);

// The strengthened challenge l u (l o D o l) u (l o D o l o D o l) with
// D the diagonal of u. Requires l symmetric and reflexive.
Entourage saturation_challenge(const Entourage& l, const SubsetFamily& u);

// Entourage containing the diagonal of saturated_union(v, u, l),
// unconditionally: (D o D^-1) u diag(u) with D = diag(v) u (diag(u) o l o
// diag(v)). Every point of a saturated neighborhood is D-related to every
// point of the seeding member.
Entourage saturated_union_bound(const SubsetFamily& v, const SubsetFamily& u,
                                const Entourage& l);

}  // namespace coarse
