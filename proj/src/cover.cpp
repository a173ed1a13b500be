#include "coarse/cover.hpp"

#include <algorithm>

namespace coarse {

namespace {

void require_member_space(const SpacePtr& space, const PointSet& m,
                          const char* where) {
  if (m.universe_size() != space->size)
    throw InputError(std::string(where) + ": member over " +
                     std::to_string(m.universe_size()) +
                     " points does not fit a space of " +
                     std::to_string(space->size));
}

std::vector<PointSet> canonical_members(std::vector<PointSet> members) {
  std::sort(members.begin(), members.end(), PointSet::canonical_less);
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

}  // namespace

SubsetFamily SubsetFamily::make(SpacePtr space,
                                std::vector<PointSet> members) {
  if (!space) throw InputError("SubsetFamily::make: missing space");
  for (const auto& m : members) {
    require_member_space(space, m, "SubsetFamily::make");
    if (m.empty()) throw InputError("SubsetFamily::make: empty member");
  }
  auto canonical = canonical_members(members);
  if (canonical.size() != members.size())
    throw InputError("SubsetFamily::make: duplicate members");
  return SubsetFamily{std::move(space), std::move(canonical)};
}

SubsetFamily SubsetFamily::canonicalized(SpacePtr space,
                                         std::vector<PointSet> members) {
  if (!space) throw InputError("SubsetFamily::canonicalized: missing space");
  std::vector<PointSet> kept;
  for (auto& m : members) {
    require_member_space(space, m, "SubsetFamily::canonicalized");
    if (!m.empty()) kept.push_back(std::move(m));
  }
  return SubsetFamily{std::move(space), canonical_members(std::move(kept))};
}

bool SubsetFamily::operator==(const SubsetFamily& o) const {
  return same_space(space, o.space) && members == o.members;
}

std::string SubsetFamily::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) s += ", ";
    s += members[i].to_string(space);
  }
  return s + "}";
}

SubsetFamily pooled_family(const std::vector<SubsetFamily>& families) {
  if (families.empty())
    throw InputError("pooled_family: no families to pool");
  std::vector<PointSet> all;
  for (const auto& f : families) {
    require_same_space(families.front().space, f.space, "pooled_family");
    all.insert(all.end(), f.members.begin(), f.members.end());
  }
  return SubsetFamily::canonicalized(families.front().space, std::move(all));
}

SubsetFamily restrict_family(const SubsetFamily& u, const PointSet& carrier) {
  require_member_space(u.space, carrier, "restrict_family");
  std::vector<PointSet> cut;
  for (const auto& m : u.members) cut.push_back(m & carrier);
  return SubsetFamily::canonicalized(u.space, std::move(cut));
}

Entourage family_diagonal(const SubsetFamily& u) {
  std::vector<PointPair> pairs;
  for (const auto& m : u.members)
    m.for_each([&](PointId x) {
      m.for_each([&](PointId y) { pairs.emplace_back(x, y); });
    });
  return Entourage::from_pairs(u.space, pairs);
}

Verdict is_disjoint(const SubsetFamily& u, const Entourage& e) {
  require_same_space(u.space, e.space(), "is_disjoint");
  Verdict v;
  for (int i = 0; i < u.size(); ++i)
    for (int j = 0; j < u.size(); ++j) {
      if (i == j) continue;
      bool hit = false;
      u.members[i].for_each([&](PointId x) {
        if (hit) return;
        u.members[j].for_each([&](PointId y) {
          if (hit) return;
          if (e.contains(x, y)) {
            v.add("disjoint",
                  "members " + u.members[i].to_string(u.space) + " and " +
                      u.members[j].to_string(u.space) + " linked by " +
                      pair_to_string(u.space, {x, y}));
            hit = true;
          }
        });
      });
      if (hit) return v;
    }
  return v;
}

Verdict is_bounded_by(const SubsetFamily& u, const Entourage& k) {
  require_same_space(u.space, k.space(), "is_bounded_by");
  Verdict v;
  if (auto w = family_diagonal(u).first_pair_not_in(k))
    v.add("bounded", "member pair " + pair_to_string(u.space, *w) +
                         " escapes the bound");
  return v;
}

Verdict is_cover(const SpacePtr& space,
                 const std::vector<SubsetFamily>& families) {
  if (!space) throw InputError("is_cover: missing space");
  return covers_subset(families, PointSet::full(space->size));
}

Verdict covers_subset(const std::vector<SubsetFamily>& families,
                      const PointSet& carrier) {
  PointSet covered(carrier.universe_size());
  SpacePtr space;
  for (const auto& f : families) {
    require_member_space(f.space, carrier, "covers_subset");
    space = f.space;
    for (const auto& m : f.members) covered = covered | m;
  }
  Verdict v;
  PointSet missing = carrier - covered;
  if (!missing.empty())
    v.add("cover", "uncovered points " + missing.to_string(space));
  return v;
}

PointSet saturated_neighborhood(const PointSet& v, const SubsetFamily& u,
                                const Entourage& l) {
  require_member_space(u.space, v, "saturated_neighborhood");
  require_same_space(u.space, l.space(), "saturated_neighborhood");
  PointSet out = v;
  const PointSet reach = image(l, v);
  for (const auto& m : u.members)
    if (m.intersects(reach)) out = out | m;
  return out;
}

SubsetFamily saturated_union(const SubsetFamily& v, const SubsetFamily& u,
                             const Entourage& l) {
  require_same_space(u.space, v.space, "saturated_union");
  require_same_space(u.space, l.space(), "saturated_union");
  if (v.empty()) return u;
  if (u.empty()) return v;
  std::vector<PointSet> out;
  PointSet seen(u.space->size);
  for (const auto& vm : v.members) {
    out.push_back(saturated_neighborhood(vm, u, l));
    seen = seen | image(l, vm);
  }
  for (const auto& um : u.members)
    if (!um.intersects(seen)) out.push_back(um);
  return SubsetFamily::canonicalized(u.space, std::move(out));
}

Entourage saturation_challenge(const Entourage& l, const SubsetFamily& u) {
  require_same_space(u.space, l.space(), "saturation_challenge");
  if (auto w = l.reflexivity_witness())
    throw InputError("saturation_challenge: entourage misses diagonal at " +
                     u.space->label_of(*w));
  if (auto w = l.symmetry_witness())
    throw InputError("saturation_challenge: entourage not symmetric at " +
                     pair_to_string(u.space, *w));
  const Entourage d = family_diagonal(u);
  const Entourage ldl = compose(l, compose(d, l));
  return unite(l, unite(ldl, compose(ldl, compose(d, l))));
}

Entourage saturated_union_bound(const SubsetFamily& v, const SubsetFamily& u,
                                const Entourage& l) {
  require_same_space(u.space, v.space, "saturated_union_bound");
  require_same_space(u.space, l.space(), "saturated_union_bound");
  const Entourage dv = family_diagonal(v);
  const Entourage du = family_diagonal(u);
  const Entourage d = unite(dv, compose(du, compose(l, dv)));
  return unite(compose(d, inverse_of(d)), du);
}

}  // namespace coarse
