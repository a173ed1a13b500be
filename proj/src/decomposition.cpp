#include "coarse/decomposition.hpp"

#include <algorithm>
#include <cstddef>
#include <string>

namespace coarse {

namespace {

void require_fits(const SpacePtr& space, const PointSet& s,
                  const char* where) {
  if (s.universe_size() != space->size)
    throw InputError(std::string(where) + ": subset over " +
                     std::to_string(s.universe_size()) +
                     " points does not fit a space of " +
                     std::to_string(space->size));
}

bool family_has(const SubsetFamily& family, const PointSet& block) {
  for (const auto& m : family.members)
    if (m == block) return true;
  return false;
}

// First pair of l inside a x b, scanning a then b in index order.
std::optional<PointPair> linking_pair(const PointSet& a, const PointSet& b,
                                      const Entourage& l) {
  std::optional<PointPair> hit;
  a.for_each([&](PointId x) {
    if (hit) return;
    b.for_each([&](PointId y) {
      if (hit) return;
      if (l.contains(x, y)) hit = PointPair{x, y};
    });
  });
  return hit;
}

void absorb_prefixed(Verdict& into, const Verdict& from,
                     const std::string& prefix) {
  for (const auto& viol : from.violations)
    into.add(viol.rule, prefix + viol.detail);
}

}  // namespace

Verdict verify_decomposition(const Decomposition& dec,
                             const SubsetFamily& family, const Entourage& l) {
  if (!dec.space) throw InputError("verify_decomposition: missing space");
  require_same_space(dec.space, family.space, "verify_decomposition");
  require_same_space(dec.space, l.space(), "verify_decomposition");
  require_fits(dec.space, dec.target, "verify_decomposition");
  for (const auto& p : dec.parts) {
    require_fits(dec.space, p.part, "verify_decomposition");
    for (const auto& b : p.blocks)
      require_fits(dec.space, b, "verify_decomposition");
  }

  Verdict v;
  PointSet parts_union(dec.space->size);
  for (const auto& p : dec.parts) parts_union = parts_union | p.part;
  if (parts_union != dec.target) {
    const PointSet missing = dec.target - parts_union;
    if (!missing.empty())
      v.add("part_union", "target points " + missing.to_string(dec.space) +
                              " lie in no part");
    else
      v.add("part_union", "parts spill outside the target at " +
                              (parts_union - dec.target).to_string(dec.space));
  }

  bool block_union_hit = false;
  bool member_hit = false;
  bool distinct_hit = false;
  bool disjoint_hit = false;
  for (std::size_t i = 0; i < dec.parts.size(); ++i) {
    const auto& p = dec.parts[i];
    const std::string where = "part " + std::to_string(i);

    if (!block_union_hit) {
      PointSet blocks_union(dec.space->size);
      for (const auto& b : p.blocks) blocks_union = blocks_union | b;
      if (blocks_union != p.part) {
        const PointSet missing = p.part - blocks_union;
        const PointSet spill = blocks_union - p.part;
        v.add("block_union",
              where + (missing.empty()
                           ? " blocks spill outside it at " +
                                 spill.to_string(dec.space)
                           : " is not covered by its blocks at " +
                                 missing.to_string(dec.space)));
        block_union_hit = true;
      }
    }

    for (std::size_t j = 0; j < p.blocks.size() && !member_hit; ++j)
      if (!family_has(family, p.blocks[j])) {
        v.add("member", where + " block " +
                            p.blocks[j].to_string(dec.space) +
                            " is not a family member");
        member_hit = true;
      }

    for (std::size_t j = 0; j < p.blocks.size() && !distinct_hit; ++j)
      for (std::size_t j2 = j + 1; j2 < p.blocks.size() && !distinct_hit; ++j2)
        if (p.blocks[j] == p.blocks[j2]) {
          v.add("distinct", where + " repeats block " +
                                p.blocks[j].to_string(dec.space));
          distinct_hit = true;
        }

    for (std::size_t j = 0; j < p.blocks.size() && !disjoint_hit; ++j)
      for (std::size_t j2 = 0; j2 < p.blocks.size() && !disjoint_hit; ++j2) {
        if (j == j2 || p.blocks[j] == p.blocks[j2]) continue;
        if (auto w = linking_pair(p.blocks[j], p.blocks[j2], l)) {
          v.add("disjoint", where + " blocks " +
                                p.blocks[j].to_string(dec.space) + " and " +
                                p.blocks[j2].to_string(dec.space) +
                                " linked by " +
                                pair_to_string(dec.space, *w));
          disjoint_hit = true;
        }
      }
  }
  return v;
}

Verdict verify_family_decomposition(const FamilyDecomposition& fd) {
  if (!fd.source.space) throw InputError("verify_family_decomposition: missing space");
  require_same_space(fd.source.space, fd.target.space,
                     "verify_family_decomposition");
  require_same_space(fd.source.space, fd.entourage.space(),
                     "verify_family_decomposition");
  if (static_cast<int>(fd.members.size()) != fd.source.size())
    throw InputError("verify_family_decomposition: " +
                     std::to_string(fd.members.size()) +
                     " decompositions for " + std::to_string(fd.source.size()) +
                     " source members");

  Verdict v;
  for (std::size_t m = 0; m < fd.members.size(); ++m) {
    const std::string where = "member " + std::to_string(m) + ": ";
    if (fd.members[m].target != fd.source.members[m]) {
      v.add("target", where + "decomposes " +
                          fd.members[m].target.to_string(fd.source.space) +
                          " instead of " +
                          fd.source.members[m].to_string(fd.source.space));
      continue;
    }
    if (fd.members[m].arity() != fd.arity)
      v.add("arity", where + "arity " + std::to_string(fd.members[m].arity()) +
                         " against declared arity " +
                         std::to_string(fd.arity));
    absorb_prefixed(v, verify_decomposition(fd.members[m], fd.target,
                                            fd.entourage),
                    where);
  }
  return v;
}

namespace {

void require_valid(const FamilyDecomposition& fd, const char* role) {
  Verdict v = verify_family_decomposition(fd);
  if (!v.ok())
    throw InputError(std::string("compose_weak: ") + role +
                     " decomposition does not verify: " + v.summary());
}

}  // namespace

FamilyDecomposition compose_weak(const FamilyDecomposition& outer,
                                 const FamilyDecomposition& inner) {
  require_same_space(outer.source.space, inner.source.space, "compose_weak");
  require_valid(outer, "outer");
  require_valid(inner, "inner");

  const SpacePtr& space = outer.source.space;
  auto inner_of = [&](const PointSet& block) -> const Decomposition& {
    for (std::size_t j = 0; j < inner.source.members.size(); ++j)
      if (inner.source.members[j] == block) return inner.members[j];
    throw InputError("compose_weak: outer block " + block.to_string(space) +
                     " has no inner decomposition");
  };

  std::vector<Decomposition> composed;
  for (const auto& dec : outer.members) {
    Decomposition out{space, dec.target, {}};
    for (const auto& op : dec.parts)
      for (int k = 0; k < inner.arity; ++k) {
        DecompositionPart combined{PointSet(space->size), {}};
        for (const auto& block : op.blocks) {
          const auto& ip = inner_of(block).parts[k];
          combined.part = combined.part | ip.part;
          combined.blocks.insert(combined.blocks.end(), ip.blocks.begin(),
                                 ip.blocks.end());
        }
        std::sort(combined.blocks.begin(), combined.blocks.end(),
                  PointSet::canonical_less);
        combined.blocks.erase(
            std::unique(combined.blocks.begin(), combined.blocks.end()),
            combined.blocks.end());
        out.parts.push_back(std::move(combined));
      }
    composed.push_back(std::move(out));
  }

  return FamilyDecomposition{outer.source, inner.target,
                             intersect(outer.entourage, inner.entourage),
                             outer.arity * inner.arity, std::move(composed)};
}

FamilyDecomposition first_turn_collapse(
    const std::vector<FamilyDecomposition>& chain) {
  if (chain.empty()) throw InputError("first_turn_collapse: empty chain");
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (chain[i].entourage != chain.front().entourage)
      throw InputError("first_turn_collapse: stage " + std::to_string(i + 1) +
                       " plays a different entourage");
  Verdict v = verify_family_decomposition(chain.front());
  if (!v.ok())
    throw InputError("first_turn_collapse: stage 1 does not verify: " +
                     v.summary());
  FamilyDecomposition acc = chain.front();
  for (std::size_t i = 1; i < chain.size(); ++i)
    acc = compose_weak(acc, chain[i]);
  return acc;
}

}  // namespace coarse
