#include "coarse/certificates.hpp"

#include <algorithm>
#include <string>

namespace coarse {

namespace {

void require_certificate_spaces(const SpacePtr& space,
                                const std::vector<SubsetFamily>& families,
                                const Entourage& bound,
                                const PointSet& carrier, const char* where) {
  require_same_space(space, bound.space(), where);
  for (const auto& f : families) require_same_space(space, f.space, where);
  if (carrier.universe_size() != space->size)
    throw InputError(std::string(where) + ": carrier does not fit the space");
}

void check_families(Verdict& v, const std::vector<SubsetFamily>& families,
                    const PointSet& carrier, const Entourage& bound) {
  for (std::size_t i = 0; i < families.size(); ++i)
    for (const auto& m : families[i].members)
      if (!m.is_subset_of(carrier)) {
        v.add("member_in_carrier",
              "family " + std::to_string(i) + " member " +
                  m.to_string(families[i].space) + " leaves the carrier");
        break;
      }
  v.absorb(covers_subset(families, carrier));
  for (std::size_t i = 0; i < families.size(); ++i) {
    Verdict b = is_bounded_by(families[i], bound);
    if (!b.ok())
      v.add("bounded",
            "family " + std::to_string(i) + ": " + b.violations[0].detail);
  }
}

std::string indexed(const char* what, std::size_t i) {
  return std::string(what) + " " + std::to_string(i);
}

}  // namespace

Verdict verify_property_c(const PropertyCCertificate& cert) {
  require_certificate_spaces(cert.challenge.space, cert.families, cert.bound,
                             cert.carrier, "verify_property_c");
  Verdict v = check_presentation(cert.challenge);
  if (!v.ok()) return v;
  if (static_cast<int>(cert.families.size()) > cert.challenge.depth())
    v.add("family_count",
          std::to_string(cert.families.size()) + " families against " +
              std::to_string(cert.challenge.depth()) + " challenge levels");
  check_families(v, cert.families, cert.carrier, cert.bound);
  for (std::size_t i = 0; i < cert.families.size(); ++i) {
    if (static_cast<int>(i) >= cert.challenge.depth()) break;
    Verdict d = is_disjoint(cert.families[i], cert.challenge.level(i));
    if (!d.ok())
      v.add("disjoint",
            indexed("family", i) + ": " + d.violations[0].detail);
  }
  return v;
}

Verdict verify_dimension(const DimensionCertificate& cert) {
  require_certificate_spaces(cert.scale.space(), cert.families, cert.bound,
                             cert.carrier, "verify_dimension");
  Verdict v;
  check_families(v, cert.families, cert.carrier, cert.bound);
  for (std::size_t i = 0; i < cert.families.size(); ++i) {
    Verdict d = is_disjoint(cert.families[i], cert.scale);
    if (!d.ok())
      v.add("disjoint",
            indexed("family", i) + ": " + d.violations[0].detail);
  }
  return v;
}

PropertyCCertificate propc_from_dimension(const DimensionCertificate& cert,
                                          const Filtration& challenge) {
  require_same_space(cert.scale.space(), challenge.space,
                     "propc_from_dimension");
  const int k = static_cast<int>(cert.families.size());
  if (k > challenge.depth())
    throw InputError("propc_from_dimension: " + std::to_string(k) +
                     " families exceed challenge depth " +
                     std::to_string(challenge.depth()));
  if (k > 0)
    if (auto w = challenge.level(k - 1).first_pair_not_in(cert.scale))
      throw InputError(
          "propc_from_dimension: challenge level " + std::to_string(k) +
          " escapes the scale at " + pair_to_string(challenge.space, *w));
  return PropertyCCertificate{challenge, cert.families, cert.bound,
                              cert.carrier};
}

namespace {

void require_reflexive_symmetric(const Entourage& e, const char* what) {
  if (auto w = e.reflexivity_witness())
    throw InputError(std::string(what) + " misses the diagonal at " +
                     e.space()->label_of(*w));
  if (auto w = e.symmetry_witness())
    throw InputError(std::string(what) + " not symmetric at " +
                     pair_to_string(e.space(), *w));
}

// Exact search state: points get colored one by one; a family class stays
// legal while every scale-component inside it is a bound-clique. Violations
// never heal as points are added, so the check prunes soundly.
struct ExactSearch {
  const Entourage& scale;
  const Entourage& bound;
  int n_families;
  int size;
  std::vector<int> color;

  bool family_class_legal(int f, PointId newest) const {
    std::vector<PointId> cls;
    for (PointId p = 0; p <= newest; ++p)
      if (color[p] == f) cls.push_back(p);
    std::vector<PointId> component{newest};
    std::vector<bool> in_component(color.size(), false);
    in_component[newest] = true;
    for (std::size_t head = 0; head < component.size(); ++head)
      for (PointId q : cls)
        if (!in_component[q] && scale.contains(component[head], q)) {
          in_component[q] = true;
          component.push_back(q);
        }
    for (PointId a : component)
      for (PointId b : component)
        if (!bound.contains(a, b)) return false;
    return true;
  }

  bool assign(PointId p, int used) {
    if (p == size) return true;
    const int top = std::min(used, n_families - 1);
    for (int f = 0; f <= top; ++f) {
      color[p] = f;
      if (family_class_legal(f, p) &&
          assign(p + 1, std::max(used, f + 1)))
        return true;
    }
    color[p] = -1;
    return false;
  }
};

DimensionCertificate certificate_from_colors(const Entourage& scale,
                                             const Entourage& bound, int n,
                                             const std::vector<int>& color) {
  const SpacePtr space = scale.space();
  std::vector<SubsetFamily> families;
  for (int f = 0; f <= n; ++f) {
    PointSet cls(space->size);
    for (PointId p = 0; p < space->size; ++p)
      if (color[p] == f) cls.insert(p);
    if (cls.empty()) break;
    std::vector<PointSet> blocks;
    PointSet left = cls;
    while (!left.empty()) {
      PointSet block(space->size);
      block.insert(left.first());
      for (bool grew = true; grew;) {
        const PointSet next = image(scale, block) & cls;
        grew = !next.is_subset_of(block);
        block = block | next;
      }
      blocks.push_back(block);
      left = left - block;
    }
    families.push_back(SubsetFamily::canonicalized(space, std::move(blocks)));
  }
  return DimensionCertificate{scale, std::move(families), bound,
                              PointSet::full(space->size)};
}

DimensionSearchResult greedy_search(const Entourage& scale,
                                    const Entourage& bound, int n) {
  const SpacePtr space = scale.space();
  std::vector<std::vector<PointSet>> blocks(n + 1);
  for (PointId p = 0; p < space->size; ++p) {
    bool placed = false;
    for (int f = 0; f <= n && !placed; ++f) {
      auto separated_from_others = [&](std::size_t joined) {
        for (std::size_t b = 0; b < blocks[f].size(); ++b) {
          if (b == joined) continue;
          bool bad = false;
          blocks[f][b].for_each([&](PointId q) {
            bad = bad || scale.contains(p, q) || scale.contains(q, p);
          });
          if (bad) return false;
        }
        return true;
      };
      for (std::size_t b = 0; b < blocks[f].size() && !placed; ++b) {
        bool clique = true;
        blocks[f][b].for_each(
            [&](PointId q) { clique = clique && bound.contains(p, q); });
        if (clique && separated_from_others(b)) {
          blocks[f][b].insert(p);
          placed = true;
        }
      }
      if (!placed && separated_from_others(blocks[f].size())) {
        blocks[f].push_back(PointSet::of(space->size, {p}));
        placed = true;
      }
    }
    if (!placed) return {std::nullopt, false};
  }
  std::vector<SubsetFamily> families;
  for (auto& fam : blocks)
    if (!fam.empty())
      families.push_back(SubsetFamily::canonicalized(space, std::move(fam)));
  return {DimensionCertificate{scale, std::move(families), bound,
                               PointSet::full(space->size)},
          false};
}

}  // namespace

DimensionSearchResult search_dimension_certificate(const Entourage& scale,
                                                   const Entourage& bound,
                                                   int n, SearchMode mode,
                                                   int exact_limit) {
  require_same_space(scale.space(), bound.space(),
                     "search_dimension_certificate");
  require_reflexive_symmetric(scale, "search_dimension_certificate: scale");
  require_reflexive_symmetric(bound, "search_dimension_certificate: bound");
  if (n < 0)
    throw InputError("search_dimension_certificate: negative family count");
  if (mode == SearchMode::greedy) return greedy_search(scale, bound, n);
  const int size = scale.space_size();
  if (size > exact_limit)
    throw InputError("search_dimension_certificate: " + std::to_string(size) +
                     " points exceed the exact-search limit " +
                     std::to_string(exact_limit) + "; use greedy mode");
  ExactSearch search{scale, bound, n + 1, size,
                     std::vector<int>(size, -1)};
  if (!search.assign(0, 0)) return {std::nullopt, true};
  return {certificate_from_colors(scale, bound, n, search.color), false};
}

namespace {

void require_valid(const PropertyCCertificate& cert, const char* where,
                   const std::string& which) {
  Verdict v = verify_property_c(cert);
  if (!v.ok())
    throw InputError(std::string(where) + ": " + which +
                     " certificate invalid: " + v.summary());
}

SubsetFamily family_or_empty(const std::vector<SubsetFamily>& families,
                             std::size_t i, const SpacePtr& space) {
  if (i < families.size()) return families[i];
  return SubsetFamily{space, {}};
}

}  // namespace

PropertyCCertificate combine_covers_finite_union(
    const PropertyCCertificate& a, const PropertyCCertificate& b) {
  const char* where = "combine_covers_finite_union";
  require_same_space(a.challenge.space, b.challenge.space, where);
  if (!(a.challenge == b.challenge))
    throw InputError(std::string(where) + ": challenge chains differ");
  if (b.carrier.empty()) return a;
  if (a.carrier.empty()) return b;
  require_valid(a, where, "first");
  require_valid(b, where, "second");

  const SpacePtr space = a.challenge.space;
  const SubsetFamily pooled = pooled_family(a.families);
  const std::size_t steps = std::max(a.families.size(), b.families.size());
  for (std::size_t i = 0; i < b.families.size(); ++i) {
    const Entourage k =
        saturation_challenge(a.challenge.level(static_cast<int>(i)), pooled);
    Verdict d = is_disjoint(b.families[i], k);
    if (!d.ok())
      throw InputError(std::string(where) + ": second certificate family " +
                       std::to_string(i) +
                       " not disjoint at the strengthened challenge: " +
                       d.violations[0].detail);
  }

  std::vector<SubsetFamily> combined;
  Entourage bound = Entourage::empty(space);
  for (std::size_t i = 0; i < steps; ++i) {
    const Entourage& l = a.challenge.level(static_cast<int>(i));
    const SubsetFamily u = family_or_empty(a.families, i, space);
    const SubsetFamily v = family_or_empty(b.families, i, space);
    combined.push_back(saturated_union(v, u, l));
    bound = unite(bound, saturated_union_bound(v, u, l));
  }
  return PropertyCCertificate{a.challenge, std::move(combined),
                              std::move(bound), a.carrier | b.carrier};
}

PropertyCCertificate combine_covers_infinite_union(
    const std::vector<PropertyCCertificate>& pieces,
    const PropertyCCertificate& core, const Entourage& separation) {
  const char* where = "combine_covers_infinite_union";
  if (pieces.empty())
    throw InputError(std::string(where) + ": no piece certificates");
  const SpacePtr space = pieces.front().challenge.space;
  require_same_space(space, core.challenge.space, where);
  require_same_space(space, separation.space(), where);
  for (std::size_t i = 1; i < pieces.size(); ++i)
    if (!(pieces[i].challenge == pieces.front().challenge))
      throw InputError(std::string(where) + ": piece " + std::to_string(i) +
                       " answers a different challenge chain");
  if (!(core.challenge == pieces.front().challenge))
    throw InputError(std::string(where) +
                     ": core answers a different challenge chain");
  for (std::size_t i = 1; i < pieces.size(); ++i)
    if (pieces[i].bound != pieces.front().bound)
      throw InputError(std::string(where) + ": piece " + std::to_string(i) +
                       " carries a different bound");
  for (std::size_t i = 0; i < pieces.size(); ++i)
    require_valid(pieces[i], where, "piece " + std::to_string(i));
  require_valid(core, where, "core");
  if (pieces.size() == 1 && core.carrier.empty()) return pieces.front();

  const Filtration& challenge = pieces.front().challenge;
  std::size_t piece_steps = 0;
  for (const auto& p : pieces)
    piece_steps = std::max(piece_steps, p.families.size());
  const std::size_t steps = std::max(piece_steps, core.families.size());

  std::vector<PointSet> trimmed;
  std::vector<SubsetFamily> restricted(steps, SubsetFamily{space, {}});
  {
    std::vector<std::vector<PointSet>> pool(steps);
    for (const auto& p : pieces) {
      const PointSet cut = p.carrier - core.carrier;
      trimmed.push_back(cut);
      for (std::size_t i = 0; i < p.families.size(); ++i) {
        const SubsetFamily r = restrict_family(p.families[i], cut);
        pool[i].insert(pool[i].end(), r.members.begin(), r.members.end());
      }
    }
    for (std::size_t i = 0; i < steps; ++i)
      restricted[i] = SubsetFamily::canonicalized(space, std::move(pool[i]));
  }

  for (std::size_t i = 0; i < trimmed.size(); ++i)
    for (std::size_t j = 0; j < trimmed.size(); ++j) {
      if (i == j) continue;
      for (PointId x : trimmed[i].to_indices())
        for (PointId y : trimmed[j].to_indices())
          if (separation.contains(x, y))
            throw InputError(std::string(where) + ": trimmed carriers " +
                             std::to_string(i) + " and " + std::to_string(j) +
                             " linked under the separation at " +
                             pair_to_string(space, {x, y}));
    }

  SubsetFamily pooled{space, {}};
  {
    std::vector<PointSet> all;
    for (const auto& r : restricted)
      all.insert(all.end(), r.members.begin(), r.members.end());
    pooled = SubsetFamily::canonicalized(space, std::move(all));
  }
  if (steps > 0) {
    const Entourage needed = saturation_challenge(
        challenge.level(static_cast<int>(steps) - 1), pooled);
    if (auto w = needed.first_pair_not_in(separation))
      throw InputError(std::string(where) +
                       ": separation misses the strengthened challenge at " +
                       pair_to_string(space, *w));
  }
  for (std::size_t i = 0; i < core.families.size(); ++i) {
    const Entourage k =
        saturation_challenge(challenge.level(static_cast<int>(i)), pooled);
    Verdict d = is_disjoint(core.families[i], k);
    if (!d.ok())
      throw InputError(std::string(where) + ": core family " +
                       std::to_string(i) +
                       " not disjoint at the strengthened challenge: " +
                       d.violations[0].detail);
  }

  std::vector<SubsetFamily> combined;
  Entourage bound = Entourage::empty(space);
  PointSet carrier = core.carrier;
  for (const auto& p : pieces) carrier = carrier | p.carrier;
  for (std::size_t i = 0; i < steps; ++i) {
    const Entourage& l = challenge.level(static_cast<int>(i));
    const SubsetFamily v = family_or_empty(core.families, i, space);
    combined.push_back(saturated_union(v, restricted[i], l));
    bound = unite(bound, saturated_union_bound(v, restricted[i], l));
  }
  return PropertyCCertificate{challenge, std::move(combined),
                              std::move(bound), std::move(carrier)};
}

}  // namespace coarse
