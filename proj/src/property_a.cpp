#include "coarse/property_a.hpp"

#include <algorithm>
#include <sstream>

#include "coarse/hop_distance.hpp"

namespace coarse {

void SparseVec::set(PointId p, const Rat& value) {
  if (value < 0) {
    std::ostringstream os;
    os << "sparse vector entry at " << p << " is negative: "
       << format_rational(value);
    throw InputError(os.str());
  }
  if (value == 0) {
    entries_.erase(p);
  } else {
    entries_[p] = value;
  }
}

Rat SparseVec::at(PointId p) const {
  auto it = entries_.find(p);
  return it == entries_.end() ? Rat(0) : it->second;
}

Rat SparseVec::l1_norm() const {
  Rat total(0);
  for (const auto& [p, v] : entries_) total += v;
  return total;
}

SparseVec SparseVec::scaled(const Rat& factor) const {
  SparseVec out;
  for (const auto& [p, v] : entries_) out.set(p, v * factor);
  return out;
}

PointSet SparseVec::support(int universe_size) const {
  PointSet out(universe_size);
  for (const auto& [p, v] : entries_) out.insert(p);
  return out;
}

Rat l1_distance(const SparseVec& a, const SparseVec& b) {
  Rat total(0);
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() || ib != b.entries().end()) {
    if (ib == b.entries().end() ||
        (ia != a.entries().end() && ia->first < ib->first)) {
      total += ia->second;
      ++ia;
    } else if (ia == a.entries().end() || ib->first < ia->first) {
      total += ib->second;
      ++ib;
    } else {
      total += abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return total;
}

std::vector<PointId> default_representatives(const SubsetFamily& family) {
  std::vector<PointId> reps;
  reps.reserve(family.members.size());
  for (const auto& member : family.members) reps.push_back(member.first());
  return reps;
}

namespace {

BigInt int_pow(int base, int exp) {
  BigInt out(1);
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

// Powers of a reflexive relation stabilize by the point count, so huge
// exponents can be clamped before the uint64 conversion.
Entourage power_clamped(const Entourage& e, BigInt k) {
  const BigInt cap(e.space_size());
  if (k > cap) k = cap;
  return power(e, k.convert_to<std::uint64_t>());
}

// Distance tables and level scales shared by the formula evaluators.
struct Evaluator {
  const PropertyAConfig& cfg;
  HopDistance dist;
  std::vector<BigInt> scales;  // scales[i] = n^(i+1)

  explicit Evaluator(const PropertyAConfig& c)
      : cfg(c), dist(hop_distance(c.base)) {
    if (c.n <= 1) {
      throw InputError("averaging parameter must be an integer greater than 1");
    }
    BigInt scale(1);
    for (size_t i = 0; i < c.levels.size(); ++i) {
      scale *= c.n;
      scales.push_back(scale);
    }
  }

  Rat quarter(int level) const { return Rat(scales[level]) / 4; }

  Rat phi(int level, int member, PointId x) const {
    const auto d =
        set_distance(dist, x, cfg.levels[level].family.members[member]);
    if (d.value.is_infinite()) return Rat(0);
    const Rat gap = quarter(level) - Rat(d.value.value());
    return gap > 0 ? gap : Rat(0);
  }

  Rat capital_phi(int level, PointId x) const {
    Rat total(0);
    for (int j = 0; j < cfg.levels[level].family.size(); ++j) {
      total += phi(level, j, x);
    }
    return total;
  }

  // Representatives of the members whose quarter-neighborhood holds x, as a
  // set: coinciding representatives count once.
  std::vector<PointId> near_representatives(int level, PointId x) const {
    std::vector<PointId> out;
    const auto& lv = cfg.levels[level];
    for (int j = 0; j < lv.family.size(); ++j) {
      const auto d = set_distance(dist, x, lv.family.members[j]);
      if (!d.value.is_infinite() && Rat(d.value.value()) < quarter(level)) {
        out.push_back(lv.representatives[j]);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  SparseVec b(PointId x) const {
    SparseVec out;
    const int k = static_cast<int>(cfg.levels.size());
    for (int i = 0; i < k; ++i) {
      const Rat mass = capital_phi(i, x);
      if (mass == 0) continue;
      const Rat weight = Rat(int_pow(cfg.n, k - i)) * mass;
      for (PointId rep : near_representatives(i, x)) {
        out.set(rep, out.at(rep) + weight);
      }
    }
    return out;
  }
};

void require_level_shape(const PropertyAConfig& cfg) {
  for (size_t i = 0; i < cfg.levels.size(); ++i) {
    const auto& lv = cfg.levels[i];
    require_same_space(cfg.base.space(), lv.family.space,
                       "property A level family");
    require_same_space(cfg.base.space(), lv.level_bound.space(),
                       "property A level bound");
    if (static_cast<int>(lv.representatives.size()) != lv.family.size()) {
      std::ostringstream os;
      os << "level " << i << " has " << lv.representatives.size()
         << " representatives for " << lv.family.size() << " members";
      throw InputError(os.str());
    }
  }
}

// Smallest t with (union of level bounds) o base^t containing every listed
// pair. The scan is capped by the point count: powers of a reflexive base
// stabilize there.
Entourage fit_support_bound(const PropertyAConfig& cfg,
                            const std::vector<std::pair<PointId, PointId>>&
                                needed,
                            bool* found) {
  Entourage joined = Entourage::empty(cfg.base.space());
  for (const auto& lv : cfg.levels) joined = unite(joined, lv.level_bound);
  Entourage step = Entourage::diagonal(cfg.base.space());
  const int cap = cfg.base.space()->size;
  for (int t = 0; t <= cap; ++t) {
    const Entourage candidate = compose(joined, step);
    bool ok = true;
    for (const auto& [w, x] : needed) {
      if (!candidate.contains(w, x)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      *found = true;
      return candidate;
    }
    step = compose(step, cfg.base);
  }
  *found = false;
  return Entourage::empty(cfg.base.space());
}

}  // namespace

Verdict check_config(const PropertyAConfig& cfg) {
  if (!cfg.base.space()) throw InputError("config has no base space");
  require_level_shape(cfg);
  Verdict v;
  if (auto p = cfg.base.reflexivity_witness()) {
    v.add("reflexive",
          "base misses " + pair_to_string(cfg.base.space(), {*p, *p}));
  }
  if (auto p = cfg.base.symmetry_witness()) {
    v.add("symmetric",
          "base lacks the reverse of " + pair_to_string(cfg.base.space(), *p));
  }
  if (cfg.n <= 1) {
    v.add("parameter", "n = " + std::to_string(cfg.n) + " is not above 1");
  }
  if (!v.ok()) return v;

  BigInt scale(1);
  std::vector<SubsetFamily> families;
  for (size_t i = 0; i < cfg.levels.size(); ++i) {
    const auto& lv = cfg.levels[i];
    scale *= cfg.n;
    const Entourage p = power_clamped(cfg.base, scale);
    Verdict dj = is_disjoint(lv.family, p);
    for (const auto& violation : dj.violations) {
      v.add("disjoint",
            "level " + std::to_string(i) + ": " + violation.detail);
    }
    const auto gap =
        family_diagonal(lv.family).first_pair_not_in(lv.level_bound);
    if (gap) {
      v.add("level_bound", "level " + std::to_string(i) +
                               ": bound misses the family diagonal at " +
                               pair_to_string(cfg.base.space(), *gap));
    }
    for (int j = 0; j < lv.family.size(); ++j) {
      if (!lv.family.members[j].contains(lv.representatives[j])) {
        v.add("representative",
              "level " + std::to_string(i) + " member " + std::to_string(j) +
                  " does not contain its representative " +
                  cfg.base.space()->label_of(lv.representatives[j]));
        break;
      }
    }
    families.push_back(lv.family);
  }
  v.absorb(is_cover(cfg.base.space(), families));
  return v;
}

Rat phi(const PropertyAConfig& cfg, int level, int member, PointId x) {
  require_level_shape(cfg);
  return Evaluator(cfg).phi(level, member, x);
}

Rat capital_phi(const PropertyAConfig& cfg, int level, PointId x) {
  require_level_shape(cfg);
  return Evaluator(cfg).capital_phi(level, x);
}

SparseVec build_b(const PropertyAConfig& cfg, PointId x) {
  Verdict v = check_config(cfg);
  if (!v.ok()) throw InputError("config is invalid: " + v.summary());
  return Evaluator(cfg).b(x);
}

PropertyAWitness build_witness(const PropertyAConfig& cfg, const Rat& epsilon) {
  Verdict v = check_config(cfg);
  if (!v.ok()) throw InputError("config is invalid: " + v.summary());
  if (cfg.n <= 1 || Rat(8) / (cfg.n - 1) >= epsilon) {
    throw InputError("variation target " + format_rational(epsilon) +
                     " is not above 8/(n-1) for n = " + std::to_string(cfg.n));
  }
  Evaluator ev(cfg);
  const SpacePtr space = cfg.base.space();
  std::vector<SparseVec> vectors;
  std::vector<std::pair<PointId, PointId>> needed;
  for (PointId x = 0; x < space->size; ++x) {
    SparseVec bx = ev.b(x);
    const Rat norm = bx.l1_norm();
    if (norm == 0) {
      throw InputError("vector at " + space->label_of(x) +
                       " has zero mass; the families do not reach it");
    }
    for (const auto& [p, value] : bx.entries()) needed.emplace_back(p, x);
    vectors.push_back(bx.scaled(Rat(1) / norm));
  }
  bool found = false;
  Entourage support = fit_support_bound(cfg, needed, &found);
  if (!found) {
    throw InputError("no support bound of the compositional shape fits");
  }
  return PropertyAWitness{space, std::move(vectors), std::move(support),
                          Rat(8) / (cfg.n - 1)};
}

Verdict verify_witness(const PropertyAWitness& w, const Entourage& e) {
  if (!w.space) throw InputError("witness has no space");
  require_same_space(w.space, w.support_bound.space(), "witness support bound");
  require_same_space(w.space, e.space(), "witness variation entourage");
  if (static_cast<int>(w.vectors.size()) != w.space->size) {
    std::ostringstream os;
    os << "witness carries " << w.vectors.size() << " vectors for "
       << w.space->size << " points";
    throw InputError(os.str());
  }
  Verdict v;
  for (PointId x = 0; x < w.space->size && v.ok(); ++x) {
    if (w.vectors[x].l1_norm() != 1) {
      v.add("normalized", "vector at " + w.space->label_of(x) +
                              " has mass " +
                              format_rational(w.vectors[x].l1_norm()));
    }
  }
  for (const auto& [x, y] : e.pairs()) {
    const Rat gap = l1_distance(w.vectors[x], w.vectors[y]);
    if (gap > w.epsilon_bound) {
      v.add("variation",
            "pair " + pair_to_string(w.space, {x, y}) + " varies by " +
                format_rational(gap) + " above " +
                format_rational(w.epsilon_bound));
      break;
    }
  }
  for (PointId x = 0; x < w.space->size; ++x) {
    const PointSet allowed =
        image(w.support_bound, PointSet::of(w.space->size, {x}));
    const PointSet supp = w.vectors[x].support(w.space->size);
    if (!supp.is_subset_of(allowed)) {
      v.add("support", "vector at " + w.space->label_of(x) +
                           " is supported outside its bound on " +
                           (supp - allowed).to_string(w.space));
      break;
    }
  }
  return v;
}

Verdict verify_b_bounds(const PropertyAConfig& cfg) {
  if (!cfg.base.space()) throw InputError("config has no base space");
  require_level_shape(cfg);
  Evaluator ev(cfg);
  const SpacePtr space = cfg.base.space();
  const int k = static_cast<int>(cfg.levels.size());

  std::vector<SparseVec> vectors;
  std::vector<std::pair<PointId, PointId>> needed;
  for (PointId x = 0; x < space->size; ++x) {
    vectors.push_back(ev.b(x));
    for (const auto& [p, value] : vectors.back().entries()) {
      needed.emplace_back(p, x);
    }
  }

  Verdict v;
  const Rat floor = Rat(int_pow(cfg.n, k + 1)) / 4;
  for (PointId x = 0; x < space->size; ++x) {
    if (vectors[x].l1_norm() < floor) {
      v.add("norm", "vector at " + space->label_of(x) + " has mass " +
                        format_rational(vectors[x].l1_norm()) + " below " +
                        format_rational(floor));
      break;
    }
  }

  const Rat slope =
      Rat(cfg.n) * Rat(int_pow(cfg.n, k) - 1) / Rat(cfg.n - 1);
  bool lipschitz_ok = true;
  for (PointId z = 0; z < space->size && lipschitz_ok; ++z) {
    for (PointId w = z + 1; w < space->size && lipschitz_ok; ++w) {
      const ExtNat d = ev.dist.at(z, w);
      if (d.is_infinite()) continue;
      const Rat gap = l1_distance(vectors[z], vectors[w]);
      if (gap > slope * Rat(d.value())) {
        v.add("lipschitz",
              "pair " + pair_to_string(space, {z, w}) + " at distance " +
                  d.to_string() + " differs by " + format_rational(gap));
        lipschitz_ok = false;
      }
    }
  }

  bool found = false;
  fit_support_bound(cfg, needed, &found);
  if (!found) {
    v.add("support_shape",
          "no composition of the joined level bounds with a base power "
          "covers every support");
  }
  return v;
}

}  // namespace coarse
