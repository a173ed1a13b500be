#pragma once

#include <map>
#include <vector>

#include "coarse/cover.hpp"
#include "coarse/rational.hpp"

namespace coarse {

// Finitely supported vector with nonnegative rational entries; zero entries
// are never stored.
class SparseVec {
 public:
  SparseVec() = default;

  void set(PointId p, const Rat& value);
  Rat at(PointId p) const;
  const std::map<PointId, Rat>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  Rat l1_norm() const;
  SparseVec scaled(const Rat& factor) const;
  PointSet support(int universe_size) const;

  bool operator==(const SparseVec& o) const { return entries_ == o.entries_; }
  bool operator!=(const SparseVec& o) const { return !(*this == o); }

 private:
  std::map<PointId, Rat> entries_;
};

Rat l1_distance(const SparseVec& a, const SparseVec& b);

// One averaging level: a family acting at its scale, a representative inside
// each member (indexed like the members), and an entourage containing the
// family's diagonal.
struct PropertyALevel {
  SubsetFamily family;
  std::vector<PointId> representatives;
  Entourage level_bound;
};

// Input to the averaging construction. Level i (0-based) acts at scale
// n^(i+1): its family must be that power of the base disjoint, and the
// families must jointly cover the space.
struct PropertyAConfig {
  Entourage base;
  int n = 0;
  std::vector<PropertyALevel> levels;
};

// Normalized vectors a_x for every point, supported inside support_bound[x],
// varying by at most epsilon_bound across base pairs.
struct PropertyAWitness {
  SpacePtr space;
  std::vector<SparseVec> vectors;
  Entourage support_bound;
  Rat epsilon_bound;
};

// Smallest point of each member, in member order.
std::vector<PointId> default_representatives(const SubsetFamily& family);

Verdict check_config(const PropertyAConfig& cfg);

// max(0, n^(i+1)/4 - D(x, member)) where D is the hop distance of the base;
// an unreachable member contributes 0.
Rat phi(const PropertyAConfig& cfg, int level, int member, PointId x);

// Sum of phi over the level's members. For a valid config at most one term
// is nonzero.
Rat capital_phi(const PropertyAConfig& cfg, int level, PointId x);

// The weighted vector sum_i n^(k-i) * phi-mass of level i at x, placed on
// the representatives of the members whose quarter-neighborhood holds x.
// Validates the config.
SparseVec build_b(const PropertyAConfig& cfg, PointId x);

// Normalizes the b vectors into a witness. Requires 8/(n-1) < epsilon; the
// recorded epsilon_bound is 8/(n-1). The support bound is the smallest
// entourage of the shape (union of level bounds) o base^t containing every
// observed support pair.
PropertyAWitness build_witness(const PropertyAConfig& cfg, const Rat& epsilon);

// Checks normalization, variation along e against the recorded
// epsilon_bound, and support containment.
Verdict verify_witness(const PropertyAWitness& w, const Entourage& e);

// Checks the construction's bounds on the raw vectors without assuming the
// config is valid: norm at least n^(k+1)/4 everywhere, the Lipschitz bound
// n(n^k-1)/(n-1) * D(z,w) on differences over finite-distance pairs, and
// existence of a support bound of the compositional shape.
Verdict verify_b_bounds(const PropertyAConfig& cfg);

}  // namespace coarse
