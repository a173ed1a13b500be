#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "coarse/point_set.hpp"
#include "coarse/space.hpp"
#include "coarse/types.hpp"

namespace coarse {

using PointPair = std::pair<PointId, PointId>;

// Binary relation on a space's points. Stored as a dense bit matrix on small
// spaces and as a sorted pair set above kDenseLimit; the two representations
// compare equal by pair-set semantics.
class Entourage {
 public:
  enum class Rep { dense, sparse };
  static constexpr int kDenseLimit = 1024;

  static Entourage empty(SpacePtr space);
  static Entourage diagonal(SpacePtr space);
  static Entourage full(SpacePtr space);
  static Entourage from_pairs(SpacePtr space,
                              const std::vector<PointPair>& pairs);
  // Forces a representation regardless of space size (cross-rep testing).
  static Entourage from_pairs_with_rep(SpacePtr space,
                                       const std::vector<PointPair>& pairs,
                                       Rep rep);

  const SpacePtr& space() const { return space_; }
  int space_size() const { return space_->size; }
  Rep rep() const;

  bool contains(PointId x, PointId y) const;
  std::size_t pair_count() const;
  std::vector<PointPair> pairs() const;  // sorted row-major

  bool is_reflexive() const { return !reflexivity_witness().has_value(); }
  bool is_symmetric() const { return !symmetry_witness().has_value(); }
  // First diagonal pair (x,x) missing from the relation.
  std::optional<PointId> reflexivity_witness() const;
  // First (x,y) in the relation with (y,x) absent.
  std::optional<PointPair> symmetry_witness() const;
  // First pair of *this not contained in other (row-major scan).
  std::optional<PointPair> first_pair_not_in(const Entourage& other) const;

  bool operator==(const Entourage& o) const;
  bool operator!=(const Entourage& o) const { return !(*this == o); }

  Entourage to_rep(Rep r) const;

  friend Entourage compose(const Entourage& a, const Entourage& b);
  friend Entourage inverse_of(const Entourage& e);
  friend PointSet image(const Entourage& e, const PointSet& a);
  friend Entourage unite(const Entourage& a, const Entourage& b);
  friend Entourage intersect(const Entourage& a, const Entourage& b);
  friend Entourage difference(const Entourage& a, const Entourage& b);

 private:
  struct Dense {
    std::vector<boost::dynamic_bitset<>> rows;  // rows[x][y] <=> (x,y)
  };
  struct Sparse {
    std::vector<PointPair> pairs;  // sorted, unique
  };

  Entourage(SpacePtr space, Dense d) : space_(std::move(space)), rel_(std::move(d)) {}
  Entourage(SpacePtr space, Sparse s) : space_(std::move(space)), rel_(std::move(s)) {}

  static Rep preferred_rep(int n) {
    return n <= kDenseLimit ? Rep::dense : Rep::sparse;
  }
  const Dense* dense() const { return std::get_if<Dense>(&rel_); }
  const Sparse* sparse() const { return std::get_if<Sparse>(&rel_); }

  SpacePtr space_;
  std::variant<Dense, Sparse> rel_;
};

// Relational composition in the fixed order
//   compose(a, b) = {(x, z) : exists y, (x, y) in a and (y, z) in b}.
Entourage compose(const Entourage& a, const Entourage& b);
Entourage inverse_of(const Entourage& e);
// e^0 is the diagonal; e^k = compose(e, e^(k-1)). Computed by
// square-and-multiply, which agrees by associativity.
Entourage power(const Entourage& e, std::uint64_t k);
// image(e, a) = {x : (x, y) in e for some y in a}; the first coordinate
// varies.
PointSet image(const Entourage& e, const PointSet& a);
Entourage unite(const Entourage& a, const Entourage& b);
Entourage intersect(const Entourage& a, const Entourage& b);
Entourage difference(const Entourage& a, const Entourage& b);
bool is_subset(const Entourage& a, const Entourage& b);

std::string pair_to_string(const SpacePtr& space, PointPair p);

}  // namespace coarse
