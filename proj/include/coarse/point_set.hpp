#pragma once

#include <boost/dynamic_bitset.hpp>
#include <initializer_list>
#include <vector>

#include "coarse/space.hpp"
#include "coarse/types.hpp"

namespace coarse {

// Subset of a space's points, stored densely.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(int universe_size) : bits_(universe_size) {}

  static PointSet of(int universe_size, std::initializer_list<PointId> pts) {
    PointSet s(universe_size);
    for (PointId p : pts) s.insert(p);
    return s;
  }
  static PointSet from_indices(int universe_size,
                               const std::vector<PointId>& pts) {
    PointSet s(universe_size);
    for (PointId p : pts) s.insert(p);
    return s;
  }
  static PointSet full(int universe_size) {
    PointSet s(universe_size);
    s.bits_.set();
    return s;
  }

  int universe_size() const { return static_cast<int>(bits_.size()); }
  bool contains(PointId p) const { return bits_.test(p); }
  void insert(PointId p) {
    if (p < 0 || p >= universe_size())
      throw InputError("point " + std::to_string(p) + " outside space of " +
                       std::to_string(universe_size()) + " points");
    bits_.set(p);
  }
  void erase(PointId p) { bits_.reset(p); }

  std::size_t count() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool is_subset_of(const PointSet& o) const {
    return bits_.is_subset_of(o.bits_);
  }
  bool intersects(const PointSet& o) const { return bits_.intersects(o.bits_); }

  // Smallest element, or -1 when empty.
  PointId first() const {
    auto i = bits_.find_first();
    return i == boost::dynamic_bitset<>::npos ? -1 : static_cast<PointId>(i);
  }

  template <typename F>
  void for_each(F f) const {
    for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos;
         i = bits_.find_next(i))
      f(static_cast<PointId>(i));
  }

  std::vector<PointId> to_indices() const {
    std::vector<PointId> v;
    v.reserve(count());
    for_each([&](PointId p) { v.push_back(p); });
    return v;
  }

  friend PointSet operator|(const PointSet& a, const PointSet& b) {
    PointSet r = a;
    r.bits_ |= b.bits_;
    return r;
  }
  friend PointSet operator&(const PointSet& a, const PointSet& b) {
    PointSet r = a;
    r.bits_ &= b.bits_;
    return r;
  }
  friend PointSet operator-(const PointSet& a, const PointSet& b) {
    PointSet r = a;
    r.bits_ -= b.bits_;
    return r;
  }

  bool operator==(const PointSet& o) const { return bits_ == o.bits_; }
  bool operator!=(const PointSet& o) const { return !(*this == o); }

  // Canonical order on subsets: lexicographic on the sorted index sequence,
  // which sorts first by smallest element.
  static bool canonical_less(const PointSet& a, const PointSet& b);

  const boost::dynamic_bitset<>& bits() const { return bits_; }

  std::string to_string(const SpacePtr& space = nullptr) const;

 private:
  boost::dynamic_bitset<> bits_;
};

}  // namespace coarse
