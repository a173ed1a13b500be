#include "coarse/point_set.hpp"

namespace coarse {

bool PointSet::canonical_less(const PointSet& a, const PointSet& b) {
  auto ia = a.bits_.find_first();
  auto ib = b.bits_.find_first();
  const auto npos = boost::dynamic_bitset<>::npos;
  while (ia != npos && ib != npos) {
    if (ia != ib) return ia < ib;
    ia = a.bits_.find_next(ia);
    ib = b.bits_.find_next(ib);
  }
  return ib != npos;  // a is a strict prefix of b
}

std::string PointSet::to_string(const SpacePtr& space) const {
  std::string s = "{";
  bool first = true;
  for_each([&](PointId p) {
    if (!first) s += ",";
    first = false;
    s += space ? space->label_of(p) : std::to_string(p);
  });
  return s + "}";
}

}  // namespace coarse
