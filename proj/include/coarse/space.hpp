#pragma once

#include <memory>
#include <string>
#include <vector>

#include "coarse/types.hpp"

namespace coarse {

// A finite set of points 0..size-1 with optional display labels. Point
// identity is the index; labels are cosmetic and never affect equality of
// derived values.
struct Space {
  int size = 0;
  std::vector<std::string> labels;  // empty, or exactly `size` distinct names

  static std::shared_ptr<const Space> make(int size);
  static std::shared_ptr<const Space> make(int size,
                                           std::vector<std::string> labels);

  std::string label_of(PointId x) const {
    return labels.empty() ? std::to_string(x) : labels[x];
  }
};

using SpacePtr = std::shared_ptr<const Space>;

// Same underlying point set: sizes agree.
inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a && b && a->size == b->size;
}

void require_same_space(const SpacePtr& a, const SpacePtr& b,
                        const char* where);

}  // namespace coarse
