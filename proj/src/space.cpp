#include "coarse/space.hpp"

#include <unordered_set>

namespace coarse {

std::shared_ptr<const Space> Space::make(int size) {
  return make(size, {});
}

std::shared_ptr<const Space> Space::make(int size,
                                         std::vector<std::string> labels) {
  if (size < 1) throw InputError("space must have at least one point");
  if (!labels.empty()) {
    if (static_cast<int>(labels.size()) != size)
      throw InputError("label count " + std::to_string(labels.size()) +
                       " does not match space size " + std::to_string(size));
    std::unordered_set<std::string> seen;
    for (const auto& l : labels)
      if (!seen.insert(l).second)
        throw InputError("duplicate point label \"" + l + "\"");
  }
  auto s = std::make_shared<Space>();
  s->size = size;
  s->labels = std::move(labels);
  return s;
}

void require_same_space(const SpacePtr& a, const SpacePtr& b,
                        const char* where) {
  if (!same_space(a, b))
    throw InputError(std::string(where) + ": mismatched spaces (" +
                     std::to_string(a ? a->size : 0) + " vs " +
                     std::to_string(b ? b->size : 0) + " points)");
}

}  // namespace coarse
