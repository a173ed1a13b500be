#include "coarse/entourage.hpp"

#include <algorithm>

namespace coarse {

namespace {

using Bits = boost::dynamic_bitset<>;

std::vector<PointPair> sorted_unique(std::vector<PointPair> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

// Row offsets into a sorted pair list: offsets[x]..offsets[x+1] is row x.
std::vector<std::size_t> row_offsets(const std::vector<PointPair>& pairs,
                                     int n) {
  std::vector<std::size_t> off(n + 1, 0);
  for (const auto& p : pairs) ++off[p.first + 1];
  for (int x = 0; x < n; ++x) off[x + 1] += off[x];
  return off;
}

}  // namespace

Entourage Entourage::empty(SpacePtr space) {
  return from_pairs(std::move(space), {});
}

Entourage Entourage::diagonal(SpacePtr space) {
  std::vector<PointPair> pairs;
  pairs.reserve(space->size);
  for (PointId x = 0; x < space->size; ++x) pairs.emplace_back(x, x);
  return from_pairs(std::move(space), pairs);
}

Entourage Entourage::full(SpacePtr space) {
  const int n = space->size;
  if (preferred_rep(n) == Rep::dense) {
    Dense d;
    d.rows.assign(n, Bits(n));
    for (auto& row : d.rows) row.set();
    return Entourage(std::move(space), std::move(d));
  }
  std::vector<PointPair> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * n);
  for (PointId x = 0; x < n; ++x)
    for (PointId y = 0; y < n; ++y) pairs.emplace_back(x, y);
  Sparse s{std::move(pairs)};
  return Entourage(std::move(space), std::move(s));
}

Entourage Entourage::from_pairs(SpacePtr space,
                                const std::vector<PointPair>& pairs) {
  return from_pairs_with_rep(std::move(space), pairs,
                             preferred_rep(space ? space->size : 0));
}

Entourage Entourage::from_pairs_with_rep(SpacePtr space,
                                         const std::vector<PointPair>& pairs,
                                         Rep rep) {
  if (!space) throw InputError("entourage requires a space");
  const int n = space->size;
  for (const auto& [x, y] : pairs)
    if (x < 0 || x >= n || y < 0 || y >= n)
      throw InputError("pair (" + std::to_string(x) + "," + std::to_string(y) +
                       ") outside space of " + std::to_string(n) + " points");
  if (rep == Rep::dense) {
    Dense d;
    d.rows.assign(n, Bits(n));
    for (const auto& [x, y] : pairs) d.rows[x].set(y);
    return Entourage(std::move(space), std::move(d));
  }
  Sparse s{sorted_unique(pairs)};
  return Entourage(std::move(space), std::move(s));
}

Entourage::Rep Entourage::rep() const {
  return dense() ? Rep::dense : Rep::sparse;
}

bool Entourage::contains(PointId x, PointId y) const {
  if (x < 0 || x >= space_size() || y < 0 || y >= space_size()) return false;
  if (const Dense* d = dense()) return d->rows[x].test(y);
  const auto& ps = sparse()->pairs;
  return std::binary_search(ps.begin(), ps.end(), PointPair{x, y});
}

std::size_t Entourage::pair_count() const {
  if (const Dense* d = dense()) {
    std::size_t c = 0;
    for (const auto& row : d->rows) c += row.count();
    return c;
  }
  return sparse()->pairs.size();
}

std::vector<PointPair> Entourage::pairs() const {
  if (const Sparse* s = sparse()) return s->pairs;
  std::vector<PointPair> out;
  out.reserve(pair_count());
  const Dense* d = dense();
  for (PointId x = 0; x < space_size(); ++x)
    for (auto y = d->rows[x].find_first(); y != Bits::npos;
         y = d->rows[x].find_next(y))
      out.emplace_back(x, static_cast<PointId>(y));
  return out;
}

std::optional<PointId> Entourage::reflexivity_witness() const {
  for (PointId x = 0; x < space_size(); ++x)
    if (!contains(x, x)) return x;
  return std::nullopt;
}

std::optional<PointPair> Entourage::symmetry_witness() const {
  for (const auto& [x, y] : pairs())
    if (!contains(y, x)) return PointPair{x, y};
  return std::nullopt;
}

std::optional<PointPair> Entourage::first_pair_not_in(
    const Entourage& other) const {
  require_same_space(space_, other.space_, "subset check");
  for (const auto& p : pairs())
    if (!other.contains(p.first, p.second)) return p;
  return std::nullopt;
}

bool Entourage::operator==(const Entourage& o) const {
  if (!same_space(space_, o.space_)) return false;
  if (const Dense* a = dense())
    if (const Dense* b = o.dense()) return a->rows == b->rows;
  if (const Sparse* a = sparse())
    if (const Sparse* b = o.sparse()) return a->pairs == b->pairs;
  return pairs() == o.pairs();
}

Entourage Entourage::to_rep(Rep r) const {
  if (r == rep()) return *this;
  return from_pairs_with_rep(space_, pairs(), r);
}

Entourage compose(const Entourage& a, const Entourage& b) {
  require_same_space(a.space_, b.space_, "compose");
  const int n = a.space_size();
  if (const Entourage::Dense* da = a.dense()) {
    const Entourage db_conv = b.to_rep(Entourage::Rep::dense);
    const Entourage::Dense* db = db_conv.dense();
    Entourage::Dense out;
    out.rows.assign(n, Bits(n));
    for (PointId x = 0; x < n; ++x)
      for (auto y = da->rows[x].find_first(); y != Bits::npos;
           y = da->rows[x].find_next(y))
        out.rows[x] |= db->rows[y];
    return Entourage(a.space_, std::move(out));
  }
  const Entourage b_sp = b.to_rep(Entourage::Rep::sparse);
  const auto& pa = a.sparse()->pairs;
  const auto& pb = b_sp.sparse()->pairs;
  const auto off = row_offsets(pb, n);
  std::vector<PointPair> out;
  for (const auto& [x, y] : pa)
    for (std::size_t i = off[y]; i < off[y + 1]; ++i)
      out.emplace_back(x, pb[i].second);
  Entourage::Sparse s{sorted_unique(std::move(out))};
  return Entourage(a.space_, std::move(s));
}

Entourage inverse_of(const Entourage& e) {
  if (const Entourage::Dense* d = e.dense()) {
    const int n = e.space_size();
    Entourage::Dense out;
    out.rows.assign(n, Bits(n));
    for (PointId x = 0; x < n; ++x)
      for (auto y = d->rows[x].find_first(); y != Bits::npos;
           y = d->rows[x].find_next(y))
        out.rows[y].set(x);
    return Entourage(e.space_, std::move(out));
  }
  std::vector<PointPair> out;
  out.reserve(e.sparse()->pairs.size());
  for (const auto& [x, y] : e.sparse()->pairs) out.emplace_back(y, x);
  Entourage::Sparse s{sorted_unique(std::move(out))};
  return Entourage(e.space_, std::move(s));
}

Entourage power(const Entourage& e, std::uint64_t k) {
  Entourage result = Entourage::diagonal(e.space());
  Entourage base = e;
  while (k > 0) {
    if (k & 1) result = compose(result, base);
    k >>= 1;
    if (k > 0) base = compose(base, base);
  }
  return result;
}

PointSet image(const Entourage& e, const PointSet& a) {
  if (a.universe_size() != e.space_size())
    throw InputError("image: set universe does not match the space");
  PointSet out(e.space_size());
  if (const Entourage::Dense* d = e.dense()) {
    for (PointId x = 0; x < e.space_size(); ++x)
      if (d->rows[x].intersects(a.bits())) out.insert(x);
    return out;
  }
  for (const auto& [x, y] : e.sparse()->pairs)
    if (a.contains(y)) out.insert(x);
  return out;
}

Entourage unite(const Entourage& a, const Entourage& b) {
  require_same_space(a.space_, b.space_, "unite");
  if (const Entourage::Dense* da = a.dense()) {
    const Entourage bb = b.to_rep(Entourage::Rep::dense);
    Entourage::Dense out = *da;
    const Entourage::Dense* db = bb.dense();
    for (int x = 0; x < a.space_size(); ++x) out.rows[x] |= db->rows[x];
    return Entourage(a.space_, std::move(out));
  }
  const Entourage bb = b.to_rep(Entourage::Rep::sparse);
  std::vector<PointPair> out;
  std::set_union(a.sparse()->pairs.begin(), a.sparse()->pairs.end(),
                 bb.sparse()->pairs.begin(), bb.sparse()->pairs.end(),
                 std::back_inserter(out));
  Entourage::Sparse s{std::move(out)};
  return Entourage(a.space_, std::move(s));
}

Entourage intersect(const Entourage& a, const Entourage& b) {
  require_same_space(a.space_, b.space_, "intersect");
  if (const Entourage::Dense* da = a.dense()) {
    const Entourage bb = b.to_rep(Entourage::Rep::dense);
    Entourage::Dense out = *da;
    const Entourage::Dense* db = bb.dense();
    for (int x = 0; x < a.space_size(); ++x) out.rows[x] &= db->rows[x];
    return Entourage(a.space_, std::move(out));
  }
  const Entourage bb = b.to_rep(Entourage::Rep::sparse);
  std::vector<PointPair> out;
  std::set_intersection(a.sparse()->pairs.begin(), a.sparse()->pairs.end(),
                        bb.sparse()->pairs.begin(), bb.sparse()->pairs.end(),
                        std::back_inserter(out));
  Entourage::Sparse s{std::move(out)};
  return Entourage(a.space_, std::move(s));
}

Entourage difference(const Entourage& a, const Entourage& b) {
  require_same_space(a.space_, b.space_, "difference");
  if (const Entourage::Dense* da = a.dense()) {
    const Entourage bb = b.to_rep(Entourage::Rep::dense);
    Entourage::Dense out = *da;
    const Entourage::Dense* db = bb.dense();
    for (int x = 0; x < a.space_size(); ++x) out.rows[x] -= db->rows[x];
    return Entourage(a.space_, std::move(out));
  }
  const Entourage bb = b.to_rep(Entourage::Rep::sparse);
  std::vector<PointPair> out;
  std::set_difference(a.sparse()->pairs.begin(), a.sparse()->pairs.end(),
                      bb.sparse()->pairs.begin(), bb.sparse()->pairs.end(),
                      std::back_inserter(out));
  Entourage::Sparse s{std::move(out)};
  return Entourage(a.space_, std::move(s));
}

bool is_subset(const Entourage& a, const Entourage& b) {
  return !a.first_pair_not_in(b).has_value();
}

std::string pair_to_string(const SpacePtr& space, PointPair p) {
  return "(" + (space ? space->label_of(p.first) : std::to_string(p.first)) +
         "," + (space ? space->label_of(p.second) : std::to_string(p.second)) +
         ")";
}

}  // namespace coarse
