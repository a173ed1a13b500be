#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace coarse {

using PointId = int;

// Structurally unusable input: mismatched spaces, violated construction
// preconditions, malformed documents. Content failures of checks are
// reported through Verdict instead of thrown.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

struct Violation {
  std::string rule;
  std::string detail;
};

// Outcome of a verification. Empty means the property holds; otherwise one
// entry per failed clause, each carrying its first witness in canonical
// scan order.
struct Verdict {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string rule, std::string detail) {
    violations.push_back({std::move(rule), std::move(detail)});
  }
  void absorb(const Verdict& other) {
    violations.insert(violations.end(), other.violations.begin(),
                      other.violations.end());
  }
  std::string summary() const {
    if (ok()) return "ok";
    std::string s;
    for (const auto& v : violations) {
      if (!s.empty()) s += "; ";
      s += v.rule + ": " + v.detail;
    }
    return s;
  }
};

// Value plus a degeneracy flag, for operations whose edge cases are defined
// but worth surfacing (radius of an empty relation, distance to an empty set).
template <typename T>
struct Flagged {
  T value;
  bool degenerate = false;
};

// Natural number extended with infinity. Infinity is a first-class value
// with absorbing arithmetic, not a sentinel the caller has to know about.
class ExtNat {
 public:
  constexpr ExtNat() : raw_(0) {}

  static constexpr ExtNat finite(std::uint64_t v) {
    assert(v != kInf);
    ExtNat e;
    e.raw_ = v;
    return e;
  }
  static constexpr ExtNat infinity() {
    ExtNat e;
    e.raw_ = kInf;
    return e;
  }

  bool is_infinite() const { return raw_ == kInf; }
  std::uint64_t value() const {
    if (is_infinite()) throw std::logic_error("value() on infinite ExtNat");
    return raw_;
  }

  friend ExtNat operator+(ExtNat a, ExtNat b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return finite(a.raw_ + b.raw_);
  }
  friend bool operator==(ExtNat a, ExtNat b) { return a.raw_ == b.raw_; }
  friend bool operator!=(ExtNat a, ExtNat b) { return a.raw_ != b.raw_; }
  // infinity compares greater than every finite value
  friend bool operator<(ExtNat a, ExtNat b) { return a.raw_ < b.raw_; }
  friend bool operator<=(ExtNat a, ExtNat b) { return a.raw_ <= b.raw_; }
  friend bool operator>(ExtNat a, ExtNat b) { return a.raw_ > b.raw_; }
  friend bool operator>=(ExtNat a, ExtNat b) { return a.raw_ >= b.raw_; }

  friend ExtNat min(ExtNat a, ExtNat b) { return a <= b ? a : b; }

  std::string to_string() const {
    return is_infinite() ? std::string("inf") : std::to_string(raw_);
  }

 private:
  static constexpr std::uint64_t kInf =
      std::numeric_limits<std::uint64_t>::max();
  std::uint64_t raw_;
};

}  // namespace coarse
