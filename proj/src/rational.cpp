#include "coarse/rational.hpp"

namespace coarse {

std::string format_rational(const Rat& r) {
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rat parse_rational(const std::string& text) {
  auto fail = [&]() -> Rat {
    throw InputError("not a rational: \"" + text + "\"");
  };
  if (text.empty()) return fail();
  const auto slash = text.find('/');
  const std::string num_part = text.substr(0, slash);
  auto is_integer = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (!is_integer(num_part)) return fail();
  BigInt num(num_part);
  if (slash == std::string::npos) return Rat(num);
  const std::string den_part = text.substr(slash + 1);
  if (!is_integer(den_part) || den_part[0] == '-') return fail();
  BigInt den(den_part);
  if (den == 0) return fail();
  return Rat(num, den);
}

}  // namespace coarse
