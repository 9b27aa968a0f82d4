#include "saw/text.hpp"

#include <cctype>
#include <stdexcept>

namespace saw {

namespace {

bool digits_only(const std::string& s, std::size_t from) {
  if (from >= s.size()) return false;
  for (std::size_t i = from; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

std::string format_int(const Int& v) { return v.get_str(); }

std::string format_rational(const Rat& v) {
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string format_point(const RationalPoint& p) {
  if (p.is_infinity()) return "inf";
  return format_rational(p.x()) + "," + format_rational(p.y());
}

Int parse_int(const std::string& s) {
  std::size_t from = !s.empty() && s[0] == '-' ? 1 : 0;
  if (!digits_only(s, from)) {
    throw std::invalid_argument("not a decimal integer: '" + s + "'");
  }
  return Int(s, 10);
}

Rat parse_rational(const std::string& s) {
  std::size_t slash = s.find('/');
  Int num, den;
  if (slash == std::string::npos) {
    num = parse_int(s);
    den = 1;
  } else {
    num = parse_int(s.substr(0, slash));
    den = parse_int(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  }
  Rat r(num, den);
  r.canonicalize();
  return r;
}

RationalPoint parse_point(const std::string& s) {
  if (s == "inf") return RationalPoint::infinity();
  std::size_t comma = s.find(',');
  if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos) {
    throw std::invalid_argument("point must be 'inf' or 'x,y': '" + s + "'");
  }
  return RationalPoint(parse_rational(s.substr(0, comma)),
                       parse_rational(s.substr(comma + 1)));
}

}  // namespace saw
