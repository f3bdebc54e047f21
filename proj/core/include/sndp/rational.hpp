#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>

namespace sndp {

// Exact rational arithmetic for the dual variables.  Integer vertex weights
// in, exact epsilons out; no floating point anywhere near a comparison.
using Rational = boost::multiprecision::cpp_rational;

inline std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << r;  // prints "p" or "p/q", already normalized
  return os.str();
}

inline double rational_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace sndp
