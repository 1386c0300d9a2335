#ifndef CDGA_RATIONAL_HPP
#define CDGA_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <string>
#include <string_view>

namespace cdga {

// Expression templates are disabled so the scalar composes cleanly with Eigen.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

inline bool is_zero(const Rational& q) { return q == 0; }

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Accepts "p" or "p/q" with an optional leading sign. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

}  // namespace cdga

#endif  // CDGA_RATIONAL_HPP
