#pragma once

#include <boost/rational.hpp>

#include <string>

namespace tfano {

using Rational = boost::rational<long long>;

inline std::string to_string(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

} // namespace tfano
