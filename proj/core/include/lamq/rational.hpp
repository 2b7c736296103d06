#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace lamq {

/// Exact rational probability; denominators are products of collection
/// cardinalities, so arbitrary precision is required.
using Rational = boost::multiprecision::cpp_rational;

}  // namespace lamq
