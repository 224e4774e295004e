#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace decaylab {

/// Exact rational scalar used for lattice algebra and piecewise-polynomial
/// coefficients. Every finite double converts exactly.
using Rat = boost::multiprecision::cpp_rational;
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;  // row-major

double to_double(const Rat& q);
bool is_integer(const Rat& q);

/// Parses "3", "-3/7" or "0.25". Decimal literals are read as exact decimal
/// fractions (0.1 -> 1/10), not as binary doubles.
Rat parse_rational(const std::string& text);

Rat dot(const RatVec& a, const RatVec& b);
Rat det(RatMat a);
int rank(RatMat a);

/// Solves a*x = b for square a; nullopt when a is singular.
std::optional<RatVec> solve_linear(RatMat a, RatVec b);

/// Basis of { x : a*x = 0 }.
std::vector<RatVec> nullspace(RatMat a);

RatMat matmul(const RatMat& a, const RatMat& b);
RatMat inverse(const RatMat& a);

}  // namespace decaylab
