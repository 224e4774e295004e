#include "decaylab/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>

namespace decaylab {

using boost::multiprecision::cpp_int;

double to_double(const Rat& q) { return q.convert_to<double>(); }

bool is_integer(const Rat& q) { return denominator(q) == 1; }

Rat parse_rational(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; }), s.end());
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    cpp_int num(s.substr(0, slash));
    cpp_int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rat(num, den);
  }
  auto dotpos = s.find('.');
  if (dotpos == std::string::npos) {
    auto epos = s.find_first_of("eE");
    if (epos == std::string::npos) return Rat(cpp_int(s));
    // integer mantissa with exponent
    cpp_int mant(s.substr(0, epos));
    long expo = std::stol(s.substr(epos + 1));
    Rat r(mant);
    Rat ten(10);
    for (long i = 0; i < std::labs(expo); ++i) r = expo > 0 ? r * ten : r / ten;
    return r;
  }
  // decimal literal, optionally with exponent
  auto epos = s.find_first_of("eE");
  std::string digits = s.substr(0, epos == std::string::npos ? s.size() : epos);
  long expo = epos == std::string::npos ? 0 : std::stol(s.substr(epos + 1));
  std::string intpart = digits.substr(0, dotpos);
  std::string fracpart = digits.substr(dotpos + 1);
  bool neg = !intpart.empty() && intpart[0] == '-';
  if (neg || (!intpart.empty() && intpart[0] == '+')) intpart = intpart.substr(1);
  cpp_int num = intpart.empty() ? cpp_int(0) : cpp_int(intpart);
  cpp_int den = 1;
  for (char c : fracpart) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad rational literal '" + text + "'");
    num = num * 10 + (c - '0');
    den *= 10;
  }
  Rat r(num, den);
  Rat ten(10);
  for (long i = 0; i < std::labs(expo); ++i) r = expo > 0 ? r * ten : r / ten;
  return neg ? -r : r;
}

Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

// Forward elimination with column pivoting; returns the pivot columns and
// leaves `a` in row echelon form. `detp` (when non-null) accumulates the
// determinant sign/product for square inputs.
std::vector<std::size_t> echelon(RatMat& a, Rat* detp) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<std::size_t> pivots;
  Rat detv = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      detv = -detv;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      Rat f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  if (detp) {
    if (pivots.size() != rows || rows != cols) {
      *detp = 0;
    } else {
      for (std::size_t i = 0; i < rows; ++i) detv *= a[i][pivots[i]];
      *detp = detv;
    }
  }
  return pivots;
}

}  // namespace

Rat det(RatMat a) {
  if (a.empty()) return Rat(1);
  if (a.size() != a[0].size()) throw std::invalid_argument("det: not square");
  Rat d;
  echelon(a, &d);
  return d;
}

int rank(RatMat a) {
  if (a.empty()) return 0;
  return static_cast<int>(echelon(a, nullptr).size());
}

std::optional<RatVec> solve_linear(RatMat a, RatVec b) {
  const std::size_t n = a.size();
  if (n == 0) return RatVec{};
  if (a[0].size() != n || b.size() != n) throw std::invalid_argument("solve_linear: shape mismatch");
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  auto pivots = echelon(a, nullptr);
  if (pivots.size() != n || pivots.back() >= n) return std::nullopt;
  RatVec x(n, Rat(0));
  for (std::size_t ii = n; ii-- > 0;) {
    Rat s = a[ii][n];
    for (std::size_t j = ii + 1; j < n; ++j) s -= a[ii][j] * x[j];
    x[ii] = s / a[ii][ii];
  }
  return x;
}

std::vector<RatVec> nullspace(RatMat a) {
  if (a.empty()) return {};
  const std::size_t cols = a[0].size();
  auto pivots = echelon(a, nullptr);
  // back-substitute to reduced form
  for (std::size_t r = pivots.size(); r-- > 0;) {
    std::size_t pc = pivots[r];
    Rat inv = 1 / a[r][pc];
    for (std::size_t j = pc; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < r; ++i) {
      Rat f = a[i][pc];
      if (f == 0) continue;
      for (std::size_t j = pc; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (std::size_t freec = 0; freec < cols; ++freec) {
    if (is_pivot[freec]) continue;
    RatVec v(cols, Rat(0));
    v[freec] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (pivots[r] < freec) v[pivots[r]] = -a[r][freec];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

RatMat matmul(const RatMat& a, const RatMat& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  RatMat c(n, RatVec(m, Rat(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

RatMat inverse(const RatMat& a) {
  const std::size_t n = a.size();
  RatMat aug = a;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? Rat(1) : Rat(0));
  }
  auto pivots = echelon(aug, nullptr);
  if (pivots.size() != n || pivots.back() >= n) throw std::invalid_argument("inverse: singular matrix");
  for (std::size_t r = n; r-- > 0;) {
    Rat inv = 1 / aug[r][r];
    for (std::size_t j = r; j < 2 * n; ++j) aug[r][j] *= inv;
    for (std::size_t i = 0; i < r; ++i) {
      Rat f = aug[i][r];
      if (f == 0) continue;
      for (std::size_t j = r; j < 2 * n; ++j) aug[i][j] -= f * aug[r][j];
    }
  }
  RatMat out(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

}  // namespace decaylab
