#pragma once

// Complete exponential Bell polynomials B_p(x_1, ..., x_p).
//
// Two independent evaluators: the generating-function recurrence
//   B_{p+1} = sum_{i=0}^{p} C(p, i) B_{p-i} x_{i+1}
// and the determinant of the upper Hessenberg matrix A_p with
//   a_{i,j} = C(p-i, j-i) x_{j-i+1} (i <= j),  a_{i,i-1} = -1.
// Both are templates over the value type so they run on double and on exact
// integers (boost::multiprecision::cpp_int) alike.
//
// These are the literal forms used to cross-check the probability engine;
// production probabilities come from the recursion in compound.hpp, which
// never leaves [0, 1].

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "prbdim/error.hpp"

namespace prbdim::bell {

// Floating-point evaluation is refused beyond this order.
inline constexpr std::size_t kMaxFloatingOrder = 25;

namespace detail {

template <class T>
void check_order(std::size_t p) {
  if constexpr (std::is_floating_point_v<T>) {
    if (p > kMaxFloatingOrder) {
      throw RangeError("bell: order " + std::to_string(p) +
                       " exceeds the floating-point limit of " +
                       std::to_string(kMaxFloatingOrder));
    }
  }
}

template <class T>
T checked(T value, const char* where) {
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) throw RangeError(std::string(where) + ": overflow");
  }
  return value;
}

// Rows 0..p of Pascal's triangle in T.
template <class T>
std::vector<std::vector<T>> pascal(std::size_t p) {
  std::vector<std::vector<T>> rows(p + 1);
  for (std::size_t n = 0; n <= p; ++n) {
    rows[n].assign(n + 1, T(1));
    for (std::size_t k = 1; k < n; ++k) rows[n][k] = rows[n - 1][k - 1] + rows[n - 1][k];
  }
  return rows;
}

template <class T>
T determinant(std::vector<std::vector<T>> a) {
  const std::size_t n = a.size();
  if (n == 0) return T(1);
  if constexpr (std::is_floating_point_v<T>) {
    // Gaussian elimination with partial pivoting.
    T det = T(1);
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t pivot = k;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (std::abs(a[i][k]) > std::abs(a[pivot][k])) pivot = i;
      }
      if (a[pivot][k] == T(0)) return T(0);
      if (pivot != k) {
        std::swap(a[pivot], a[k]);
        det = -det;
      }
      det *= a[k][k];
      for (std::size_t i = k + 1; i < n; ++i) {
        const T f = a[i][k] / a[k][k];
        for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      }
    }
    return det;
  } else {
    // Bareiss fraction-free elimination; every division is exact.
    T sign = T(1);
    T prev = T(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (a[k][k] == T(0)) {
        std::size_t swap_row = k + 1;
        while (swap_row < n && a[swap_row][k] == T(0)) ++swap_row;
        if (swap_row == n) return T(0);
        std::swap(a[k], a[swap_row]);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        }
      }
      prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
  }
}

}  // namespace detail

// B_0 .. B_p for p = x.size(); element k is B_k(x_1, ..., x_k).
template <class T>
std::vector<T> complete_sequence(std::span<const T> x) {
  const std::size_t p = x.size();
  detail::check_order<T>(p);
  const auto binom = detail::pascal<T>(p);
  std::vector<T> b(p + 1, T(0));
  b[0] = T(1);
  for (std::size_t m = 0; m < p; ++m) {
    T acc = T(0);
    for (std::size_t i = 0; i <= m; ++i) acc += binom[m][i] * b[m - i] * x[i];
    b[m + 1] = detail::checked(acc, "bell_complete");
  }
  return b;
}

// B_p(x_1..x_p) by the recurrence.
template <class T>
T complete(std::span<const T> x) {
  return complete_sequence<T>(x).back();
}

// B_p(x_1..x_p) as det(A_p).
template <class T>
T determinant(std::span<const T> x) {
  const std::size_t p = x.size();
  detail::check_order<T>(p);
  if (p == 0) return T(1);
  const auto binom = detail::pascal<T>(p);
  std::vector<std::vector<T>> a(p, std::vector<T>(p, T(0)));
  for (std::size_t i = 1; i <= p; ++i) {
    for (std::size_t j = i; j <= p; ++j) a[i - 1][j - 1] = binom[p - i][j - i] * x[j - i];
    if (i >= 2) a[i - 1][i - 2] = T(-1);
  }
  return detail::checked(detail::determinant(std::move(a)), "bell_determinant");
}

}  // namespace prbdim::bell
