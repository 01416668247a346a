#pragma once

#include <array>
#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

namespace chargedef {

/// Largest complex dimension n supported by the fixed-capacity MultiIndex.
inline constexpr int kMaxDimension = 4;

/// An n-tuple of naturals. Used for basis labels (m), particular Landau
/// levels (k) and monomial exponents. Entries may go negative transiently
/// during index arithmetic; `nonnegative()` tells whether the result is a
/// valid label.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int dim);
  MultiIndex(std::initializer_list<int> entries);
  static MultiIndex from_vector(const std::vector<int>& entries);

  /// e_j with a 1-based coordinate j.
  static MultiIndex unit(int dim, int j);

  int dim() const noexcept { return dim_; }
  int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  int& operator[](int i) { return entries_[static_cast<std::size_t>(i)]; }

  /// |m|
  int total() const noexcept;
  bool nonnegative() const noexcept;
  bool is_zero() const noexcept { return total() == 0 && nonnegative(); }

  MultiIndex operator+(const MultiIndex& other) const;
  MultiIndex operator-(const MultiIndex& other) const;

  std::vector<int> to_vector() const;
  /// "(1,0,2)"
  std::string to_string() const;

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

 private:
  int dim_ = 0;
  std::array<int, kMaxDimension> entries_{};
};

/// (total degree, lexicographic) ordering used by every basis in the library.
bool graded_less(const MultiIndex& a, const MultiIndex& b);

/// All multi-indices of the given dimension with |m| == degree, lexicographic.
std::vector<MultiIndex> multi_indices_of_degree(int dim, int degree);

/// All multi-indices with |m| <= max_degree in graded order.
std::vector<MultiIndex> graded_multi_indices(int dim, int max_degree);

}  // namespace chargedef
