#ifndef OPERT_BANDED_HPP
#define OPERT_BANDED_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "opert/error.hpp"
#include "opert/scalar.hpp"

namespace opert {

/// Square matrix with explicit band profile: entry (i, j) may be nonzero only
/// for -lower <= j - i <= upper. Stored by diagonals; diagonal d holds
/// size - |d| entries indexed by min(i, j).
template <Scalar T>
class BandedMatrix {
 public:
  BandedMatrix() = default;

  BandedMatrix(std::size_t size, std::size_t lower, std::size_t upper)
      : size_(size), lower_(clip(size, lower)), upper_(clip(size, upper)) {
    diags_.resize(lower_ + upper_ + 1);
    for (long d = -static_cast<long>(lower_); d <= static_cast<long>(upper_); ++d)
      diag(d).assign(size_ - static_cast<std::size_t>(d < 0 ? -d : d), T(0));
  }

  static BandedMatrix identity(std::size_t size) {
    BandedMatrix m(size, 0, 0);
    for (std::size_t i = 0; i < size; ++i) m.set(i, i, T(1));
    return m;
  }

  /// Band profile is inferred from the nonzero entries.
  static BandedMatrix from_dense(const std::vector<std::vector<T>>& a) {
    const std::size_t n = a.size();
    std::size_t lo = 0, up = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (a[i][j] != T(0)) {
          if (i > j) lo = std::max(lo, i - j);
          if (j > i) up = std::max(up, j - i);
        }
    BandedMatrix m(n, lo, up);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (a[i][j] != T(0)) m.set(i, j, a[i][j]);
    return m;
  }

  std::size_t size() const noexcept { return size_; }
  std::size_t lower() const noexcept { return lower_; }
  std::size_t upper() const noexcept { return upper_; }

  bool in_band(std::size_t i, std::size_t j) const noexcept {
    return i < size_ && j < size_ && (i <= j ? j - i <= upper_ : i - j <= lower_);
  }

  T at(std::size_t i, std::size_t j) const {
    if (i >= size_ || j >= size_) throw Error(ErrorKind::Precondition, "matrix index out of range");
    if (!in_band(i, j)) return T(0);
    return diag(offset(i, j))[std::min(i, j)];
  }

  /// Writing a nonzero outside the declared band is an error.
  void set(std::size_t i, std::size_t j, const T& v) {
    if (i >= size_ || j >= size_) throw Error(ErrorKind::Precondition, "matrix index out of range");
    if (!in_band(i, j)) {
      if (v == T(0)) return;
      throw Error(ErrorKind::BandProfileViolation,
                  "entry (" + std::to_string(i) + "," + std::to_string(j) + ") outside band", i);
    }
    diag(offset(i, j))[std::min(i, j)] = v;
  }

  /// Entries of diagonal d (j - i = d), top to bottom.
  const std::vector<T>& band(long d) const {
    if (d < -static_cast<long>(lower_) || d > static_cast<long>(upper_))
      throw Error(ErrorKind::Precondition, "diagonal " + std::to_string(d) + " not stored");
    return diag(d);
  }

  /// Leading m x m block.
  BandedMatrix leading(std::size_t m) const {
    if (m > size_) throw Error(ErrorKind::Precondition, "leading block larger than matrix");
    BandedMatrix r(m, lower_, upper_);
    for (long d = -static_cast<long>(r.lower_); d <= static_cast<long>(r.upper_); ++d) {
      auto& dst = r.diag(d);
      std::copy_n(diag(d).begin(), dst.size(), dst.begin());
    }
    return r;
  }

  /// Same entries with the band shrunk to the nonzero extent.
  BandedMatrix compacted() const { return from_dense(dense()); }

  /// True when every nonzero lies within the given profile.
  bool has_profile(std::size_t lower, std::size_t upper) const {
    for (long d = -static_cast<long>(lower_); d <= static_cast<long>(upper_); ++d) {
      if (d >= -static_cast<long>(lower) && d <= static_cast<long>(upper)) continue;
      for (const auto& x : diag(d))
        if (x != T(0)) return false;
    }
    return true;
  }

  std::vector<std::vector<T>> dense() const {
    std::vector<std::vector<T>> a(size_, std::vector<T>(size_, T(0)));
    for (long d = -static_cast<long>(lower_); d <= static_cast<long>(upper_); ++d) {
      const auto& v = diag(d);
      for (std::size_t k = 0; k < v.size(); ++k) {
        const std::size_t i = d >= 0 ? k : k + static_cast<std::size_t>(-d);
        const std::size_t j = d >= 0 ? k + static_cast<std::size_t>(d) : k;
        a[i][j] = v[k];
      }
    }
    return a;
  }

  BandedMatrix& operator+=(const BandedMatrix& o) { return *this = *this + o; }

  friend BandedMatrix operator+(const BandedMatrix& x, const BandedMatrix& y) {
    same_size(x, y);
    BandedMatrix r(x.size_, std::max(x.lower_, y.lower_), std::max(x.upper_, y.upper_));
    r.accumulate(x, T(1));
    r.accumulate(y, T(1));
    return r;
  }

  friend BandedMatrix operator-(const BandedMatrix& x, const BandedMatrix& y) {
    same_size(x, y);
    BandedMatrix r(x.size_, std::max(x.lower_, y.lower_), std::max(x.upper_, y.upper_));
    r.accumulate(x, T(1));
    r.accumulate(y, T(-1));
    return r;
  }

  friend BandedMatrix operator*(const T& c, const BandedMatrix& x) {
    BandedMatrix r = x;
    for (auto& d : r.diags_)
      for (auto& v : d) v *= c;
    return r;
  }

  /// Banded product; bandwidths add.
  friend BandedMatrix operator*(const BandedMatrix& x, const BandedMatrix& y) {
    same_size(x, y);
    const std::size_t n = x.size_;
    BandedMatrix r(n, x.lower_ + y.lower_, x.upper_ + y.upper_);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k_lo = i > x.lower_ ? i - x.lower_ : 0;
      const std::size_t k_hi = std::min(n - 1, i + x.upper_);
      for (std::size_t k = k_lo; k <= k_hi; ++k) {
        const T xik = x.at(i, k);
        if (xik == T(0)) continue;
        const std::size_t j_lo = k > y.lower_ ? k - y.lower_ : 0;
        const std::size_t j_hi = std::min(n - 1, k + y.upper_);
        for (std::size_t j = j_lo; j <= j_hi; ++j) {
          const T ykj = y.at(k, j);
          if (ykj == T(0)) continue;
          r.diag(offset(i, j))[std::min(i, j)] += xik * ykj;
        }
      }
    }
    return r;
  }

  /// x + c I
  BandedMatrix plus_identity(const T& c) const {
    BandedMatrix r = *this;
    for (auto& v : r.diag(0)) v += c;
    return r;
  }

  /// Entry-wise equality (band profiles may differ).
  friend bool operator==(const BandedMatrix& x, const BandedMatrix& y) {
    return x.size_ == y.size_ && x.dense() == y.dense();
  }

 private:
  static std::size_t clip(std::size_t size, std::size_t w) { return size == 0 ? 0 : std::min(w, size - 1); }

  static long offset(std::size_t i, std::size_t j) { return static_cast<long>(j) - static_cast<long>(i); }

  static void same_size(const BandedMatrix& x, const BandedMatrix& y) {
    if (x.size_ != y.size_) throw Error(ErrorKind::Precondition, "matrix sizes differ");
  }

  std::vector<T>& diag(long d) { return diags_[static_cast<std::size_t>(d + static_cast<long>(lower_))]; }
  const std::vector<T>& diag(long d) const { return diags_[static_cast<std::size_t>(d + static_cast<long>(lower_))]; }

  void accumulate(const BandedMatrix& x, const T& c) {
    for (long d = -static_cast<long>(x.lower_); d <= static_cast<long>(x.upper_); ++d) {
      auto& dst = diag(d);
      const auto& src = x.diag(d);
      for (std::size_t k = 0; k < src.size(); ++k) dst[k] += c * src[k];
    }
  }

  std::size_t size_ = 0;
  std::size_t lower_ = 0;
  std::size_t upper_ = 0;
  std::vector<std::vector<T>> diags_;
};

/// Largest |x_ij - y_ij| over the leading window x window block.
template <Scalar T>
T max_deviation(const BandedMatrix<T>& x, const BandedMatrix<T>& y, std::size_t window) {
  window = std::min({window, x.size(), y.size()});
  T worst(0);
  for (std::size_t i = 0; i < window; ++i)
    for (std::size_t j = 0; j < window; ++j) {
      const T d = abs(T(x.at(i, j) - y.at(i, j)));
      if (d > worst) worst = d;
    }
  return worst;
}

/// Entry-wise comparison on the leading window under the scalar tolerance.
template <Scalar T>
bool equal_on_window(const BandedMatrix<T>& x, const BandedMatrix<T>& y, std::size_t window, const Tolerance& tol = {}) {
  window = std::min({window, x.size(), y.size()});
  for (std::size_t i = 0; i < window; ++i)
    for (std::size_t j = 0; j < window; ++j)
      if (!equal(x.at(i, j), y.at(i, j), tol)) return false;
  return true;
}

/// X with X L = G for unit lower triangular banded L. The result is
/// compacted to its actual band.
template <Scalar T>
BandedMatrix<T> right_solve_unit_lower(const BandedMatrix<T>& G, const BandedMatrix<T>& L) {
  if (G.size() != L.size()) throw Error(ErrorKind::Precondition, "matrix sizes differ");
  if (L.upper() != 0 && !L.has_profile(L.lower(), 0))
    throw Error(ErrorKind::BandProfileViolation, "right_solve_unit_lower: matrix is not lower triangular");
  const std::size_t n = G.size();
  for (std::size_t i = 0; i < n; ++i)
    if (L.at(i, i) != T(1))
      throw Error(ErrorKind::BandProfileViolation, "right_solve_unit_lower: diagonal entry " + std::to_string(i) + " is not 1", i);
  std::vector<std::vector<T>> x = G.dense();
  // Column j of X L mixes columns k >= j of X; sweep from the right.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = n; j-- > 0;) {
      T acc = x[i][j];
      const std::size_t k_hi = std::min(n - 1, j + L.lower());
      for (std::size_t k = j + 1; k <= k_hi; ++k) acc -= x[i][k] * L.at(k, j);
      x[i][j] = acc;
    }
  return BandedMatrix<T>::from_dense(x);
}

}  // namespace opert

#endif  // OPERT_BANDED_HPP
