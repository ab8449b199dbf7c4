#pragma once

// Gaussian elimination over GF(p) and the operations layered on it: rank,
// kernels, affine solution sets, inverses, Jordan types of nilpotent matrices
// and truncated exponentials.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "modsl2/error.hpp"
#include "modsl2/field.hpp"
#include "modsl2/matrix.hpp"
#include "modsl2/partition.hpp"

namespace modsl2 {

struct EchelonForm {
  FieldMatrix reduced;               ///< reduced row echelon form
  std::vector<std::size_t> pivots;   ///< pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form. `ncols_to_pivot` limits pivot search to the first
/// columns (used for augmented systems); default is every column.
inline EchelonForm row_reduce(const FieldMatrix& m, std::size_t ncols_to_pivot = std::numeric_limits<std::size_t>::max()) {
  const std::uint32_t p = m.modulus();
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::size_t limit = std::min(cols, ncols_to_pivot);
  Vec a = m.data();
  const auto& inv = inverse_table(p);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    const std::uint32_t s = inv[a[r * cols + c]];
    for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = mul_mod(a[r * cols + j], s, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const std::uint32_t f = a[i * cols + c];
      if (!f) continue;
      const std::uint32_t nf = p - f;
      for (std::size_t j = c; j < cols; ++j) {
        const std::uint32_t rv = a[r * cols + j];
        if (rv) a[i * cols + j] = static_cast<std::uint32_t>((a[i * cols + j] + static_cast<std::uint64_t>(nf) * rv) % p);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {FieldMatrix(rows, cols, p, std::move(a)), std::move(pivots)};
}

inline std::size_t rank(const FieldMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return row_reduce(m).rank();
}

/// Basis of {x : m x = 0}, one vector per free column.
inline std::vector<Vec> kernel(const FieldMatrix& m) {
  const std::uint32_t p = m.modulus();
  const std::size_t cols = m.cols();
  std::vector<Vec> basis;
  if (m.rows() == 0) {
    for (std::size_t j = 0; j < cols; ++j) {
      Vec v(cols, 0);
      v[j] = 1;
      basis.push_back(std::move(v));
    }
    return basis;
  }
  const auto ech = row_reduce(m);
  std::vector<char> is_pivot(cols, 0);
  for (auto c : ech.pivots) is_pivot[c] = 1;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = neg_mod(ech.reduced(r, free), p);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// base^exp, saturating at UINT64_MAX.
inline std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base && n > std::numeric_limits<std::uint64_t>::max() / base) return std::numeric_limits<std::uint64_t>::max();
    n *= base;
  }
  return n;
}

/// particular + span(directions). Points are indexed by their base-p
/// coordinates in the direction basis.
struct AffineSpace {
  Vec particular;
  std::vector<Vec> directions;
  std::uint32_t p = 3;

  std::size_t dimension() const { return directions.size(); }
  std::size_t ambient() const { return particular.size(); }

  /// p^dimension, saturating at UINT64_MAX.
  std::uint64_t point_count() const { return saturating_pow(p, directions.size()); }

  Vec point(std::uint64_t index) const {
    Vec x = particular;
    for (const auto& d : directions) {
      const std::uint32_t c = static_cast<std::uint32_t>(index % p);
      index /= p;
      if (!c) continue;
      for (std::size_t k = 0; k < x.size(); ++k)
        if (d[k]) x[k] = add_mod(x[k], mul_mod(c, d[k], p), p);
    }
    return x;
  }

  Vec point_from_coords(const Vec& coords) const {
    Vec x = particular;
    for (std::size_t i = 0; i < directions.size(); ++i) {
      const std::uint32_t c = coords[i] % p;
      if (!c) continue;
      for (std::size_t k = 0; k < x.size(); ++k) x[k] = add_mod(x[k], mul_mod(c, directions[i][k], p), p);
    }
    return x;
  }

  bool contains(const Vec& x) const;
};

/// Solution set of a x = b; nullopt when inconsistent.
inline std::optional<AffineSpace> solve_affine(const FieldMatrix& a, const Vec& b) {
  if (a.rows() != b.size()) throw Error(Errc::DimensionMismatch, "right-hand side length differs from row count");
  const std::uint32_t p = a.modulus();
  const std::size_t rows = a.rows(), cols = a.cols();
  FieldMatrix aug(rows, cols + 1, p);
  aug.paste(0, 0, a);
  for (std::size_t i = 0; i < rows; ++i) aug.set(i, cols, b[i]);
  const auto ech = row_reduce(aug, cols);
  for (std::size_t i = ech.rank(); i < rows; ++i)
    if (ech.reduced(i, cols) != 0) return std::nullopt;
  AffineSpace s;
  s.p = p;
  s.particular.assign(cols, 0);
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) s.particular[ech.pivots[r]] = ech.reduced(r, cols);
  s.directions = kernel(a);
  return s;
}

inline bool AffineSpace::contains(const Vec& x) const {
  if (x.size() != particular.size()) return false;
  const std::size_t n = x.size();
  FieldMatrix m(n, directions.size(), p);
  for (std::size_t j = 0; j < directions.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m.set(i, j, directions[j][i]);
  Vec rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = sub_mod(x[i], particular[i], p);
  if (directions.empty()) {
    for (auto v : rhs)
      if (v) return false;
    return true;
  }
  return solve_affine(m, rhs).has_value();
}

/// Lexicographically least point (coordinates compared as integers in [0, p)).
inline Vec lex_least_point(const AffineSpace& s) {
  if (s.directions.empty()) return s.particular;
  const std::size_t n = s.ambient();
  FieldMatrix d(s.directions.size(), n, s.p);
  for (std::size_t i = 0; i < s.directions.size(); ++i)
    for (std::size_t k = 0; k < n; ++k) d.set(i, k, s.directions[i][k]);
  const auto ech = row_reduce(d);
  Vec x = s.particular;
  for (std::size_t r = 0; r < ech.rank(); ++r) {
    const std::uint32_t c = x[ech.pivots[r]];
    if (!c) continue;
    for (std::size_t k = 0; k < n; ++k) x[k] = sub_mod(x[k], mul_mod(c, ech.reduced(r, k), s.p), s.p);
  }
  return x;
}

inline FieldMatrix inverse(const FieldMatrix& m) {
  if (!m.square()) throw Error(Errc::ShapeMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  FieldMatrix aug(n, 2 * n, m.modulus());
  aug.paste(0, 0, m);
  aug.paste(0, n, FieldMatrix::identity(n, m.modulus()));
  const auto ech = row_reduce(aug, n);
  if (ech.rank() < n) throw Error(Errc::NotInvertible, "matrix is singular");
  return ech.reduced.block(0, n, n, n);
}

inline bool is_invertible(const FieldMatrix& m) { return m.square() && rank(m) == m.rows(); }

inline Fp determinant(const FieldMatrix& m) {
  if (!m.square()) throw Error(Errc::ShapeMismatch, "determinant of a non-square matrix");
  const std::uint32_t p = m.modulus();
  const std::size_t n = m.rows();
  Vec a = m.data();
  std::uint32_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv * n + c] == 0) ++piv;
    if (piv == n) return Fp(0, p);
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[c * n + j]);
      det = neg_mod(det, p);
    }
    det = mul_mod(det, a[c * n + c], p);
    const std::uint32_t s = inv_mod(a[c * n + c], p);
    for (std::size_t i = c + 1; i < n; ++i) {
      const std::uint32_t f = mul_mod(a[i * n + c], s, p);
      if (!f) continue;
      for (std::size_t j = c; j < n; ++j) a[i * n + j] = sub_mod(a[i * n + j], mul_mod(f, a[c * n + j], p), p);
    }
  }
  return Fp(det, p);
}

/// x^n = 0, checked by squaring until the exponent reaches n.
inline bool is_nilpotent(const FieldMatrix& x) {
  if (!x.square()) throw Error(Errc::ShapeMismatch, "nilpotency of a non-square matrix");
  FieldMatrix y = x;
  for (std::size_t e = 1; e < x.rows(); e *= 2) {
    if (y.is_zero()) return true;
    y = y * y;
  }
  return y.is_zero();
}

/// Jordan type from the rank sequence r_i = rank(x^i):
/// m_i = r_{i-1} - 2 r_i + r_{i+1}.
inline Partition jordan_type(const FieldMatrix& x) {
  if (!is_nilpotent(x)) throw Error(Errc::NotNilpotent, "jordan_type needs a nilpotent matrix");
  const std::size_t n = x.rows();
  std::vector<long long> r{static_cast<long long>(n)};
  FieldMatrix pw = FieldMatrix::identity(n, x.modulus());
  while (r.back() > 0) {
    pw = pw * x;
    r.push_back(static_cast<long long>(rank(pw)));
  }
  r.push_back(0);
  std::vector<int> parts;
  for (std::size_t i = r.size() - 2; i >= 1; --i) {
    const long long m = r[i - 1] - 2 * r[i] + r[i + 1];
    for (long long k = 0; k < m; ++k) parts.push_back(static_cast<int>(i));
  }
  return Partition(std::move(parts));
}

/// exp(s x) = sum_{i<p} (s x)^i / i!, defined when x^p = 0.
inline FieldMatrix nilpotent_exp(const FieldMatrix& x, Fp s) {
  const std::uint32_t p = x.modulus();
  if (s.modulus() != p) throw Error(Errc::ModulusMismatch, "scalar over a different prime");
  if (!x.pow(p).is_zero()) throw Error(Errc::PowerNotZero, "x^p is nonzero");
  const std::size_t n = x.rows();
  FieldMatrix result = FieldMatrix::identity(n, p);
  FieldMatrix term = FieldMatrix::identity(n, p);
  for (std::uint32_t i = 1; i < p; ++i) {
    // term = (s x)^i / i!
    term = (term * x).scaled(mul_mod(s.value(), inv_mod(i, p), p));
    if (term.is_zero()) break;
    result = result + term;
  }
  return result;
}

/// g x g^{-1}.
inline FieldMatrix conjugate(const FieldMatrix& g, const FieldMatrix& x) {
  if (g.rows() != x.rows() || !g.square() || !x.square()) throw Error(Errc::ShapeMismatch, "shapes differ");
  return g * x * inverse(g);
}

/// Matrix of phi -> a phi - phi b acting on row-major vec(phi), phi of shape
/// a.rows() x b.rows().
inline FieldMatrix sylvester_operator(const FieldMatrix& a, const FieldMatrix& b) {
  const std::uint32_t p = a.modulus();
  const std::size_t m = a.rows(), n = b.rows();
  FieldMatrix op(m * n, m * n, p);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = i * n + j;
      for (std::size_t k = 0; k < m; ++k)
        if (a(i, k)) op.set(row, k * n + j, add_mod(op(row, k * n + j), a(i, k), p));
      for (std::size_t k = 0; k < n; ++k)
        if (b(k, j)) op.set(row, i * n + k, sub_mod(op(row, i * n + k), b(k, j), p));
    }
  return op;
}

/// Rows of all blocks stacked top to bottom; blocks share the column count.
inline FieldMatrix vstack(std::span<const FieldMatrix> blocks) {
  if (blocks.empty()) throw Error(Errc::ShapeMismatch, "nothing to stack");
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != blocks[0].cols()) throw Error(Errc::ShapeMismatch, "column counts differ");
    rows += b.rows();
  }
  FieldMatrix out(rows, blocks[0].cols(), blocks[0].modulus());
  std::size_t r = 0;
  for (const auto& b : blocks) {
    out.paste(r, 0, b);
    r += b.rows();
  }
  return out;
}

/// Basis vectors of the row span, in reduced echelon form.
inline std::vector<Vec> row_space_basis(const FieldMatrix& m) {
  const auto ech = row_reduce(m);
  std::vector<Vec> out;
  for (std::size_t r = 0; r < ech.rank(); ++r) {
    Vec v(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) v[c] = ech.reduced(r, c);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace modsl2
