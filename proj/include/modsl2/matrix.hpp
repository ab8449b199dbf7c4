#pragma once

// Dense matrices over GF(p). Values are plain data; arithmetic returns fresh
// matrices and never mutates its operands.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "modsl2/error.hpp"
#include "modsl2/field.hpp"

namespace modsl2 {

using Vec = std::vector<std::uint32_t>;

class FieldMatrix {
 public:
  FieldMatrix() = default;

  FieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
      : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
    require_modulus(p);
  }

  FieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t p, Vec data)
      : rows_(rows), cols_(cols), p_(p), data_(std::move(data)) {
    require_modulus(p);
    if (data_.size() != rows * cols) throw Error(Errc::ShapeMismatch, "entry count does not match shape");
    for (auto& v : data_) v %= p;
  }

  static FieldMatrix zero(std::size_t rows, std::size_t cols, std::uint32_t p) { return {rows, cols, p}; }
  static FieldMatrix zero(std::size_t n, std::uint32_t p) { return {n, n, p}; }

  static FieldMatrix identity(std::size_t n, std::uint32_t p) {
    FieldMatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  /// Integer entries, reduced mod p (negative values allowed).
  static FieldMatrix from_rows(const std::vector<std::vector<long long>>& rows, std::uint32_t p) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows[0].size() : 0;
    FieldMatrix m(r, c, p);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw Error(Errc::ShapeMismatch, "ragged row list");
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, reduce(rows[i][j], p));
    }
    return m;
  }

  static FieldMatrix diagonal(const std::vector<long long>& d, std::uint32_t p) {
    FieldMatrix m(d.size(), d.size(), p);
    for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, reduce(d[i], p));
    return m;
  }

  /// Nilpotent Jordan block: ones on the superdiagonal, so e_i maps to e_{i-1}.
  static FieldMatrix jordan_block(std::size_t k, std::uint32_t p) {
    FieldMatrix m(k, k, p);
    for (std::size_t i = 1; i < k; ++i) m.set(i - 1, i, 1);
    return m;
  }

  static FieldMatrix block_diagonal(std::span<const FieldMatrix> blocks, std::uint32_t p) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
      if (b.modulus() != p) throw Error(Errc::ModulusMismatch, "block over a different prime");
      r += b.rows();
      c += b.cols();
    }
    FieldMatrix m(r, c, p);
    std::size_t ro = 0, co = 0;
    for (const auto& b : blocks) {
      m.paste(ro, co, b);
      ro += b.rows();
      co += b.cols();
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t modulus() const { return p_; }
  bool square() const { return rows_ == cols_; }
  const Vec& data() const { return data_; }

  std::uint32_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Fp at(std::size_t i, std::size_t j) const { return Fp((*this)(i, j), p_); }

  // Builders. Used while assembling a value; shared matrices are never mutated.
  void set(std::size_t i, std::size_t j, std::uint32_t v) { data_[i * cols_ + j] = v % p_; }
  void set_signed(std::size_t i, std::size_t j, long long v) { data_[i * cols_ + j] = reduce(v, p_); }
  void paste(std::size_t ro, std::size_t co, const FieldMatrix& b) {
    if (ro + b.rows() > rows_ || co + b.cols() > cols_) throw Error(Errc::ShapeMismatch, "paste out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) data_[(ro + i) * cols_ + co + j] = b(i, j);
  }

  FieldMatrix block(std::size_t ro, std::size_t co, std::size_t r, std::size_t c) const {
    FieldMatrix m(r, c, p_);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.data_[i * c + j] = (*this)(ro + i, co + j);
    return m;
  }

  FieldMatrix transpose() const {
    FieldMatrix t(cols_, rows_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (auto v : data_)
      if (v) return false;
    return true;
  }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j && (*this)(i, j)) return false;
    return true;
  }

  Fp trace() const {
    std::uint32_t t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t = add_mod(t, (*this)(i, i), p_);
    return Fp(t, p_);
  }

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.p_ == b.p_ && a.data_ == b.data_;
  }

  friend FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b) {
    same_shape(a, b);
    FieldMatrix r(a);
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = add_mod(a.data_[k], b.data_[k], a.p_);
    return r;
  }

  friend FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b) {
    same_shape(a, b);
    FieldMatrix r(a);
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = sub_mod(a.data_[k], b.data_[k], a.p_);
    return r;
  }

  FieldMatrix operator-() const {
    FieldMatrix r(*this);
    for (auto& v : r.data_) v = neg_mod(v, p_);
    return r;
  }

  FieldMatrix scaled(std::uint32_t s) const {
    FieldMatrix r(*this);
    s %= p_;
    for (auto& v : r.data_) v = mul_mod(v, s, p_);
    return r;
  }
  friend FieldMatrix operator*(Fp s, const FieldMatrix& a) {
    if (s.modulus() != a.p_) throw Error(Errc::ModulusMismatch, "scalar over a different prime");
    return a.scaled(s.value());
  }
  FieldMatrix scaled_signed(long long s) const { return scaled(reduce(s, p_)); }

  friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.p_ != b.p_) throw Error(Errc::ModulusMismatch, "matrices over different primes");
    if (a.cols_ != b.rows_) throw Error(Errc::ShapeMismatch, "inner dimensions differ");
    FieldMatrix r(a.rows_, b.cols_, a.p_);
    std::vector<std::uint64_t> acc(b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const std::uint64_t aik = a.data_[i * a.cols_ + k];
        if (!aik) continue;
        const std::uint32_t* brow = &b.data_[k * b.cols_];
        for (std::size_t j = 0; j < b.cols_; ++j) acc[j] += aik * brow[j];
        if ((k & 0xff) == 0xff)
          for (auto& x : acc) x %= a.p_;
      }
      for (std::size_t j = 0; j < b.cols_; ++j) r.data_[i * b.cols_ + j] = static_cast<std::uint32_t>(acc[j] % a.p_);
    }
    return r;
  }

  Vec apply(const Vec& v) const {
    if (v.size() != cols_) throw Error(Errc::DimensionMismatch, "vector length does not match columns");
    Vec out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < cols_; ++j) s += static_cast<std::uint64_t>((*this)(i, j)) * v[j];
      out[i] = static_cast<std::uint32_t>(s % p_);
    }
    return out;
  }

  FieldMatrix pow(std::uint64_t e) const {
    if (!square()) throw Error(Errc::ShapeMismatch, "power of a non-square matrix");
    FieldMatrix result = identity(rows_, p_);
    FieldMatrix base = *this;
    while (e) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
    }
    os << "]";
    return os.str();
  }

 private:
  static void same_shape(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.p_ != b.p_) throw Error(Errc::ModulusMismatch, "matrices over different primes");
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(Errc::ShapeMismatch, "shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint32_t p_ = 3;
  Vec data_;
};

/// Lie bracket [a, b] = ab - ba.
inline FieldMatrix bracket(const FieldMatrix& a, const FieldMatrix& b) { return a * b - b * a; }

inline Vec flatten(const FieldMatrix& m) { return m.data(); }

inline FieldMatrix unflatten(const Vec& v, std::size_t rows, std::size_t cols, std::uint32_t p) {
  return FieldMatrix(rows, cols, p, v);
}

}  // namespace modsl2
