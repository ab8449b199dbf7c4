#pragma once

// Classical groups as (kind, n, p, Gram matrix), their Lie algebras, and base
// changes between equivalent forms.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modsl2/error.hpp"
#include "modsl2/field.hpp"
#include "modsl2/linalg.hpp"
#include "modsl2/matrix.hpp"
#include "modsl2/orbits.hpp"
#include "modsl2/sl2_module.hpp"

namespace modsl2 {

struct ClassicalGroup {
  GroupKind kind = GroupKind::GL;
  std::size_t n = 0;
  std::uint32_t p = 3;
  std::optional<FieldMatrix> gram;  ///< present iff kind is Sp, O or SO
};

/// Checks the Gram invariants: invertible, symmetric (O/SO) or alternating (Sp).
inline bool gram_valid(const ClassicalGroup& g) {
  if (!has_form(g.kind)) return !g.gram.has_value();
  if (!g.gram || g.gram->rows() != g.n || !g.gram->square() || g.gram->modulus() != g.p) return false;
  if (!is_invertible(*g.gram)) return false;
  return g.kind == GroupKind::Sp ? is_alternating(*g.gram) : is_symmetric(*g.gram);
}

/// Antidiagonal ones for O/SO; antidiagonal +1 (upper half) / -1 (lower half) for Sp.
inline ClassicalGroup standard_group(GroupKind kind, std::size_t n, std::uint32_t p) {
  require_modulus(p);
  if (kind == GroupKind::Sp && n % 2 != 0) throw Error(Errc::OddRankForSp, "Sp needs even rank");
  ClassicalGroup g{kind, n, p, std::nullopt};
  if (has_form(kind)) {
    FieldMatrix gram(n, n, p);
    for (std::size_t i = 0; i < n; ++i) {
      const long long sign = kind == GroupKind::Sp && 2 * i >= n ? -1 : 1;
      gram.set_signed(i, n - 1 - i, sign);
    }
    g.gram = std::move(gram);
  }
  return g;
}

inline bool in_lie_algebra(const ClassicalGroup& g, const FieldMatrix& x) {
  if (x.rows() != g.n || x.cols() != g.n) throw Error(Errc::ShapeMismatch, "element has the wrong size for this group");
  switch (g.kind) {
    case GroupKind::GL: return true;
    case GroupKind::SL: return x.trace().value() == 0;
    default: return (x.transpose() * *g.gram + *g.gram * x).is_zero();
  }
}

/// x^T G x = G (always true without a form).
inline bool preserves_form(const ClassicalGroup& g, const FieldMatrix& x) {
  if (!g.gram) return true;
  return x.transpose() * *g.gram * x == *g.gram;
}

/// A basis of Lie(G), as n x n matrices.
inline std::vector<FieldMatrix> lie_algebra_basis(const ClassicalGroup& g) {
  const std::size_t n = g.n;
  const std::uint32_t p = g.p;
  std::vector<FieldMatrix> out;
  auto unit = [&](std::size_t i, std::size_t j) {
    FieldMatrix m(n, n, p);
    m.set(i, j, 1);
    return m;
  };
  if (g.kind == GroupKind::GL) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out.push_back(unit(i, j));
    return out;
  }
  if (g.kind == GroupKind::SL) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) out.push_back(unit(i, j));
    for (std::size_t i = 0; i + 1 < n; ++i) out.push_back(unit(i, i) - unit(n - 1, n - 1));
    return out;
  }
  // x -> x^T G + G x on row-major vec(x).
  const FieldMatrix& gr = *g.gram;
  FieldMatrix op(n * n, n * n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = i * n + j;
      for (std::size_t k = 0; k < n; ++k) {
        if (gr(k, j)) op.set(row, k * n + i, add_mod(op(row, k * n + i), gr(k, j), p));
        if (gr(i, k)) op.set(row, k * n + j, add_mod(op(row, k * n + j), gr(i, k), p));
      }
    }
  for (auto& v : kernel(op)) out.push_back(unflatten(v, n, n, p));
  return out;
}

/// Expected dimension of Lie(G).
inline std::size_t lie_algebra_dimension(GroupKind kind, std::size_t n) {
  switch (kind) {
    case GroupKind::GL: return n * n;
    case GroupKind::SL: return n * n - 1;
    case GroupKind::Sp: return n * (n + 1) / 2;
    default: return n * (n - 1) / 2;
  }
}

// ---------------------------------------------------------------------------
// Square roots and normal forms of bilinear forms.

inline bool is_square_mod(std::uint32_t a, std::uint32_t p) {
  a %= p;
  return a == 0 || pow_mod(a, (p - 1) / 2, p) == 1;
}

/// Tonelli-Shanks; nullopt for non-squares.
inline std::optional<std::uint32_t> sqrt_mod(std::uint32_t a, std::uint32_t p) {
  a %= p;
  if (a == 0) return 0u;
  if (!is_square_mod(a, p)) return std::nullopt;
  std::uint32_t q = p - 1, s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::uint32_t z = 2;
  while (is_square_mod(z, p)) ++z;
  std::uint32_t m = s, c = pow_mod(z, q, p), t = pow_mod(a, q, p), r = pow_mod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint32_t i = 0, tt = t;
    while (tt != 1) {
      tt = mul_mod(tt, tt, p);
      ++i;
    }
    std::uint32_t b = c;
    for (std::uint32_t k = 0; k + i + 1 < m; ++k) b = mul_mod(b, b, p);
    m = i;
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    r = mul_mod(r, b, p);
  }
  return r;
}

inline std::uint32_t least_nonsquare(std::uint32_t p) {
  std::uint32_t z = 2;
  while (is_square_mod(z, p)) ++z;
  return z;
}

namespace detail {

inline std::uint32_t form_value(const FieldMatrix& g, const Vec& u, const Vec& v) {
  const Vec gv = g.apply(v);
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += static_cast<std::uint64_t>(u[i]) * gv[i];
  return static_cast<std::uint32_t>(s % g.modulus());
}

inline void axpy(Vec& y, std::uint32_t a, const Vec& x, std::uint32_t p) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = add_mod(y[i], mul_mod(a, x[i], p), p);
}

inline FieldMatrix columns_to_matrix(const std::vector<Vec>& cols, std::uint32_t p) {
  const std::size_t n = cols.size();
  FieldMatrix q(n, n, p);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) q.set(i, j, cols[j][i]);
  return q;
}

/// Q with Q^T G Q = diag(1, ..., 1, delta), delta in {1, least non-square}.
inline std::optional<FieldMatrix> symmetric_normal_basis(const FieldMatrix& g) {
  const std::uint32_t p = g.modulus();
  const std::size_t n = g.rows();
  std::vector<Vec> rest;
  for (std::size_t i = 0; i < n; ++i) {
    Vec v(n, 0);
    v[i] = 1;
    rest.push_back(std::move(v));
  }
  std::vector<Vec> done;
  std::vector<std::uint32_t> diag;
  while (!rest.empty()) {
    // Pick an anisotropic vector, or make one from a non-orthogonal pair.
    std::size_t pick = rest.size();
    for (std::size_t i = 0; i < rest.size() && pick == rest.size(); ++i)
      if (form_value(g, rest[i], rest[i])) pick = i;
    if (pick == rest.size()) {
      bool found = false;
      for (std::size_t i = 0; i < rest.size() && !found; ++i)
        for (std::size_t j = i + 1; j < rest.size() && !found; ++j)
          if (form_value(g, rest[i], rest[j])) {
            axpy(rest[i], 1, rest[j], p);
            pick = i;
            found = true;
          }
      if (!found) return std::nullopt;  // degenerate
    }
    Vec v = rest[pick];
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
    const std::uint32_t vv = form_value(g, v, v);
    const std::uint32_t inv = inv_mod(vv, p);
    for (auto& w : rest) {
      const std::uint32_t c = mul_mod(form_value(g, w, v), inv, p);
      if (c) axpy(w, neg_mod(c, p), v, p);
    }
    done.push_back(std::move(v));
    diag.push_back(vv);
  }
  // Scale each vector so its square is 1 or nu.
  const std::uint32_t nu = least_nonsquare(p);
  for (std::size_t i = 0; i < done.size(); ++i) {
    const bool sq = is_square_mod(diag[i], p);
    const std::uint32_t target = sq ? 1 : nu;
    const std::uint32_t ratio = mul_mod(diag[i], inv_mod(target, p), p);  // a square
    const std::uint32_t r = *sqrt_mod(ratio, p);
    const std::uint32_t s = inv_mod(r, p);
    for (auto& x : done[i]) x = mul_mod(x, s, p);
    diag[i] = target;
  }
  // Pair up non-squares: nu(a^2 + b^2) = 1 turns (nu, nu) into (1, 1).
  std::uint32_t a = 0, b = 0;
  {
    const std::uint32_t want = inv_mod(nu, p);
    for (std::uint32_t x = 0; x < p; ++x) {
      const std::uint32_t rem = sub_mod(want, mul_mod(x, x, p), p);
      if (auto y = sqrt_mod(rem, p)) {
        a = x;
        b = *y;
        break;
      }
    }
  }
  std::vector<std::size_t> odd;
  for (std::size_t i = 0; i < diag.size(); ++i)
    if (diag[i] != 1) odd.push_back(i);
  while (odd.size() >= 2) {
    const std::size_t i = odd[odd.size() - 2], j = odd.back();
    odd.resize(odd.size() - 2);
    Vec u = done[i], w = done[j];
    Vec u2(n, 0), w2(n, 0);
    axpy(u2, a, u, p);
    axpy(u2, b, w, p);
    axpy(w2, neg_mod(b, p), u, p);
    axpy(w2, a, w, p);
    done[i] = std::move(u2);
    done[j] = std::move(w2);
    diag[i] = diag[j] = 1;
  }
  // Move the remaining non-square slot (if any) to the end.
  if (!odd.empty()) {
    std::swap(done[odd[0]], done.back());
    std::swap(diag[odd[0]], diag.back());
  }
  return columns_to_matrix(done, p);
}

/// Q with Q^T G Q = [[0, I], [-I, 0]].
inline std::optional<FieldMatrix> symplectic_normal_basis(const FieldMatrix& g) {
  const std::uint32_t p = g.modulus();
  const std::size_t n = g.rows();
  if (n % 2) return std::nullopt;
  std::vector<Vec> rest;
  for (std::size_t i = 0; i < n; ++i) {
    Vec v(n, 0);
    v[i] = 1;
    rest.push_back(std::move(v));
  }
  std::vector<Vec> us, ws;
  while (!rest.empty()) {
    Vec u = rest.front();
    rest.erase(rest.begin());
    std::size_t j = 0;
    while (j < rest.size() && form_value(g, u, rest[j]) == 0) ++j;
    if (j == rest.size()) return std::nullopt;  // degenerate
    Vec w = rest[j];
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
    const std::uint32_t s = inv_mod(form_value(g, u, w), p);
    for (auto& x : w) x = mul_mod(x, s, p);  // (u, w) = 1
    for (auto& v : rest) {
      // v - (v, w) u + (v, u) w is orthogonal to both u and w.
      const std::uint32_t vw = form_value(g, v, w);
      const std::uint32_t vu = form_value(g, v, u);
      if (vw) axpy(v, neg_mod(vw, p), u, p);
      if (vu) axpy(v, vu, w, p);
    }
    us.push_back(std::move(u));
    ws.push_back(std::move(w));
  }
  std::vector<Vec> cols = us;
  cols.insert(cols.end(), ws.begin(), ws.end());
  return columns_to_matrix(cols, p);
}

}  // namespace detail

/// P with P^T G_from P = G_to, so x -> P^{-1} x P carries Lie(G_from) onto
/// Lie(G_to). Symmetric forms over GF(p) are classified by their discriminant,
/// so the transform is absent when the discriminant classes differ.
inline std::optional<FieldMatrix> congruence_transform(const FieldMatrix& from, const FieldMatrix& to) {
  if (from.rows() != to.rows() || from.modulus() != to.modulus()) return std::nullopt;
  std::optional<FieldMatrix> q1, q2;
  if (is_symmetric(from) && is_symmetric(to)) {
    q1 = detail::symmetric_normal_basis(from);
    q2 = detail::symmetric_normal_basis(to);
  } else if (is_alternating(from) && is_alternating(to)) {
    q1 = detail::symplectic_normal_basis(from);
    q2 = detail::symplectic_normal_basis(to);
  } else {
    return std::nullopt;
  }
  if (!q1 || !q2) return std::nullopt;
  if (!(q1->transpose() * from * *q1 == q2->transpose() * to * *q2)) return std::nullopt;
  return *q1 * inverse(*q2);
}

}  // namespace modsl2
