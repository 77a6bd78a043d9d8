#pragma once

// Integer matrix normal forms over Eigen dense storage.
//
// All routines are templated on a signed integer scalar and work by
// elementary row/column operations, so the transforms they return are
// unimodular by construction.

#include <algorithm>
#include <cstdlib>
#include <utility>

#include "toric/types.hpp"

namespace toric {

template <typename Scalar>
Scalar abs_value(const Scalar& a) {
  return a < Scalar(0) ? Scalar(-a) : a;
}

/// Floor division for signed integers.
template <typename Scalar>
Scalar floor_div(const Scalar& a, const Scalar& b) {
  Scalar q = a / b;
  if ((a % b != Scalar(0)) && ((a < Scalar(0)) != (b < Scalar(0)))) q -= Scalar(1);
  return q;
}

/// U * M * V == D, D diagonal with D(0,0) | D(1,1) | ... and nonnegative entries.
template <typename Scalar>
struct SmithForm {
  Matrix<Scalar> U;
  Matrix<Scalar> D;
  Matrix<Scalar> V;
  Eigen::Index rank = 0;
};

template <typename Scalar>
SmithForm<Scalar> smith_normal_form(const Matrix<Scalar>& M) {
  const Eigen::Index m = M.rows();
  const Eigen::Index n = M.cols();
  SmithForm<Scalar> out;
  out.D = M;
  out.U = Matrix<Scalar>::Identity(m, m);
  out.V = Matrix<Scalar>::Identity(n, n);
  auto& D = out.D;
  auto& U = out.U;
  auto& V = out.V;

  auto row_axpy = [&](Eigen::Index dst, Eigen::Index src, Scalar k) {
    D.row(dst) += k * D.row(src);
    U.row(dst) += k * U.row(src);
  };
  auto col_axpy = [&](Eigen::Index dst, Eigen::Index src, Scalar k) {
    D.col(dst) += k * D.col(src);
    V.col(dst) += k * V.col(src);
  };
  auto swap_rows = [&](Eigen::Index a, Eigen::Index b) {
    if (a == b) return;
    D.row(a).swap(D.row(b));
    U.row(a).swap(U.row(b));
  };
  auto swap_cols = [&](Eigen::Index a, Eigen::Index b) {
    if (a == b) return;
    D.col(a).swap(D.col(b));
    V.col(a).swap(V.col(b));
  };

  Eigen::Index t = 0;
  for (; t < std::min(m, n); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    Eigen::Index pi = -1, pj = -1;
    for (Eigen::Index i = t; i < m; ++i) {
      for (Eigen::Index j = t; j < n; ++j) {
        if (D(i, j) != Scalar(0) && (pi < 0 || abs_value(D(i, j)) < abs_value(D(pi, pj)))) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    for (;;) {
      bool dirty = false;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        while (D(i, t) != Scalar(0)) {
          row_axpy(i, t, Scalar(-(D(i, t) / D(t, t))));
          if (D(i, t) != Scalar(0)) {
            swap_rows(i, t);
            dirty = true;
          }
        }
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        while (D(t, j) != Scalar(0)) {
          col_axpy(j, t, Scalar(-(D(t, j) / D(t, t))));
          if (D(t, j) != Scalar(0)) {
            swap_cols(j, t);
            dirty = true;
          }
        }
      }
      if (dirty) continue;
      bool clear = true;
      for (Eigen::Index i = t + 1; i < m && clear; ++i) clear = D(i, t) == Scalar(0);
      for (Eigen::Index j = t + 1; j < n && clear; ++j) clear = D(t, j) == Scalar(0);
      if (!clear) continue;

      // Divisibility: fold an offending row into the pivot row and redo.
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < m && bad < 0; ++i) {
        for (Eigen::Index j = t + 1; j < n; ++j) {
          if (D(i, j) % D(t, t) != Scalar(0)) {
            bad = i;
            break;
          }
        }
      }
      if (bad < 0) break;
      row_axpy(t, bad, Scalar(1));
    }
    if (D(t, t) < Scalar(0)) {
      D.row(t) *= Scalar(-1);
      U.row(t) *= Scalar(-1);
    }
  }
  out.rank = t;
  return out;
}

/// Row-style Hermite normal form: pivots positive, entries above a pivot
/// reduced into [0, pivot), zero rows last.
template <typename Scalar>
Matrix<Scalar> hermite_normal_form(Matrix<Scalar> H) {
  const Eigen::Index m = H.rows();
  const Eigen::Index n = H.cols();
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < n && row < m; ++col) {
    for (;;) {
      Eigen::Index best = -1;
      for (Eigen::Index i = row; i < m; ++i) {
        if (H(i, col) != Scalar(0) && (best < 0 || abs_value(H(i, col)) < abs_value(H(best, col)))) {
          best = i;
        }
      }
      if (best < 0) break;
      if (best != row) H.row(best).swap(H.row(row));
      bool done = true;
      for (Eigen::Index i = row + 1; i < m; ++i) {
        if (H(i, col) == Scalar(0)) continue;
        H.row(i) -= (H(i, col) / H(row, col)) * H.row(row);
        if (H(i, col) != Scalar(0)) done = false;
      }
      if (done) break;
    }
    if (H(row, col) == Scalar(0)) continue;
    if (H(row, col) < Scalar(0)) H.row(row) *= Scalar(-1);
    for (Eigen::Index i = 0; i < row; ++i) {
      H.row(i) -= floor_div(H(i, col), H(row, col)) * H.row(row);
    }
    ++row;
  }
  return H;
}

template <typename Scalar>
Eigen::Index integer_rank(const Matrix<Scalar>& M) {
  return smith_normal_form(M).rank;
}

/// Fraction-free (Bareiss) determinant.
template <typename Scalar>
Scalar integer_determinant(Matrix<Scalar> A) {
  const Eigen::Index n = A.rows();
  if (n == 0) return Scalar(1);
  Scalar sign(1);
  Scalar prev(1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (A(k, k) == Scalar(0)) {
      Eigen::Index swap = -1;
      for (Eigen::Index i = k + 1; i < n; ++i) {
        if (A(i, k) != Scalar(0)) {
          swap = i;
          break;
        }
      }
      if (swap < 0) return Scalar(0);
      A.row(k).swap(A.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
      }
    }
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

/// True when the columns of a and b span the same sublattice.
template <typename Scalar>
bool same_column_lattice(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.rows() != b.rows()) return false;
  Matrix<Scalar> ha = hermite_normal_form<Scalar>(a.transpose());
  Matrix<Scalar> hb = hermite_normal_form<Scalar>(b.transpose());
  auto nonzero_rows = [](const Matrix<Scalar>& h) {
    Eigen::Index k = 0;
    while (k < h.rows() && !(h.row(k).array() == Scalar(0)).all()) ++k;
    return k;
  };
  const Eigen::Index ka = nonzero_rows(ha);
  const Eigen::Index kb = nonzero_rows(hb);
  return ka == kb && ha.topRows(ka) == hb.topRows(kb);
}

}  // namespace toric
