#pragma once

// Exact integer/rational lattice algebra: arbitrary-precision scalars,
// dense integer matrices, Smith normal form, and the derived quantities
// (saturation index, torsion coset representatives, integer kernel normals)
// everything else in this library is built on. All arithmetic is exact;
// there is no floating point anywhere.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "torb/errors.hpp"

namespace torb {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

inline Int gcd_int(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

// floor(q) for an exact rational.
inline Int rat_floor(const Rat& q) {
  Int num = numerator(q);
  Int den = denominator(q);  // always > 0
  Int quo = num / den;       // truncates toward zero
  if (num < 0 && quo * den != num) --quo;
  return quo;
}

// Fractional part of q, reduced into [0, 1).
inline Rat mod_one(const Rat& q) { return q - Rat(rat_floor(q)); }

inline bool is_zero_vector(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& e) { return e == 0; });
}

inline Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw DomainError("dot product of vectors of different lengths");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool lex_less(const RatVec& a, const RatVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Dense row-major integer matrix. Small and simple on purpose: every matrix
// this library touches has at most a few dozen rows and columns, so the
// only thing that matters is exactness and deterministic behaviour.
class IntMat {
 public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntMat identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  // Builds the matrix whose j-th column is cols[j]. Columns must be nonempty
  // and of uniform length.
  static IntMat from_columns(const std::vector<IntVec>& cols) {
    if (cols.empty()) throw DomainError("from_columns: no columns given");
    const std::size_t rows = cols[0].size();
    if (rows == 0) throw DomainError("from_columns: empty column vectors");
    for (const IntVec& c : cols)
      if (c.size() != rows) throw DomainError("from_columns: ragged column lengths");
    IntMat m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVec column(std::size_t j) const {
    IntVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
  }

  std::vector<IntVec> columns() const {
    std::vector<IntVec> cs(cols_);
    for (std::size_t j = 0; j < cols_; ++j) cs[j] = column(j);
    return cs;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
  }

  friend bool operator==(const IntMat&, const IntMat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> a_;
};

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
  if (a.cols() != b.rows()) throw DomainError("mat_mul: shape mismatch");
  IntMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return c;
}

inline IntVec mat_vec(const IntMat& m, const IntVec& v) {
  if (m.cols() != v.size()) throw DomainError("mat_vec: shape mismatch");
  IntVec out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m.at(i, j) * v[j];
  return out;
}

inline RatVec mat_vec(const IntMat& m, const RatVec& v) {
  if (m.cols() != v.size()) throw DomainError("mat_vec: shape mismatch");
  RatVec out(m.rows(), Rat(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += Rat(m.at(i, j)) * v[j];
  return out;
}

// v = scale * direction with direction primitive and scale > 0.
struct PrimitiveDecomposition {
  Int scale;
  IntVec direction;
};

inline PrimitiveDecomposition primitive_decompose(const IntVec& v) {
  Int g = 0;
  for (const Int& e : v) g = gcd_int(g, e);
  if (g == 0) throw DomainError("cannot take primitive of zero");
  IntVec dir(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) dir[i] = v[i] / g;
  return {g, std::move(dir)};
}

inline bool is_primitive(const IntVec& v) {
  Int g = 0;
  for (const Int& e : v) g = gcd_int(g, e);
  return g == 1;
}

// Smith normal form: left * m * right = diag, with left and right unimodular
// and the diagonal entries d_1 | d_2 | ... | d_r >= 1 followed by zeros.
struct SmithDecomposition {
  IntMat left;
  IntMat diag;
  IntMat right;
  IntVec invariant_factors;  // the nonzero diagonal entries
};

// Deterministic SNF. Pivot selection at each elimination step: the nonzero
// entry of smallest absolute value in the trailing block, ties broken by row
// index then column index. This fixes left/right uniquely for a given input,
// which keeps every downstream artifact byte-reproducible.
inline SmithDecomposition smith_normal_form(const IntMat& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMat d = m;
  IntMat u = IntMat::identity(rows);
  IntMat v = IntMat::identity(cols);

  // dst_row += f * src_row, applied to d and u in lockstep (row ops act on the left).
  auto row_axpy = [&](std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t j = 0; j < cols; ++j) d.at(dst, j) += f * d.at(src, j);
    for (std::size_t j = 0; j < rows; ++j) u.at(dst, j) += f * u.at(src, j);
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t i = 0; i < rows; ++i) d.at(i, dst) += f * d.at(i, src);
    for (std::size_t i = 0; i < cols; ++i) v.at(i, dst) += f * v.at(i, src);
  };

  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    bool have_pivot = false;
    for (;;) {
      std::size_t pi = rows, pj = cols;
      Int best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          const Int& x = d.at(i, j);
          if (x == 0) continue;
          Int ax = abs_int(x);
          if (pi == rows || ax < best) {
            pi = i;
            pj = j;
            best = ax;
          }
        }
      if (pi == rows) break;  // trailing block is zero
      have_pivot = true;
      if (pi != t) {
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
      }
      if (pj != t) {
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
      }

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d.at(i, t) == 0) continue;
        Int q = d.at(i, t) / d.at(t, t);
        if (q != 0) row_axpy(i, t, -q);
        if (d.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d.at(t, j) == 0) continue;
        Int q = d.at(t, j) / d.at(t, t);
        if (q != 0) col_axpy(j, t, -q);
        if (d.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;  // remainders left behind; re-pick a smaller pivot

      // The pivot must divide every entry of the trailing block, or the
      // diagonal would not be a divisibility chain. Fold one offending row
      // into the pivot row and restart the elimination for this step.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < rows && divides_all; ++i)
        for (std::size_t j = t + 1; j < cols && divides_all; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            row_axpy(t, i, 1);
            divides_all = false;
          }
      if (divides_all) break;
    }
    if (!have_pivot) break;
  }

  SmithDecomposition out;
  for (std::size_t t = 0; t < steps; ++t) {
    if (d.at(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) d.at(t, j) = -d.at(t, j);
      for (std::size_t j = 0; j < rows; ++j) u.at(t, j) = -u.at(t, j);
    }
    if (d.at(t, t) != 0) out.invariant_factors.push_back(d.at(t, t));
  }
  out.left = std::move(u);
  out.diag = std::move(d);
  out.right = std::move(v);
  return out;
}

inline std::size_t exact_rank(const IntMat& m) {
  return smith_normal_form(m).invariant_factors.size();
}

// Fraction-free Bareiss determinant (square matrices only).
inline Int determinant(const IntMat& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMat a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t t = 0; t + 1 < n; ++t) {
    if (a.at(t, t) == 0) {
      std::size_t p = t + 1;
      while (p < n && a.at(p, t) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(t, p);
      sign = -sign;
    }
    for (std::size_t i = t + 1; i < n; ++i)
      for (std::size_t j = t + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(t, t) - a.at(i, t) * a.at(t, j)) / prev;
    prev = a.at(t, t);
  }
  Int det = a.at(n - 1, n - 1);
  return sign > 0 ? det : Int(-det);
}

// Index of the subgroup generated by the columns inside the saturation of
// their span: the product of the invariant factors. Requires linearly
// independent columns.
inline Int saturation_index(const IntMat& m) {
  SmithDecomposition snf = smith_normal_form(m);
  if (snf.invariant_factors.size() != m.cols()) throw DomainError("columns not independent");
  Int idx = 1;
  for (const Int& f : snf.invariant_factors) idx *= f;
  return idx;
}

// Representatives of (span(M) cap Z^n) / (column lattice of M), written in
// column coordinates and reduced into the half-open cube [0,1)^k. With
// U M V = D, the coordinate vectors c with M c integral are exactly c = V w
// where w_i ranges over (1/d_i) Z; reducing mod Z^k and enumerating
// w_i = y_i / d_i, 0 <= y_i < d_i hits every class exactly once because V is
// unimodular. Sorted lexicographically; the zero class is always present.
inline std::vector<RatVec> coset_representatives(const IntMat& m) {
  SmithDecomposition snf = smith_normal_form(m);
  const std::size_t k = m.cols();
  if (snf.invariant_factors.size() != k) throw DomainError("columns not independent");

  std::vector<RatVec> reps;
  IntVec counter(k, Int(0));
  for (;;) {
    RatVec c(k, Rat(0));
    for (std::size_t i = 0; i < k; ++i) {
      Rat acc = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if (snf.right.at(i, j) == 0 || counter[j] == 0) continue;
        acc += Rat(snf.right.at(i, j)) * Rat(counter[j], snf.invariant_factors[j]);
      }
      c[i] = mod_one(acc);
    }
    reps.push_back(std::move(c));

    std::size_t pos = 0;
    while (pos < k) {
      if (++counter[pos] < snf.invariant_factors[pos]) break;
      counter[pos] = 0;
      ++pos;
    }
    if (pos == k) break;
  }
  std::sort(reps.begin(), reps.end(), lex_less);
  return reps;
}

// The coset representatives with every coordinate strictly inside (0,1).
inline std::vector<RatVec> interior_representatives(const IntMat& m) {
  std::vector<RatVec> out;
  for (RatVec& c : coset_representatives(m)) {
    bool interior = std::all_of(c.begin(), c.end(), [](const Rat& x) { return x > 0; });
    if (interior) out.push_back(std::move(c));
  }
  return out;
}

// For an (n+1) x n matrix of full column rank: the primitive integer vector
// spanning the kernel of M^T, i.e. orthogonal to every column. Computed from
// the signed maximal minors (delete row i, sign (-1)^i), then normalized so
// the first nonzero entry is positive.
inline IntVec integer_kernel_normal(const IntMat& m) {
  if (m.rows() != m.cols() + 1)
    throw DomainError("integer_kernel_normal expects an (n+1) x n matrix");
  const std::size_t n = m.cols();
  IntVec normal(n + 1);
  bool any_nonzero = false;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    IntMat sub(n, n);
    std::size_t r = 0;
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == skip) continue;
      for (std::size_t j = 0; j < n; ++j) sub.at(r, j) = m.at(i, j);
      ++r;
    }
    Int d = determinant(sub);
    normal[skip] = (skip % 2 == 0) ? d : Int(-d);
    if (normal[skip] != 0) any_nonzero = true;
  }
  if (!any_nonzero) throw DomainError("columns not independent");
  IntVec out = primitive_decompose(normal).direction;
  for (const Int& e : out) {
    if (e == 0) continue;
    if (e < 0)
      for (Int& x : out) x = -x;
    break;
  }
  return out;
}

}  // namespace torb
