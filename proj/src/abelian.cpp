#include "racg/abelian.hpp"

#include <algorithm>
#include <map>

namespace racg {

int Presentation::generator_index(const std::string& name) const {
  auto it = std::find(generators.begin(), generators.end(), name);
  if (it == generators.end())
    throw Error(ErrorCode::Validation, "unknown generator " + name);
  return static_cast<int>(it - generators.begin());
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& other) const {
  if (cols != other.rows) throw Error(ErrorCode::Internal, "matrix shape mismatch");
  IntMatrix out(rows, other.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      if (at(i, k) == 0) continue;
      for (int j = 0; j < other.cols; ++j) out.at(i, j) += at(i, k) * other.at(k, j);
    }
  return out;
}

Int determinant(const IntMatrix& m) {
  if (m.rows != m.cols) throw Error(ErrorCode::Internal, "determinant of non-square");
  int n = m.rows;
  if (n == 0) return 1;
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (int t = 0; t < n - 1; ++t) {
    if (a.at(t, t) == 0) {
      int swap = -1;
      for (int i = t + 1; i < n && swap < 0; ++i)
        if (a.at(i, t) != 0) swap = i;
      if (swap < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a.at(t, j), a.at(swap, j));
      sign = -sign;
    }
    for (int i = t + 1; i < n; ++i)
      for (int j = t + 1; j < n; ++j) {
        Int v = a.at(i, j) * a.at(t, t) - a.at(i, t) * a.at(t, j);
        mpz_divexact(a.at(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a.at(t, t);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

namespace {

/// Working state for SNF reduction, keeping p * s * q invariant.
struct SnfState {
  IntMatrix p, s, q, q_inv;

  explicit SnfState(const IntMatrix& m)
      : p(IntMatrix::identity(m.rows)),
        s(m),
        q(IntMatrix::identity(m.cols)),
        q_inv(IntMatrix::identity(m.cols)) {}

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < s.cols; ++c) std::swap(s.at(i, c), s.at(j, c));
    for (int r = 0; r < p.rows; ++r) std::swap(p.at(r, i), p.at(r, j));
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < s.rows; ++r) std::swap(s.at(r, i), s.at(r, j));
    for (int c = 0; c < q.cols; ++c) std::swap(q.at(i, c), q.at(j, c));
    for (int r = 0; r < q_inv.rows; ++r) std::swap(q_inv.at(r, i), q_inv.at(r, j));
  }
  // row_i -= f * row_j
  void row_sub(int i, int j, const Int& f) {
    if (f == 0) return;
    for (int c = 0; c < s.cols; ++c) s.at(i, c) -= f * s.at(j, c);
    for (int r = 0; r < p.rows; ++r) p.at(r, j) += f * p.at(r, i);
  }
  // col_i -= f * col_j
  void col_sub(int i, int j, const Int& f) {
    if (f == 0) return;
    for (int r = 0; r < s.rows; ++r) s.at(r, i) -= f * s.at(r, j);
    for (int c = 0; c < q.cols; ++c) q.at(j, c) += f * q.at(i, c);
    for (int r = 0; r < q_inv.rows; ++r) q_inv.at(r, i) -= f * q_inv.at(r, j);
  }
  void negate_row(int i) {
    for (int c = 0; c < s.cols; ++c) s.at(i, c) = -s.at(i, c);
    for (int r = 0; r < p.rows; ++r) p.at(r, i) = -p.at(r, i);
  }
};

}  // namespace

SNFDecomposition smith_normal_form(const IntMatrix& m) {
  SnfState st(m);
  int n = std::min(m.rows, m.cols);
  for (int t = 0; t < n; ++t) {
    for (;;) {
      Budget::check();
      // Smallest nonzero absolute value in the remaining submatrix,
      // row-major ties.
      int pi = -1, pj = -1;
      for (int i = t; i < m.rows; ++i)
        for (int j = t; j < m.cols; ++j) {
          if (st.s.at(i, j) == 0) continue;
          if (pi < 0 || mpz_cmpabs(st.s.at(i, j).get_mpz_t(),
                                   st.s.at(pi, pj).get_mpz_t()) < 0) {
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        t = n;  // submatrix is zero, nothing left to do
        break;
      }
      st.swap_rows(t, pi);
      st.swap_cols(t, pj);
      bool disturbed = false;
      for (int i = t + 1; i < m.rows; ++i) {
        if (st.s.at(i, t) == 0) continue;
        Int f = st.s.at(i, t) / st.s.at(t, t);
        st.row_sub(i, t, f);
        if (st.s.at(i, t) != 0) disturbed = true;  // remainder, re-pivot
      }
      for (int j = t + 1; j < m.cols; ++j) {
        if (st.s.at(t, j) == 0) continue;
        Int f = st.s.at(t, j) / st.s.at(t, t);
        st.col_sub(j, t, f);
        if (st.s.at(t, j) != 0) disturbed = true;
      }
      if (disturbed) continue;
      // Pivot must divide the whole remaining submatrix for the chain.
      bool divides_all = true;
      for (int i = t + 1; i < m.rows && divides_all; ++i)
        for (int j = t + 1; j < m.cols && divides_all; ++j)
          if (st.s.at(i, j) % st.s.at(t, t) != 0) {
            st.row_sub(t, i, Int(-1));  // fold row i into the pivot row
            divides_all = false;
          }
      if (divides_all) break;
    }
    if (t >= n) break;
  }
  SNFDecomposition out;
  for (int i = 0; i < n; ++i)
    if (st.s.at(i, i) < 0) st.negate_row(i);
  for (int i = 0; i < n; ++i)
    if (st.s.at(i, i) != 0) out.invariant_factors.push_back(st.s.at(i, i));
  out.p = std::move(st.p);
  out.s = std::move(st.s);
  out.q = std::move(st.q);
  out.q_inv = std::move(st.q_inv);
  return out;
}

IntMatrix relation_matrix(const Presentation& p) {
  IntMatrix m(static_cast<int>(p.relators.size()),
              static_cast<int>(p.generators.size()));
  for (size_t i = 0; i < p.relators.size(); ++i)
    for (const Letter& l : p.relators[i])
      m.at(static_cast<int>(i), p.generator_index(l.gen)) += l.exp;
  return m;
}

int GF2Vector::lowest_set() const {
  for (size_t w = 0; w < bits_.size(); ++w)
    if (bits_[w]) return static_cast<int>(w * 64) + __builtin_ctzll(bits_[w]);
  return -1;
}

std::vector<Int> AbelianModel::image(const RWord& w) const {
  int m = static_cast<int>(presentation.generators.size());
  std::vector<Int> b(m);
  for (const Letter& l : w) b[presentation.generator_index(l.gen)] += l.exp;
  std::vector<Int> y(m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i)
      if (b[i] != 0) y[j] += b[i] * snf.q_inv.at(i, j);
    if (moduli[j] > 0) {
      mpz_mod(y[j].get_mpz_t(), y[j].get_mpz_t(), moduli[j].get_mpz_t());
    }
  }
  return y;
}

bool AbelianModel::elementary_abelian_2() const {
  for (const Int& o : moduli)
    if (o != 1 && o != 2) return false;
  return true;
}

GF2Vector AbelianModel::gf2_image(const RWord& w) const {
  if (!elementary_abelian_2())
    throw Error(ErrorCode::Validation, "abelianization is not (Z/2)^n");
  std::vector<Int> y = image(w);
  int n = 0;
  for (const Int& o : moduli)
    if (o == 2) ++n;
  GF2Vector v(n);
  int at = 0;
  for (size_t j = 0; j < moduli.size(); ++j) {
    if (moduli[j] != 2) continue;
    if (y[j] != 0) v.set(at, true);
    ++at;
  }
  return v;
}

AbelianModel abelianize(const Presentation& p) {
  AbelianModel m;
  m.presentation = p;
  m.snf = smith_normal_form(relation_matrix(p));
  int gens = static_cast<int>(p.generators.size());
  for (int j = 0; j < gens; ++j) {
    Int o = j < static_cast<int>(m.snf.invariant_factors.size())
                ? m.snf.invariant_factors[j]
                : Int(0);
    m.moduli.push_back(o);
    if (o != 1) m.factor_orders.push_back(o);
  }
  return m;
}

namespace {

/// Echelon basis over GF(2); rows reduced against each other by lowest set
/// bit. insert() returns false when the vector is dependent.
struct GF2Echelon {
  std::map<int, GF2Vector> rows;  // pivot bit -> row

  bool insert(GF2Vector v) {
    for (;;) {
      int lead = v.lowest_set();
      if (lead < 0) return false;
      auto it = rows.find(lead);
      if (it == rows.end()) {
        rows.emplace(lead, std::move(v));
        return true;
      }
      v ^= it->second;
    }
  }
};

bool variant_dfs(const std::vector<GF2Vector>& candidates, int target,
                 GF2Echelon& basis, std::vector<int>& chosen, size_t next,
                 long& remaining, std::vector<int>& out) {
  Budget::check();
  if (static_cast<int>(chosen.size()) == target) {
    if (remaining == 0) {
      out = chosen;
      return true;
    }
    --remaining;
    return false;
  }
  for (size_t i = next; i < candidates.size(); ++i) {
    GF2Echelon saved = basis;
    if (!basis.insert(candidates[i])) {
      basis = std::move(saved);
      continue;
    }
    chosen.push_back(static_cast<int>(i));
    if (variant_dfs(candidates, target, basis, chosen, i + 1, remaining, out))
      return true;
    chosen.pop_back();
    basis = std::move(saved);
  }
  return false;
}

}  // namespace

std::vector<int> extend_gf2_basis_variant(const std::vector<GF2Vector>& independent,
                                          const std::vector<GF2Vector>& candidates,
                                          int target_count, long variant) {
  GF2Echelon basis;
  for (const GF2Vector& v : independent)
    if (!basis.insert(v))
      throw Error(ErrorCode::Validation, "given set is not linearly independent");
  std::vector<int> chosen, out;
  long remaining = variant;
  if (!variant_dfs(candidates, target_count, basis, chosen, 0, remaining, out))
    throw Error(ErrorCode::Validation, "insufficient rank");
  return out;
}

std::vector<int> extend_gf2_basis(const std::vector<GF2Vector>& independent,
                                  const std::vector<GF2Vector>& candidates,
                                  int target_count) {
  return extend_gf2_basis_variant(independent, candidates, target_count, 0);
}

}  // namespace racg
