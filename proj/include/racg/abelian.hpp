#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "racg/error.hpp"

namespace racg {

using Int = mpz_class;

struct Letter {
  std::string gen;
  int exp = 1;  // +1 or -1
};

using RWord = std::vector<Letter>;

struct Presentation {
  std::vector<std::string> generators;
  std::vector<RWord> relators;

  int generator_index(const std::string& name) const;  // throws on unknown
};

struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Int> data;  // row-major

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c) {}

  Int& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

  static IntMatrix identity(int n);
  IntMatrix mul(const IntMatrix& other) const;
  bool operator==(const IntMatrix& other) const = default;
};

Int determinant(const IntMatrix& m);  // Bareiss, exact

/// Exact decomposition original = p * s * q with p, q unimodular and s
/// diagonal with positive entries satisfying the divisibility chain.
/// q_inv is the inverse of q, kept so callers can map coordinates into the
/// canonical form without a separate inversion.
struct SNFDecomposition {
  IntMatrix p, s, q, q_inv;
  std::vector<Int> invariant_factors;  // the positive diagonal entries
};

SNFDecomposition smith_normal_form(const IntMatrix& m);

/// Net exponent sums: one row per relator, one column per generator.
IntMatrix relation_matrix(const Presentation& p);

/// Dense bit vector over Z/2Z.
class GF2Vector {
public:
  GF2Vector() = default;
  explicit GF2Vector(int len) : len_(len), bits_((len + 63) / 64, 0) {}

  int size() const { return len_; }
  bool get(int i) const { return (bits_[i >> 6] >> (i & 63)) & 1; }
  void set(int i, bool v) {
    if (v)
      bits_[i >> 6] |= uint64_t{1} << (i & 63);
    else
      bits_[i >> 6] &= ~(uint64_t{1} << (i & 63));
  }
  void flip(int i) { bits_[i >> 6] ^= uint64_t{1} << (i & 63); }
  GF2Vector& operator^=(const GF2Vector& o) {
    for (size_t w = 0; w < bits_.size(); ++w) bits_[w] ^= o.bits_[w];
    return *this;
  }
  friend GF2Vector operator^(GF2Vector a, const GF2Vector& b) { return a ^= b; }
  bool any() const {
    for (uint64_t w : bits_) if (w) return true;
    return false;
  }
  int lowest_set() const;  // -1 if zero
  bool operator==(const GF2Vector& o) const = default;
  bool operator<(const GF2Vector& o) const {
    return bits_ < o.bits_ || (bits_ == o.bits_ && len_ < o.len_);
  }

private:
  int len_ = 0;
  std::vector<uint64_t> bits_;
};

/// Abelianization in canonical coordinates. Coordinate j of an image is
/// taken modulo moduli[j]; modulus 0 marks a free factor, modulus 1 a
/// trivial coordinate (dropped from the reported factor list).
struct AbelianModel {
  Presentation presentation;
  SNFDecomposition snf;
  std::vector<Int> moduli;         // one per generator coordinate
  std::vector<Int> factor_orders;  // moduli with units dropped, 0 = infinite

  /// Coefficients of the word's class in canonical coordinates (all of
  /// them, including trivial ones, so positions line up with moduli).
  std::vector<Int> image(const RWord& w) const;

  /// True iff Ab is (Z/2Z)^n for some n: every coordinate has modulus 2
  /// (or 1), no free part.
  bool elementary_abelian_2() const;

  /// Image over the modulus-2 coordinates. Requires elementary_abelian_2.
  GF2Vector gf2_image(const RWord& w) const;
};

AbelianModel abelianize(const Presentation& p);

/// Greedy basis extension: the lexicographically first (by candidate index)
/// subset of `candidates` of size target_count that is jointly independent
/// with `independent`. Throws Validation("insufficient rank") if impossible.
std::vector<int> extend_gf2_basis(const std::vector<GF2Vector>& independent,
                                  const std::vector<GF2Vector>& candidates,
                                  int target_count);

/// The variant-th valid subset in the same lexicographic order (variant 0
/// reproduces extend_gf2_basis). Throws when fewer subsets exist.
std::vector<int> extend_gf2_basis_variant(const std::vector<GF2Vector>& independent,
                                          const std::vector<GF2Vector>& candidates,
                                          int target_count, long variant);

}  // namespace racg
