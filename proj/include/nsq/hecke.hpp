#pragma once

/// \file hecke.hpp
/// The symmetric group S_r and the Iwahori-Hecke algebra H_r(p) in the
/// standard basis {T_w}, together with the coordinate algebra H (x) H used
/// as an abstract ambient for pair subalgebras.
///
/// Conventions: S_r elements are indexed by (Coxeter length, lexicographic
/// one-line notation), index 0 = identity.  Multiplication follows
///   T_w T_{s_i} = T_{w s_i}                     when l(w s_i) > l(w),
///   T_w T_{s_i} = p T_{w s_i} + (p - 1) T_w     otherwise,
/// so each generator satisfies (T_i - p)(T_i + 1) = 0.

#include <memory>
#include <string>
#include <vector>

#include "nsq/algebra.hpp"
#include "nsq/matrix.hpp"
#include "nsq/sparse.hpp"

namespace nsq {

/// Symmetric group S_r.  Permutations are one-line notation vectors of
/// 0-based images; generators s_i (1 <= i < r) swap positions i-1, i.
class SymmetricGroup {
 public:
  explicit SymmetricGroup(long r);

  long r() const { return r_; }
  long size() const { return static_cast<long>(perms_.size()); }
  const std::vector<int>& perm(long w) const {
    return perms_[static_cast<std::size_t>(w)];
  }
  long index_of(const std::vector<int>& one_line) const;
  long length(long w) const { return len_[static_cast<std::size_t>(w)]; }
  /// Index of w * s_i (swaps the entries at positions i-1, i).
  long right_gen(long w, int i) const {
    return right_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(w)];
  }
  /// Index of s_i * w (swaps the values i-1, i).
  long left_gen(long w, int i) const {
    return left_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(w)];
  }
  /// A reduced word for w as 1-based generator letters; empty for identity.
  /// Built so that dropping the last letter gives a shorter element's word.
  const std::vector<int>& reduced_word(long w) const {
    return word_[static_cast<std::size_t>(w)];
  }

 private:
  long r_ = 1;
  std::vector<std::vector<int>> perms_;
  std::vector<long> len_;
  std::vector<std::vector<long>> right_, left_;
  std::vector<std::vector<int>> word_;
};

/// Iwahori-Hecke algebra of S_r with parameter p, in the standard basis
/// {T_w}; coordinates are vectors indexed like the group.  The full basis
/// multiplication table is precomputed at construction (intended for small
/// r; the table grows like r!^2).
class HeckeAlgebra {
 public:
  HeckeAlgebra(long r, Scalar p);

  long r() const { return g_.r(); }
  long dim() const { return g_.size(); }
  const SymmetricGroup& group() const { return g_; }
  const Scalar& p() const { return p_; }

  /// Coordinates of x * T_{s_i}.
  SpVec right_gen_apply(const SpVec& x, int i) const;
  /// T_u * T_v in the T-basis.
  const SpVec& basis_product(long u, long v) const {
    return table_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
  }
  /// x * y in T-basis coordinates.
  SpVec mul(const SpVec& x, const SpVec& y) const;
  /// Regular right-multiplication matrix of T_{s_i}: column w holds the
  /// coordinates of T_w T_{s_i}.
  Mat right_gen_matrix(int i) const;

  /// Images of every T_w under the algebra map sending T_{s_i} to
  /// gen_images[i-1], indexed like the group (multiplied along reduced
  /// words; the caller guarantees the images satisfy the braid and
  /// quadratic relations, so the products are word-independent).
  std::vector<Mat> representation(const std::vector<Mat>& gen_images) const;

 private:
  SymmetricGroup g_;
  Scalar p_;
  std::vector<std::vector<SpVec>> table_;
};

/// H (x) H with coordinates (u, v) -> u * dim + v and componentwise
/// multiplication (T_u (x) T_v)(T_u' (x) T_v') = T_u T_u' (x) T_v T_v'.
class HeckePairAmbient : public Ambient {
 public:
  explicit HeckePairAmbient(std::shared_ptr<const HeckeAlgebra> h)
      : h_(std::move(h)) {}

  const HeckeAlgebra& hecke() const { return *h_; }
  long coord_dim() const override { return h_->dim() * h_->dim(); }
  SpVec unit() const override;
  SpVec mul(const SpVec& a, const SpVec& b) const override;
  std::string describe() const override;

 private:
  std::shared_ptr<const HeckeAlgebra> h_;
};

}  // namespace nsq
