#pragma once

/// \file qrep.hpp
/// Quantized gl2 representations and braidings.
///
/// Builds the irreducible U_q(gl2)-module with dominant weight (m1, m2) in
/// the lowering basis x_i = F^i x_0, the diagonal quantum-group action on
/// tensor powers, and the braiding operator R of X (x) X together with its
/// exact spectral data, for two kinds of module X:
///
///   * single:    X an irreducible U_q(gl2)-module;
///   * kronecker: X = V (x) W as a module over U_q(gl2) x U_q(gl2).
///
/// Every constructor verifies its own output symbolically (defining
/// relations, annihilating polynomial, exact eigenspace dimensions, braid
/// relation, commutation with the quantum-group action) and throws
/// std::logic_error on any failure, so a returned object is a certificate.

#include <string>
#include <vector>

#include "nsq/matrix.hpp"

namespace nsq {

/// Irreducible U_q(gl2)-module with highest weight (m1, m2), m1 >= m2.
/// Basis x_0..x_{dim-1} with x_i = F^i x_0:
///   F x_i = x_{i+1},  E x_i = [i][m-i+1] x_{i-1}  (m = m1 - m2),
///   K1 x_i = q^{m1-i} x_i,  K2 x_i = q^{m2+i} x_i,  K = K1 K2^{-1}.
struct GL2Irrep {
  long m1 = 0, m2 = 0;  ///< dominant weight, m1 >= m2
  long dim = 1;         ///< m1 - m2 + 1
  Mat E, F, K1, K2, K1inv, K2inv, K, Kinv;
};

/// Construct the irreducible module and verify the U_q(gl2) relations
/// (K E K^{-1} = q^2 E, K F K^{-1} = q^{-2} F, [E,F] = (K-K^{-1})/(q-q^{-1}),
/// the K1/K2 refinements, and that the Casimir acts by the expected scalar).
/// Throws std::invalid_argument unless m1 >= m2.
GL2Irrep build_irrep(long m1, long m2);

/// Generator action on one tensor factor of type X.  For a single irrep
/// these are its E, F, K; for a composite X = V (x) W there is one SiteOps
/// per gl2 factor, acting through that factor only.
struct SiteOps {
  long dim = 1;  ///< dim X
  Mat E, F, K, Kinv;
};

/// The site operators of a single irreducible module.
SiteOps site_ops(const GL2Irrep& x);

/// The two commuting gl2-factor actions on X = V (x) W (row-major Kronecker
/// indexing: index = i_V * dim W + i_W).
std::vector<SiteOps> kronecker_site_ops(const GL2Irrep& v, const GL2Irrep& w);

/// Diagonal action on X^{(x) r} via the fixed coproduct convention
///   E  |->  sum_i K^{(i-1)} (x) E (x) 1^{(r-i)},
///   F  |->  sum_i 1^{(i-1)} (x) F (x) (K^{-1})^{(r-i)},
///   K  |->  K^{(x) r},
/// which makes each map an algebra homomorphism (relations re-verified on
/// the output).  r >= 1.
SiteOps coproduct_action(const SiteOps& site, long r);

/// One verified eigenvalue of a braiding: value = sign * q^{half_exp / 2}.
struct EigenInfo {
  int sign = 1;       ///< +1 or -1
  long half_exp = 0;  ///< a in q^{a/2}
  Scalar value;       ///< sign * q^{half_exp/2}
  long mult = 0;      ///< exact eigenspace dimension
};

/// Braiding of X (x) X with verified spectral data.
struct RHat {
  std::string desc;
  long dim_x = 1;                    ///< dim X
  Mat matrix;                        ///< on X (x) X
  std::vector<EigenInfo> eigenvalues;
  std::vector<SiteOps> symmetry;     ///< per-factor generator actions on X
};

/// Braiding of X (x) X for a single irrep X, normalized so the highest
/// weight vector x_0 (x) x_0 has eigenvalue q^{m^2/2} (m = m1 - m2).
/// Construction: flip o K-twist o truncated lowering-raising sum, i.e.
/// tau o (q^{wt_i wt_j / 2} on x_i (x) x_j) o sum_n c_n F^n (x) E^n with
/// c_n = q^{n(n-1)/2} (q - q^{-1})^n / [n]!.
/// Verifies: annihilating polynomial, exact eigenspace dimensions, trace
/// identity, braid relation on X^{(x)3}, commutation with the diagonal
/// quantum-group action.
RHat build_rhat_single(const GL2Irrep& x);

/// Braiding of X (x) X for X = V (x) W over the product quantum group:
/// the middle-factor swap conjugate of R_V (x) R_W.  Eigenvalues are the
/// products of the factor eigenvalues (signs multiply), verified exactly
/// as in the single case.
RHat build_rhat_kronecker(const GL2Irrep& v, const GL2Irrep& w);

/// The permutation matrix taking X (x) X (X = V (x) W, row-major) to
/// (V (x) V) (x) (W (x) W):  v_a w_b v_c w_d  |->  v_a v_c w_b w_d.
Mat middle_swap(long dim_v, long dim_w);

/// Which rescaled projector pair spectral_projectors() should populate.
enum class Scaling {
  legacy,  ///< one common factor f: the smallest bar-symmetric multiplier
           ///< making every entry of both projectors a Laurent polynomial
  formal,  ///< f_p, f_q: products of eigenvalue differences from the
           ///< Lagrange denominators, one per sign class
};

/// Spectral projector pair of a braiding, split by eigenvalue sign.
struct ProjectorPair {
  Mat P;        ///< projector onto the positive-sign eigenspaces
  Mat Q;        ///< projector onto the negative-sign eigenspaces
  Mat calP;     ///< rescaled P (f * P under legacy, f_p * P under formal)
  Mat calQ;     ///< rescaled Q (f * Q under legacy, f_q * Q under formal)
  Scalar f_p;   ///< prod_{l in pos} prod_{m != l} (l - m)
  Scalar f_q;   ///< prod_{l in neg} prod_{m != l} (l - m)
  Scalar f;     ///< legacy common factor (see Scaling::legacy)
  Scaling scaling = Scaling::legacy;
};

/// Lagrange projectors onto the positive / negative sign classes of the
/// eigenvalue list.  Verifies idempotence, orthogonality, P + Q = I, exact
/// traces, and commutation with the braiding and the quantum-group action.
ProjectorPair spectral_projectors(const RHat& r, Scaling scaling = Scaling::legacy);

/// Embed an operator on X (x) X as the action on factors (i, i+1) of
/// X^{(x) r}:  1^{(i-1)} (x) op (x) 1^{(r-1-i)}.  Positions are 1-based;
/// requires 1 <= i < r and op square of size dim_x^2.
Mat factor_action(const Mat& op, long i, long r, long dim_x);

}  // namespace nsq
