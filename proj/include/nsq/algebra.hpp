#pragma once

/// \file algebra.hpp
/// Word-algebra closures, commutants, and trace radicals over the exact
/// scalar field.
///
/// An algebra lives inside an *ambient* associative algebra whose elements
/// are sparse coordinate vectors: either End(V) with matrices flattened
/// row-major, or an abstract algebra supplied with its own multiplication
/// (e.g. a pair of Hecke algebras in their defining basis).  All questions
/// about a constructed subalgebra (membership, products, structure
/// constants) are answered through exact echelon bookkeeping — no floating
/// point anywhere.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsq/sparse.hpp"

namespace nsq {

/// Ambient associative algebra interface: a coordinate space together with a
/// bilinear, associative, unital multiplication on sparse coordinate
/// vectors.
class Ambient {
 public:
  virtual ~Ambient() = default;
  /// Length of coordinate vectors.
  virtual long coord_dim() const = 0;
  /// Coordinates of the multiplicative unit.
  virtual SpVec unit() const = 0;
  /// Product in coordinates.
  virtual SpVec mul(const SpVec& a, const SpVec& b) const = 0;
  virtual std::string describe() const = 0;
};

using AmbientPtr = std::shared_ptr<const Ambient>;

/// End(V) for an n-dimensional space; coordinates are row-major flattened
/// matrices.
class MatrixAmbient : public Ambient {
 public:
  explicit MatrixAmbient(long n) : n_(n) {}
  long n() const { return n_; }
  long coord_dim() const override { return n_ * n_; }
  SpVec unit() const override;
  SpVec mul(const SpVec& a, const SpVec& b) const override;
  std::string describe() const override;

  Mat to_mat(const SpVec& v) const;
  SpVec from_mat(const Mat& m) const { return SpVec::flatten(m); }

 private:
  long n_;
};

/// Thrown by algebra_closure when the span outgrows the caller's bound.
class DimensionExceeded : public std::runtime_error {
 public:
  explicit DimensionExceeded(long limit)
      : std::runtime_error("algebra closure exceeded dimension bound " +
                           std::to_string(limit)),
        limit(limit) {}
  long limit;
};

/// A finite-dimensional subalgebra presented by an echelonized basis of
/// ambient coordinate vectors.  When produced by algebra_closure the basis
/// elements are monomials in the generators: words[i] lists generator
/// indices, basis[i] = g_{w1} * ... * g_{wk} (empty word = unit), and
/// rmul[g] is the right-multiplication matrix: column j holds the
/// coordinates of basis[j] * g over the basis.
struct AlgebraSpan {
  AmbientPtr ambient;
  std::vector<SpVec> basis;
  std::vector<std::vector<int>> words;
  std::vector<SpVec> gens;
  std::vector<Mat> rmul;
  RowSpace space{true};

  long dim() const { return static_cast<long>(basis.size()); }
  bool contains(const SpVec& v) const { return space.contains(v); }
  /// Coordinates of an ambient vector over the basis; nullopt outside.
  std::optional<std::vector<Scalar>> express(const SpVec& v) const {
    return space.express(v);
  }
  /// Ambient coordinates of sum_i c[i] * basis[i].
  SpVec element(const std::vector<Scalar>& c) const;
  /// Coordinates of x * g_k for x given in coordinates over the basis.
  std::vector<Scalar> apply_rmul(int k, const std::vector<Scalar>& x) const;
  /// Coordinates of the product of two elements given in coordinates over
  /// the basis (walks rmul along the word of every basis monomial; cost grows
  /// with dim^2 * word length, fine at the sizes used here).
  std::vector<Scalar> mul_coords(const std::vector<Scalar>& x,
                                 const std::vector<Scalar>& y) const;
  /// Left-multiplication matrix of an ambient element z: column j holds the
  /// coordinates of z * basis[j].  Requires z's products to stay in the span.
  Mat lmul_matrix(const SpVec& z) const;
  /// Right-multiplication matrix of an ambient element z: column j holds the
  /// coordinates of basis[j] * z.
  Mat rmul_matrix(const SpVec& z) const;

  /// Matrix form of basis[i] (matrix ambient only).
  Mat basis_mat(long i) const;
  const MatrixAmbient& matrix_ambient() const;
};

/// Unital associative closure of the generators inside the ambient algebra.
/// Words are enumerated breadth-first, generators in ascending index order,
/// so the accepted basis words are sorted by (length, lexicographic) and are
/// prefix-closed.  Throws DimensionExceeded when the span grows past
/// max_dim.
AlgebraSpan algebra_closure(AmbientPtr ambient, std::vector<SpVec> gens,
                            long max_dim);
AlgebraSpan algebra_closure(const std::vector<Mat>& gens, long max_dim);

/// Wrap an already-closed span of matrices (echelonizes; no words).
AlgebraSpan span_from_closed_basis(const std::vector<Mat>& mats);

/// Independent re-check that every basis*generator product, recomputed in the
/// ambient algebra, matches the recorded rmul column exactly.  Together with
/// bilinearity of the ambient product this certifies that every pairwise
/// basis product lies in the span.
bool certify_generator_products(const AlgebraSpan& a);

/// Brute-force closure certificate: every pairwise basis product, computed in
/// the ambient algebra, reduces to zero residual against the basis.
/// Quadratic in dim; intended for moderate dimensions.
bool certify_pairwise(const AlgebraSpan& a);

/// Basis of all n x n matrices commuting with every op.
///
/// When `grading` (one label per ambient basis index) is supplied and every
/// op preserves it, the system splits by label shift and is solved
/// blockwise — exact and much faster, no assumptions needed.  When
/// `grade_preserving_only` is set, the unknowns are restricted to the
/// label-preserving positions; the caller must justify that restriction
/// (typically: some diagonal operator with distinct values per label is known
/// to commute with everything of interest).
std::vector<Mat> commutant_basis(const std::vector<Mat>& ops,
                                 const std::vector<long>& grading = {},
                                 bool grade_preserving_only = false);

/// Commutant of a matrix-ambient span, as a span (closed by construction).
AlgebraSpan commutant(const AlgebraSpan& alg,
                      const std::vector<long>& grading = {},
                      bool grade_preserving_only = false);

/// Equal spans (mutual containment of bases).
bool same_span(const AlgebraSpan& a, const AlgebraSpan& b);

/// Upper bound for the dimension of {X : [X, op] = 0 for every op, X
/// supported on label-equal positions} computed with every entry specialized
/// at q = q0 (exact quadratic-number arithmetic; specializing can only
/// enlarge the kernel, hence the bound).  Row insertion stops early once the
/// kernel of the accumulated system shrinks to stop_at_kernel_dim, the
/// smallest value the caller knows is attainable; pass 0 to process every
/// equation.  An empty grading means all positions are allowed.
long commutant_dim_bound_at_q(const std::vector<Mat>& ops, const Rat& q0,
                              const std::vector<long>& grading,
                              long stop_at_kernel_dim);

/// Echelonized subspace container (basis rows fully reduced, pivot 1).
struct Subspace {
  long ambient_dim = 0;
  std::vector<SpVec> basis;
  std::vector<long> pivots;
  long dim() const { return static_cast<long>(basis.size()); }
};

/// Reduced row-echelon form of the row space of m, with rank.
std::pair<Subspace, long> rref(const Mat& m);

/// Exact null space {x : m x = 0} as a Subspace.
Subspace kernel(const Mat& m);

/// Radical of the trace form tr(xy) on a matrix-ambient span, expressed in
/// coordinates over alg.basis.  Zero certifies semisimplicity (char 0,
/// faithful matrix realization).
Subspace trace_radical(const AlgebraSpan& alg);

/// Fixed, published sequence of rational specialization points q0 used by
/// every probe in the project: 3/2, 2, 5/3, 7/4, 5/2, 8/3, 9/5, 11/4, 7/2,
/// 13/5.  Deterministic by design.
const std::vector<Rat>& probe_points();

/// Evaluate every entry at q = q0 (half powers of q become multiples of
/// sqrt(q0) when q0 is not a perfect rational square).
QMat eval_at_q(const Mat& m, const Rat& q0);

/// Rank of m specialized at q = q0; throws std::domain_error on a pole.
long rank_at_q(const Mat& m, const Rat& q0);

/// Max rank over the first `trials` probe points (points hitting poles are
/// skipped).  A lower bound for the symbolic rank.
long random_rank_probe(const Mat& m, long trials);

}  // namespace nsq
