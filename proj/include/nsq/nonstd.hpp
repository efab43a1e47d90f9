#pragma once

/// \file nonstd.hpp
/// Algebras generated by rescaled spectral projectors on tensor powers.
///
/// A ProjectorFamily carries, for one construction case, the commuting
/// family of sign-split projector generators embedded at adjacent positions
/// of X^{(x) r} — and, for the Kronecker case, the same generators realized
/// abstractly inside the pair algebra H (x) H, where that case's algebra is
/// defined.  On top of the family:
///
///   * find_relations enumerates alternating generator words by
///     (length, lexicographic), evaluates them exactly, and returns the
///     kernel of the evaluation map as one normalized relation per
///     dependent word;
///   * rescale_relation applies the exact legacy -> formal coefficient
///     chain, including the hat coefficients used for positivity analysis;
///   * positivity_report recentres each hat coefficient into its
///     center-outward integer vector and classifies its shape.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nsq/algebra.hpp"
#include "nsq/hecke.hpp"
#include "nsq/qrep.hpp"

namespace nsq {

/// Which of the two sign-split projector families the generators are from.
enum class Flavor { P, Q };

/// One construction case at tensor power r.
///
/// Cases: "gl2_cubic" (X the 4-dimensional irreducible U_q(gl2)-module) and
/// "kronecker" (X = V (x) W, both 2-dimensional, over the product quantum
/// group); aliases "ex1" / "ex2" are accepted by build_family.
struct ProjectorFamily {
  std::string case_name;  ///< canonical name
  long r = 2;             ///< tensor power
  long dim_x = 0;         ///< dim X
  long dim = 0;           ///< dim X^{(x) r}
  Scaling scaling = Scaling::legacy;
  RHat rhat;              ///< verified braiding of X (x) X
  ProjectorPair pair;     ///< verified projector pair on X (x) X
  Scalar p_factor;        ///< calP_i^2 = p_factor * calP_i
  Scalar q_factor;        ///< calQ_i^2 = q_factor * calQ_i
  std::vector<Mat> calP;  ///< generators at positions 1..r-1 on X^{(x) r}
  std::vector<Mat> calQ;
  /// Conserved weight label per tensor basis index (every generator is
  /// label-preserving; checked at construction).
  std::vector<long> grading;

  /// Abstract realization inside H (x) H (Kronecker case only, else null):
  /// T_i acts on X^{(x) r} as v^3 times the braiding of the 2-dimensional
  /// factor at position i, and the generators are supported on
  /// {1 (x) 1, T_i (x) 1, 1 (x) T_i, T_i (x) T_i}.
  std::shared_ptr<const HeckeAlgebra> hecke;
  std::shared_ptr<const HeckePairAmbient> hh;
  std::vector<SpVec> hh_calP, hh_calQ;
  /// Images of every T_w on the factor powers V^{(x) r} and W^{(x) r}
  /// (Kronecker case), indexed like the group; inputs to pair_action.
  std::shared_ptr<const std::vector<Mat>> rep_v, rep_w;

  bool has_abstract() const { return hh != nullptr; }
  const std::vector<Mat>& gens(Flavor f) const {
    return f == Flavor::Q ? calQ : calP;
  }
  const std::vector<SpVec>& hh_gens(Flavor f) const {
    return f == Flavor::Q ? hh_calQ : hh_calP;
  }
  const Scalar& idem_factor(Flavor f) const {
    return f == Flavor::Q ? q_factor : p_factor;
  }
};

/// Build the named family and verify its defining identities exactly:
/// idempotent scaling (calQ_i^2 = q_factor calQ_i, same on the P side),
/// commutation of distant generators, the affine split
/// (calP_i/p_factor + calQ_i/q_factor = 1), label conservation, and — for
/// the Kronecker case — that the abstract generators map onto the embedded
/// ones under T_u (x) T_v  |->  rho_V(T_u) (x) rho_W(T_v) conjugated by the
/// factor shuffle X^{(x) r} -> V^{(x) r} (x) W^{(x) r}.
/// Throws std::length_error when dim X^r exceeds cap_dim.
ProjectorFamily build_family(const std::string& case_name, long r,
                             Scaling scaling = Scaling::legacy,
                             long cap_dim = 65536);

/// Alternating words over letters '1'..'9' (no two equal adjacent letters),
/// every length 0..max_len, ordered by (length, lexicographic).
std::vector<std::string> alternating_words(long n_gens, long max_len);

/// Exact monomial value of a word: the product of the flavor's generators
/// on X^{(x) r} (empty word = identity).
Mat word_value(const ProjectorFamily& fam, Flavor flavor,
               const std::string& word);

/// Action of an abstract pair element on X^{(x) r} (Kronecker case):
/// T_u (x) T_v acts as rho_V(T_u) (x) rho_W(T_v) pulled back through the
/// factor shuffle x_1 ... x_r  |->  v_1 ... v_r (x) w_1 ... w_r.
Mat pair_action(const ProjectorFamily& fam, const SpVec& x);

struct RelationTerm {
  std::string word;
  Scalar coeff;
};

/// A linear relation among monomial words, normalized so the
/// (length, lexicographic)-last word — the pivot — has coefficient 1.
struct Relation {
  Flavor flavor = Flavor::Q;
  Scaling scaling = Scaling::legacy;
  std::vector<RelationTerm> terms;  ///< (length, lex) order; pivot last
  const std::string& pivot() const { return terms.back().word; }
  /// Coefficient of a word (zero when absent).
  Scalar coeff(const std::string& word) const;
};

/// Result of the word-relation search.
struct RelationSearch {
  Flavor flavor = Flavor::Q;
  Scaling scaling = Scaling::legacy;
  std::vector<std::string> basis_words;  ///< independent words, (length, lex)
  std::vector<Relation> relations;       ///< one per dependent word, by pivot
  /// True when some whole length level produced no independent word; the
  /// span of basis_words is then closed under right multiplication by the
  /// generators, so it is the entire algebra and dim = basis_words.size().
  bool saturated = false;
};

/// Evaluate every alternating word of length <= max_len in the family's
/// defining realization (End(X^{(x) r}) for the single case, the Hecke pair
/// algebra for the Kronecker case, where its dimension claims live) and
/// return the kernel of the evaluation map.
///
/// Exactness guarantee.  Accept/reject decisions are made by rank over the
/// rationals at a probe point q = q0, which is cheap; the result is then
/// certified symbolically, so no claim rests on the probe alone:
///   * accepted words are independent because their specialization at q0
///     already is (specialization can only lower rank);
///   * each directly-dependent word's coordinates are solved from the
///     probe-pivot coordinate submatrix (invertible at q0, hence
///     invertible) and re-verified as an exact polynomial identity after
///     clearing denominators;
///   * dependent words whose parent word is itself dependent are resolved
///     by exact coordinate recursion from those verified columns, and a
///     deterministic sample of them is re-certified by ambient evaluation.
/// If any verification fails the search restarts at the next probe point.
RelationSearch find_relations(const ProjectorFamily& fam, Flavor flavor,
                              long max_len);

struct WordAlgebraImpl;

/// Unital closure of the flavor's generators in the family's defining
/// realization, presented by an exact monomial basis.  Built by the same
/// probe-guided, symbolically certified search as find_relations, which
/// avoids echelonizing wide rational-function rows in the ambient space;
/// membership queries solve on the probe-pivot coordinates and verify the
/// candidate combination exactly, so express/contains answers are exact in
/// both directions.
class WordAlgebra {
 public:
  explicit WordAlgebra(std::shared_ptr<WordAlgebraImpl> impl);

  long dim() const;
  const AmbientPtr& ambient() const;
  long n_gens() const;
  /// Basis words, (length, lex)-ordered, prefix-closed; index 0 is the unit.
  const std::vector<std::string>& basis_words() const;
  const SpVec& basis_value(long i) const;
  /// True when the search closed: some whole word level produced no
  /// independent word, so the span is the entire generated algebra.
  bool saturated() const;

  /// Exact coordinates of v over the basis; nullopt when v is provably
  /// outside the span (the unique pivot-coordinate candidate fails exact
  /// verification).
  std::optional<std::vector<Scalar>> express(const SpVec& v) const;
  bool contains(const SpVec& v) const;
  /// Assemble an element from coordinates (short vectors allowed).
  SpVec element(const std::vector<Scalar>& coords) const;

  /// Right multiplication by generator g as a dim x dim matrix over the
  /// basis: column j holds the coordinates of basis_word_j * gen_g.
  const Mat& rmul(long g) const;
  /// Coordinates of x * y via the right-multiplication tables.
  std::vector<Scalar> mul_coords(const std::vector<Scalar>& x,
                                 const std::vector<Scalar>& y) const;

 private:
  std::shared_ptr<WordAlgebraImpl> impl_;
};

WordAlgebra algebra(const ProjectorFamily& fam, Flavor flavor = Flavor::Q,
                    long max_dim = 200);

/// Exact re-evaluation of a relation in the family's defining realization:
/// throws std::logic_error unless sum_w coeff_w * value(w) is exactly zero.
/// The relation's scaling must match the family's.
void certify_relation(const ProjectorFamily& fam, const Relation& rel);

/// One term of the rescaling chain.
struct RescaledTerm {
  std::string word;
  Scalar legacy;  ///< input coefficient a'
  Scalar bar;     ///< fhat^(L - l) * a'
  Scalar formal;  ///< (-(q-1)^2/q)^(L - l) * bar  ==  (f_side/f)^(L - l) * a'
  Scalar hat;     ///< fhat * a', with the documented per-word exceptions
};

struct RescaledRelation {
  Flavor flavor = Flavor::Q;
  std::string pivot;
  Scalar fhat;  ///< (-q/(q-1)^2) * f_side / f for the relation's flavor
  std::vector<RescaledTerm> terms;  ///< same order as the input relation
};

/// Exact legacy -> formal rescaling chain for a gl2_cubic relation with
/// pivot length L:
///   fhat     = (-q/(q-1)^2) * (f_side / f)
///   bar_s    = fhat^(L-l(s)) * legacy_s
///   formal_s = (-(q-1)^2/q)^(L-l(s)) * bar_s
///   hat_s    = fhat * legacy_s
/// with the reference tables' exceptions: on the Q side the word 121212121
/// takes fhat^2, and on the P side the words "" and "2" take
/// (-q/(q-1)^2)^2 in place of fhat.  (For those two words the alternative
/// convention hat = legacy appears in prose form elsewhere; the tables this
/// library is verified against carry the (-q/(q-1)^2)^2 factor, and that is
/// what is implemented.)  Requires a legacy-scaling relation from the
/// gl2_cubic case.
RescaledRelation rescale_relation(const Relation& rel,
                                  const ProjectorFamily& fam);

/// The formal-scaling Relation (coefficient formal_s per term).
Relation formal_relation(const RescaledRelation& r);

/// Shape report row for one non-pivot word: the hat coefficient is checked
/// to be a Laurent polynomial, palindromic about the center of its support;
/// vec lists its coefficients from the center slot outward (upper half),
/// negated if needed so vec[0] > 0.
struct PositivityRow {
  std::string word;                  ///< (length, lex)-first word of the row
  std::vector<std::string> aliases;  ///< later words with this same vector
  std::vector<Rat> vec;
  bool positive = false;        ///< all entries > 0
  bool nonincreasing = false;   ///< vec[k] >= vec[k+1] for every k
  /// A positive nonincreasing prefix followed by an all-<= 0 tail (the tail
  /// may be empty, so positive nonincreasing rows qualify too).
  bool unimodal_except_tail = false;
};

struct PositivityReport {
  Flavor flavor = Flavor::Q;
  /// One row per distinct vector among the non-pivot terms (mirror-image
  /// words often share a coefficient exactly; they collapse into one row,
  /// the duplicates listed as aliases).
  std::vector<PositivityRow> rows;
  std::vector<std::string> exceptions;  ///< unimodal-except-tail, not positive
};

/// Recentre every non-pivot hat coefficient and classify its shape.
/// Throws std::domain_error on a non-polynomial or non-palindromic
/// coefficient.
PositivityReport positivity_report(const RescaledRelation& rel);

/// Result of aligning a found relation with an externally published
/// coefficient table (same words, possibly different generator scaling and
/// base-parameter convention).
struct AlignmentResult {
  bool matched = false;
  /// Which reading matched: "q" (table as-is), "table q->q^2", or
  /// "ours q->q^2".
  std::string substitution;
  /// Per-letter gauge: ours(w) = (table(w)/table(pivot)) * gauge^(L - l(w)).
  Scalar gauge;
  std::vector<std::string> notes;  ///< support/coefficient mismatches
};

/// Try to match rel against table (word -> published coefficient, any
/// overall scale) under the substitution candidates and a per-letter gauge
/// factor.  Never throws: a failed match reports its mismatches.
AlignmentResult align_relation(const Relation& rel,
                               const std::map<std::string, Scalar>& table);

}  // namespace nsq
