#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsq/expr.hpp"
#include "nsq/golden.hpp"
#include "nsq/hecke.hpp"
#include "nsq/nonstd.hpp"

using namespace nsq;

namespace {

Scalar S(const std::string& text) { return parse_scalar(text); }

SpVec basis_el(long idx, const Scalar& c = Scalar::one()) {
  SpVec v;
  v.push(idx, c);
  return v;
}

/// Exchange the letters of a two-generator word (1 <-> 2).
std::string swapped(const std::string& w) {
  std::string out = w;
  for (char& c : out) c = c == '1' ? '2' : '1';
  return out;
}

std::map<std::string, Scalar> as_map(const Relation& rel) {
  std::map<std::string, Scalar> m;
  for (const RelationTerm& t : rel.terms) m[t.word] = t.coeff;
  return m;
}

const Relation& by_pivot(const RelationSearch& search, const std::string& w) {
  for (const Relation& rel : search.relations)
    if (rel.pivot() == w) return rel;
  throw std::out_of_range("no relation with pivot " + w);
}

const PositivityRow& row_of(const PositivityReport& rep, const std::string& w) {
  for (const PositivityRow& row : rep.rows)
    if (row.word == w) return row;
  throw std::out_of_range("no positivity row for word '" + w + "'");
}

}  // namespace

TEST_CASE("symmetric group bookkeeping is exact") {
  SymmetricGroup s4(4);
  CHECK(s4.size() == 24);
  CHECK(s4.length(0) == 0);

  // Indices sort by (length, lexicographic one-line); the last element is
  // the longest one.
  long longest = s4.size() - 1;
  CHECK(s4.length(longest) == 6);
  CHECK(s4.perm(longest) == std::vector<int>{3, 2, 1, 0});

  for (long w = 0; w < s4.size(); ++w) {
    const std::vector<int>& word = s4.reduced_word(w);
    CHECK(static_cast<long>(word.size()) == s4.length(w));
    // Rebuild the one-line form by applying the word's position swaps.
    std::vector<int> line{0, 1, 2, 3};
    for (int i : word) std::swap(line[i - 1], line[i]);
    CHECK(line == s4.perm(w));
    CHECK(s4.index_of(line) == w);
  }

  // Generator action: right multiplication swaps positions, left swaps
  // values.
  SymmetricGroup s3(3);
  long t = s3.index_of({1, 0, 2});  // s_1
  CHECK(s3.right_gen(t, 2) == s3.index_of({1, 2, 0}));
  CHECK(s3.left_gen(t, 2) == s3.index_of({2, 0, 1}));
}

TEST_CASE("Hecke algebra multiplication satisfies its presentation") {
  Scalar p = S("q^(2)");
  HeckeAlgebra h(3, p);
  CHECK(h.dim() == 6);
  const SymmetricGroup& g = h.group();
  long s1 = g.index_of({1, 0, 2});
  long s2 = g.index_of({0, 2, 1});

  // Quadratic relation (T_i - p)(T_i + 1) = 0.
  for (long si : {s1, s2}) {
    SpVec sq = h.mul(basis_el(si), basis_el(si));
    SpVec expect = SpVec::axpy(basis_el(0, p), p - Scalar::one(), basis_el(si));
    CHECK(sq == expect);
  }

  // Braid relation through the precomputed table.
  SpVec b1 = h.mul(h.mul(basis_el(s1), basis_el(s2)), basis_el(s1));
  SpVec b2 = h.mul(h.mul(basis_el(s2), basis_el(s1)), basis_el(s2));
  CHECK(b1 == b2);
  CHECK(b1 == basis_el(g.size() - 1));  // reduced product of the longest word

  // Associativity spot-check on non-basis elements.
  SpVec a = SpVec::axpy(basis_el(s1), S("q-1"), basis_el(g.size() - 1));
  SpVec b = SpVec::axpy(basis_el(0), Scalar::q_pow(-1), basis_el(s2));
  SpVec c = SpVec::axpy(basis_el(s2), Scalar(Rat(3)), basis_el(s1));
  CHECK(h.mul(h.mul(a, b), c) == h.mul(a, h.mul(b, c)));

  // representation() with the left regular action reproduces the table.
  std::vector<Mat> lmul;
  for (long si : {s1, s2}) {
    Mat m(h.dim(), h.dim());
    for (long u = 0; u < h.dim(); ++u) {
      SpVec col = h.mul(basis_el(si), basis_el(u));
      for (const SpEntry& e : col.entries()) m.at(e.idx, u) = e.val;
    }
    lmul.push_back(std::move(m));
  }
  std::vector<Mat> rep = h.representation(lmul);
  for (long w = 0; w < h.dim(); ++w)
    for (long u = 0; u < h.dim(); ++u) {
      SpVec col = h.mul(basis_el(w), basis_el(u));
      for (long i = 0; i < h.dim(); ++i)
        CHECK(rep[static_cast<std::size_t>(w)].at(i, u) == col.at(i));
    }
}

TEST_CASE("pair ambient multiplies componentwise") {
  auto h = std::make_shared<HeckeAlgebra>(3, S("q^(2)"));
  HeckePairAmbient hh(h);
  long n = h->dim();
  CHECK(hh.coord_dim() == n * n);
  const SymmetricGroup& g = h->group();
  long s1 = g.index_of({1, 0, 2});
  long s2 = g.index_of({0, 2, 1});
  // (T_1 (x) T_2)(T_2 (x) T_1) = T_1 T_2 (x) T_2 T_1.
  SpVec x = basis_el(s1 * n + s2);
  SpVec y = basis_el(s2 * n + s1);
  SpVec prod = hh.mul(x, y);
  long u = g.index_of({1, 2, 0});  // s1 s2
  long v = g.index_of({2, 0, 1});  // s2 s1
  CHECK(prod == basis_el(u * n + v));
  CHECK(hh.mul(hh.unit(), x) == x);
}

TEST_CASE("alternating words enumerate by length then lexicographically") {
  std::vector<std::string> w2 = alternating_words(2, 3);
  CHECK(w2 == std::vector<std::string>{"", "1", "2", "12", "21", "121", "212"});
  std::vector<std::string> w3 = alternating_words(3, 2);
  CHECK(w3 == std::vector<std::string>{"", "1", "2", "3", "12", "13", "21",
                                       "23", "31", "32"});
  CHECK_THROWS_AS(alternating_words(0, 3), std::invalid_argument);
}

TEST_CASE("cubic family: construction identities and the r = 2 algebra") {
  ProjectorFamily fam = build_family("ex1", 2);
  CHECK(fam.case_name == "gl2_cubic");
  CHECK(fam.dim_x == 4);
  CHECK(fam.dim == 16);
  CHECK(fam.calQ.size() == 1);
  CHECK(fam.q_factor == S("q^(5)+q+q^(-1)+q^(-5)"));
  CHECK(fam.q_factor == fam.p_factor);
  CHECK_FALSE(fam.has_abstract());

  // The r = 2 algebra is spanned by {1, Q_1}.
  WordAlgebra span = algebra(fam);
  CHECK(span.dim() == 2);
  CHECK(span.saturated());
  RelationSearch search = find_relations(fam, Flavor::Q, 4);
  CHECK(search.saturated);
  CHECK(search.basis_words == std::vector<std::string>{"", "1"});
  CHECK(search.relations.empty());

  // Formal scaling splits the common factor by sign class.
  ProjectorFamily formal = build_family("gl2_cubic", 2, Scaling::formal);
  CHECK(formal.q_factor == formal.pair.f_q);
  CHECK(formal.p_factor == formal.pair.f_p);
  CHECK_FALSE(formal.q_factor == formal.p_factor);

  CHECK_THROWS_AS(build_family("gl2_quartic", 2), std::invalid_argument);
  CHECK_THROWS_AS(build_family("ex1", 9), std::length_error);
}

TEST_CASE("cubic family: word relations match the reference coefficients") {
  ProjectorFamily fam = build_family("gl2_cubic", 3);
  CHECK(fam.dim == 64);

  // The sign-split generators span the same algebra: each P generator lies
  // in the Q closure, and calP_i = f - calQ_i makes the reverse containment
  // automatic.
  WordAlgebra span = algebra(fam);
  CHECK(span.dim() == 21);
  CHECK(span.saturated());
  for (const Mat& p : fam.calP) CHECK(span.contains(SpVec::flatten(p)));

  RelationSearch qsearch = find_relations(fam, Flavor::Q, 11);
  CHECK(qsearch.saturated);
  CHECK(qsearch.basis_words == alternating_words(2, 10));
  REQUIRE(qsearch.relations.size() == 2);
  // Closure and word search agree on the monomial basis.
  CHECK(span.basis_words() == qsearch.basis_words);

  const Relation& qrel = qsearch.relations[0];
  CHECK(qrel.pivot() == "12121212121");
  std::map<std::string, Scalar> qgold =
      load_golden_scalars("golden/gl2_cubic/qreln.json");
  CHECK(as_map(qrel) == qgold);
  // The companion relation is the generator swap 1 <-> 2 of the first.
  std::map<std::string, Scalar> mirrored;
  for (const auto& [w, c] : as_map(qrel)) mirrored[swapped(w)] = c;
  CHECK(as_map(qsearch.relations[1]) == mirrored);
  certify_relation(fam, qsearch.relations[1]);

  RelationSearch psearch = find_relations(fam, Flavor::P, 11);
  CHECK(psearch.saturated);
  CHECK(psearch.basis_words == alternating_words(2, 10));
  REQUIRE(psearch.relations.size() == 2);
  const Relation& prel = psearch.relations[1];
  CHECK(prel.pivot() == "21212121212");
  std::map<std::string, Scalar> pgold =
      load_golden_scalars("golden/gl2_cubic/preln.json");
  CHECK(as_map(prel) == pgold);
  mirrored.clear();
  for (const auto& [w, c] : as_map(prel)) mirrored[swapped(w)] = c;
  CHECK(as_map(psearch.relations[0]) == mirrored);
}

TEST_CASE("cubic family: rescaling chain and positivity tables") {
  ProjectorFamily fam = build_family("gl2_cubic", 3);
  RelationSearch qsearch = find_relations(fam, Flavor::Q, 11);
  RelationSearch psearch = find_relations(fam, Flavor::P, 11);
  const Relation& qrel = qsearch.relations[0];
  const Relation& prel = psearch.relations[1];

  RescaledRelation qresc = rescale_relation(qrel, fam);
  RescaledRelation presc = rescale_relation(prel, fam);

  // The formal-scaling coefficients agree with an independent relation
  // search over the formally scaled generators.
  ProjectorFamily formal = build_family("gl2_cubic", 3, Scaling::formal);
  RelationSearch fsearch = find_relations(formal, Flavor::Q, 11);
  REQUIRE(fsearch.relations.size() == 2);
  CHECK(as_map(formal_relation(qresc)) == as_map(fsearch.relations[0]));

  // Hat coefficient tables.
  PositivityReport qrep = positivity_report(qresc);
  CHECK(qrep.rows.size() == 5);
  CHECK(qrep.exceptions.empty());
  std::map<std::string, std::vector<Rat>> avec =
      load_golden_int_vectors("golden/gl2_cubic/avec.json");
  CHECK(avec.size() == 5);
  for (const auto& [word, vec] : avec) {
    const PositivityRow& row = row_of(qrep, word);
    CHECK(row.vec == vec);
    CHECK(row.positive);
    CHECK(row.nonincreasing);
  }

  PositivityReport prep = positivity_report(presc);
  // 21 non-pivot terms; the five even-length mirror pairs carry equal
  // coefficients and collapse, leaving one row per distinct vector.
  CHECK(prep.rows.size() == 16);
  CHECK(row_of(prep, "1212").aliases == std::vector<std::string>{"2121"});
  CHECK(row_of(prep, "121").aliases.empty());
  CHECK(prep.exceptions ==
        std::vector<std::string>{"121", "1212", "21212"});
  for (const std::string& w : prep.exceptions) {
    const PositivityRow& row = row_of(prep, w);
    CHECK(row.unimodal_except_tail);
    CHECK_FALSE(row.positive);
  }
  std::map<std::string, std::vector<Rat>> bvec =
      load_golden_int_vectors("golden/gl2_cubic/bvec.json");
  CHECK(bvec.size() == 15);
  for (const auto& [word, vec] : bvec)
    CHECK(row_of(prep, word).vec == vec);

  CHECK_THROWS_AS(rescale_relation(formal_relation(qresc), fam),
                  std::invalid_argument);
}

TEST_CASE("kronecker family: pair realization gates the construction") {
  ProjectorFamily fam = build_family("ex2", 2);
  CHECK(fam.case_name == "kronecker");
  CHECK(fam.dim == 16);
  CHECK(fam.pair.f == S("q^(2)+2+q^(-2)"));
  REQUIRE(fam.has_abstract());
  CHECK(fam.hecke->dim() == 2);

  // The abstract generator reproduces the matrix generator (checked at
  // construction); its support is {1 (x) 1, T (x) 1, 1 (x) T, T (x) T}.
  CHECK(fam.hh_calQ[0].nnz() == 4);
  CHECK(pair_action(fam, fam.hh->unit()) == Mat::identity(16));

  WordAlgebra span = algebra(fam);
  CHECK(span.dim() == 2);

  ProjectorFamily fam3 = build_family("kronecker", 3);
  CHECK(fam3.dim == 64);
  CHECK(fam3.hecke->dim() == 6);
}

TEST_CASE("kronecker family: the tensor-power algebra has dimension 114") {
  ProjectorFamily fam = build_family("kronecker", 4);
  CHECK(fam.dim == 256);
  CHECK(fam.calQ.size() == 3);

  WordAlgebra span = algebra(fam, Flavor::Q, 150);
  CHECK(span.dim() == 114);
  CHECK(span.saturated());
  long longest = 0;
  for (const auto& w : span.basis_words())
    longest = std::max(longest, static_cast<long>(w.size()));
  MESSAGE("longest accepted word: ", longest);
  for (const SpVec& p : fam.hh_calP) CHECK(span.contains(p));
}

TEST_CASE("kronecker family: relation table alignment (reported, not forced)") {
  ProjectorFamily fam = build_family("kronecker", 4);
  RelationSearch search = find_relations(fam, Flavor::Q, 7);
  CHECK(search.basis_words.size() == 114);

  const Relation& rel = by_pivot(search, "2321232");
  certify_relation(fam, rel);
  MESSAGE("relation support: ", rel.terms.size());

  std::map<std::string, Scalar> table =
      load_golden_scalars("golden/kronecker/b4reln.json");
  AlignmentResult res = align_relation(rel, table);
  for (const std::string& note : res.notes) MESSAGE(note);
  WARN_MESSAGE(res.matched,
               "published coefficient table uses an undetermined scaling; "
               "alignment is informational");
  if (res.matched)
    MESSAGE("matched with substitution ", res.substitution, ", gauge ",
            res.gauge.str());
}
