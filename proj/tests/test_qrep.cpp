#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "nsq/algebra.hpp"
#include "nsq/expr.hpp"
#include "nsq/golden.hpp"
#include "nsq/qrep.hpp"

using namespace nsq;

namespace {

Scalar S(const std::string& text) { return parse_scalar(text); }

Vec basis_vec(long n, long i) {
  Vec v(static_cast<std::size_t>(n), Scalar::zero());
  v[static_cast<std::size_t>(i)] = Scalar::one();
  return v;
}

}  // namespace

TEST_CASE("irreducible modules satisfy the quantized gl2 relations") {
  CHECK_THROWS_AS(build_irrep(0, 1), std::invalid_argument);

  GL2Irrep fund = build_irrep(1, 0);
  CHECK(fund.dim == 2);
  CHECK(fund.F.at(1, 0) == Scalar::one());
  CHECK(fund.E.at(0, 1) == Scalar::one());  // [1][1] = 1

  GL2Irrep det = build_irrep(1, 1);
  CHECK(det.dim == 1);
  CHECK(det.E.is_zero());
  CHECK(det.F.is_zero());
  CHECK(det.K1.at(0, 0) == Scalar::q_pow(1));

  GL2Irrep x = build_irrep(3, 0);
  CHECK(x.dim == 4);
  // Weights step down by (-1,+1): K1 = diag(q^3..q^0), K2 = diag(q^0..q^3).
  for (long i = 0; i < 4; ++i) {
    CHECK(x.K1.at(i, i) == Scalar::q_pow(3 - i));
    CHECK(x.K2.at(i, i) == Scalar::q_pow(i));
    CHECK(x.K.at(i, i) == Scalar::q_pow(3 - 2 * i));
  }
  // E x_i = [i][m-i+1] x_{i-1}: [1][3], [2][2], [3][1].
  CHECK(x.E.at(0, 1) == S("q^(2)+1+q^(-2)"));
  CHECK(x.E.at(1, 2) == S("(q+q^(-1))*(q+q^(-1))"));
  CHECK(x.E.at(2, 3) == S("q^(2)+1+q^(-2)"));

  // Independent re-check of the defining relations for (3,0).
  Scalar qmq = Scalar::q_pow(1) - Scalar::q_pow(-1);
  CHECK(x.E * x.F - x.F * x.E == (x.K - x.Kinv).mul_scalar(qmq.inv()));
  CHECK(x.K * x.E == (x.E * x.K).mul_scalar(Scalar::q_pow(2)));
  CHECK(x.K * x.F == (x.F * x.K).mul_scalar(Scalar::q_pow(-2)));

  // Casimir acts by (q^{m+1} + q^{-m-1}) / (q - q^{-1})^2 with m = 3.
  Mat cas = x.F * x.E + (x.K.mul_scalar(Scalar::q_pow(1)) +
                         x.Kinv.mul_scalar(Scalar::q_pow(-1)))
                            .mul_scalar((qmq * qmq).inv());
  CHECK(cas == Mat::identity(4).mul_scalar((Scalar::q_pow(4) + Scalar::q_pow(-4)) /
                                           (qmq * qmq)));

  GL2Irrep shifted = build_irrep(5, 2);
  CHECK(shifted.dim == 4);
  CHECK(shifted.E == x.E);  // E, F depend only on m1 - m2
  CHECK(shifted.K == x.K);
  CHECK(shifted.K1.at(0, 0) == Scalar::q_pow(5));
}

TEST_CASE("fundamental braiding matches the hand-computed matrix") {
  RHat r = build_rhat_single(build_irrep(1, 0));
  CHECK(r.dim_x == 2);
  Mat expect(4, 4);
  expect.at(0, 0) = S("q^(1/2)");
  expect.at(1, 1) = S("q^(1/2) - q^(-3/2)");
  expect.at(1, 2) = S("q^(-1/2)");
  expect.at(2, 1) = S("q^(-1/2)");
  expect.at(3, 3) = S("q^(1/2)");
  CHECK(r.matrix == expect);

  REQUIRE(r.eigenvalues.size() == 2);
  CHECK(r.eigenvalues[0].sign == 1);
  CHECK(r.eigenvalues[0].half_exp == 1);
  CHECK(r.eigenvalues[0].mult == 3);
  CHECK(r.eigenvalues[1].sign == -1);
  CHECK(r.eigenvalues[1].half_exp == -3);
  CHECK(r.eigenvalues[1].mult == 1);
  CHECK(r.eigenvalues[1].value == S("-q^(-3/2)"));

  // The negative projector fixes the q-antisymmetric vector
  // w = x0(x)x1 - q x1(x)x0 and kills nothing else.
  ProjectorPair pp = spectral_projectors(r);
  Vec w(4, Scalar::zero());
  w[1] = Scalar::one();
  w[2] = -Scalar::q_pow(1);
  CHECK(pp.Q.apply(w) == w);
  CHECK(is_zero(pp.P.apply(w)));
  CHECK(pp.P.trace() == Scalar(3));
  CHECK(pp.Q.trace() == Scalar(1));
}

TEST_CASE("quartic braiding has the expected exact spectrum") {
  RHat r = build_rhat_single(build_irrep(3, 0));
  REQUIRE(r.eigenvalues.size() == 4);
  const long expected_half[4] = {9, -3, -11, -15};
  const int expected_sign[4] = {1, -1, 1, -1};
  const long expected_mult[4] = {7, 5, 3, 1};
  for (int i = 0; i < 4; ++i) {
    CHECK(r.eigenvalues[i].sign == expected_sign[i]);
    CHECK(r.eigenvalues[i].half_exp == expected_half[i]);
    CHECK(r.eigenvalues[i].mult == expected_mult[i]);
  }
  CHECK(r.eigenvalues[0].value == S("q^(9/2)"));
  CHECK(r.eigenvalues[1].value == S("-q^(-3/2)"));
  CHECK(r.eigenvalues[2].value == S("q^(-11/2)"));
  CHECK(r.eigenvalues[3].value == S("-q^(-15/2)"));

  // Independent multiplicity oracle: numeric ranks at q = 2.
  Mat id = Mat::identity(16);
  for (const auto& e : r.eigenvalues)
    CHECK(rank_at_q(r.matrix - id.mul_scalar(e.value), Rat(2)) == 16 - e.mult);

  // Highest weight vector is fixed up to q^{9/2}.
  Vec top = basis_vec(16, 0);
  CHECK(r.matrix.apply(top) == mul_scalar(top, S("q^(9/2)")));
}

TEST_CASE("quartic rescaled projector reproduces the reference figure") {
  RHat r = build_rhat_single(build_irrep(3, 0));
  ProjectorPair pp = spectral_projectors(r);

  CHECK(pp.f == S("(q^(4)+1)*(q^(4)-q^(2)+1)*(q^(2)+1)/q^(5)"));
  // Spot value quoted with the figure: row 2, column 5.
  CHECK(pp.calP.at(1, 4) == S("(q^(4)+1)/q^(2)"));

  Mat golden = load_golden_matrix("golden/gl2_cubic/calP.json");
  REQUIRE(golden.rows() == 16);
  CHECK(pp.calP == golden);

  // Same common factor rescales Q to a Laurent-polynomial matrix.
  CHECK(pp.calQ == pp.Q.mul_scalar(pp.f));
  CHECK(pp.calP + pp.calQ == Mat::identity(16).mul_scalar(pp.f));

  CHECK(pp.P.trace() == Scalar(10));
  CHECK(pp.Q.trace() == Scalar(6));
}

TEST_CASE("formal scaling factors match the frozen expansions") {
  RHat r = build_rhat_single(build_irrep(3, 0));
  ProjectorPair legacy = spectral_projectors(r);

  // Eigenvalue-difference products, written out explicitly.
  Scalar q1 = S("q^(9/2)"), q2 = S("-q^(-3/2)"), q3 = S("q^(-11/2)"),
         q4 = S("-q^(-15/2)");
  CHECK(legacy.f_p == (q1 - q2) * (q1 - q3) * (q1 - q4) * (q3 - q1) * (q3 - q2) *
                          (q3 - q4));
  CHECK(legacy.f_q == (q2 - q1) * (q2 - q3) * (q2 - q4) * (q4 - q1) * (q4 - q3) *
                          (q4 - q2));

  auto table = load_golden_scalars("golden/gl2_cubic/scaling.json");
  CHECK(legacy.f == table.at("f"));
  Scalar qm1 = Scalar::q_pow(1) - Scalar::one();
  Scalar pref = -Scalar::q_pow(1) / (qm1 * qm1);
  CHECK(pref * legacy.f_p / legacy.f == table.at("fhat_p"));
  CHECK(pref * legacy.f_q / legacy.f == table.at("fhat_q"));

  ProjectorPair formal = spectral_projectors(r, Scaling::formal);
  CHECK(formal.calP == formal.P.mul_scalar(formal.f_p));
  CHECK(formal.calQ == formal.Q.mul_scalar(formal.f_q));
  CHECK(formal.P == legacy.P);
  CHECK(formal.f == legacy.f);
}

TEST_CASE("kronecker braiding of two fundamentals") {
  GL2Irrep v = build_irrep(1, 0);
  RHat rx = build_rhat_kronecker(v, v);
  CHECK(rx.dim_x == 4);
  REQUIRE(rx.eigenvalues.size() == 3);
  CHECK(rx.eigenvalues[0].value == S("q"));
  CHECK(rx.eigenvalues[0].mult == 9);
  CHECK(rx.eigenvalues[1].value == S("-q^(-1)"));
  CHECK(rx.eigenvalues[1].mult == 6);
  CHECK(rx.eigenvalues[2].value == S("q^(-3)"));
  CHECK(rx.eigenvalues[2].mult == 1);

  ProjectorPair px = spectral_projectors(rx);
  CHECK(px.P.trace() == Scalar(10));
  CHECK(px.Q.trace() == Scalar(6));

  // Sign-graded tensor decomposition against the factor projectors.
  RHat rv = build_rhat_single(v);
  ProjectorPair pv = spectral_projectors(rv);
  Mat s = middle_swap(2, 2);
  Mat st = s.transpose();
  CHECK(st * s == Mat::identity(16));
  CHECK(rx.matrix == st * Mat::kron(rv.matrix, rv.matrix) * s);
  Mat same = Mat::kron(pv.P, pv.P) + Mat::kron(pv.Q, pv.Q);
  Mat mixed = Mat::kron(pv.P, pv.Q) + Mat::kron(pv.Q, pv.P);
  CHECK(px.P == st * same * s);
  CHECK(px.Q == st * mixed * s);
}

TEST_CASE("kronecker braiding merges coinciding eigenvalue products") {
  RHat r = build_rhat_kronecker(build_irrep(1, 0), build_irrep(2, 0));
  CHECK(r.dim_x == 6);
  // Factor spectra {q^{1/2}(3), -q^{-3/2}(1)} and {q^2(5), -q^{-2}(3), q^{-4}(1)}
  // multiply to five distinct products; the two q^{-7/2} terms merge.
  REQUIRE(r.eigenvalues.size() == 5);
  long total = 0;
  for (const auto& e : r.eigenvalues) total += e.mult;
  CHECK(total == 36);
  bool found_merge = false;
  for (const auto& e : r.eigenvalues)
    if (e.half_exp == -7) {
      CHECK(e.sign == 1);
      CHECK(e.mult == 6);
      found_merge = true;
    }
  CHECK(found_merge);
}

TEST_CASE("factor action embeds two-site operators") {
  RHat r = build_rhat_single(build_irrep(3, 0));
  ProjectorPair pp = spectral_projectors(r);

  CHECK(factor_action(Mat::identity(16), 1, 3, 4) == Mat::identity(64));
  CHECK_THROWS_AS(factor_action(pp.Q, 0, 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(factor_action(pp.Q, 3, 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(factor_action(Mat::identity(3), 1, 3, 4), std::invalid_argument);

  // rank(op (x) I) = rank(op) * dim at either position.
  Mat a1 = factor_action(pp.Q, 1, 3, 4);
  Mat a2 = factor_action(pp.Q, 2, 3, 4);
  CHECK(rref(a1).second == 24);
  CHECK(rref(a2).second == 24);

  // Distant embedded copies commute on four sites.
  Mat b1 = factor_action(r.matrix, 1, 4, 4);
  Mat b3 = factor_action(r.matrix, 3, 4, 4);
  CHECK(b1 * b3 == b3 * b1);
}

TEST_CASE("coproduct action gives a genuine module structure on triples") {
  SiteOps site = site_ops(build_irrep(3, 0));
  SiteOps triple = coproduct_action(site, 3);
  CHECK(triple.dim == 64);

  Scalar qmq = Scalar::q_pow(1) - Scalar::q_pow(-1);
  CHECK(triple.E * triple.F - triple.F * triple.E ==
        (triple.K - triple.Kinv).mul_scalar(qmq.inv()));

  // Highest weight vector of weight 3m = 9.
  Vec top = basis_vec(64, 0);
  CHECK(is_zero(triple.E.apply(top)));
  CHECK(triple.K.apply(top) == mul_scalar(top, Scalar::q_pow(9)));

  // The braiding at each position commutes with the triple action.
  RHat r = build_rhat_single(build_irrep(3, 0));
  for (long i = 1; i <= 2; ++i) {
    Mat b = factor_action(r.matrix, i, 3, 4);
    CHECK(b * triple.E == triple.E * b);
    CHECK(b * triple.F == triple.F * b);
    CHECK(b * triple.K == triple.K * b);
  }
}

TEST_CASE("one-dimensional module braids trivially") {
  RHat r = build_rhat_single(build_irrep(1, 1));
  CHECK(r.dim_x == 1);
  CHECK(r.matrix == Mat::identity(1));
  REQUIRE(r.eigenvalues.size() == 1);
  CHECK(r.eigenvalues[0].value == Scalar::one());
  ProjectorPair pp = spectral_projectors(r);
  CHECK(pp.P == Mat::identity(1));
  CHECK(pp.Q.is_zero());
  CHECK(pp.f == Scalar::one());
  CHECK(pp.f_q == Scalar::one());  // empty product
}

TEST_CASE("construction is deterministic") {
  RHat a = build_rhat_single(build_irrep(3, 0));
  RHat b = build_rhat_single(build_irrep(3, 0));
  CHECK(a.matrix == b.matrix);
  CHECK(a.matrix.str() == b.matrix.str());
  ProjectorPair pa = spectral_projectors(a);
  ProjectorPair pb = spectral_projectors(b);
  CHECK(pa.calP == pb.calP);
  CHECK(pa.f.str() == pb.f.str());
}
