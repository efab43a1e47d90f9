#include "nsq/hecke.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace nsq {

namespace {

long inversions(const std::vector<int>& p) {
  long n = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++n;
  return n;
}

}  // namespace

SymmetricGroup::SymmetricGroup(long r) : r_(r) {
  if (r < 1 || r > 8)
    throw std::invalid_argument("SymmetricGroup: rank out of range");
  std::vector<int> p(static_cast<std::size_t>(r));
  std::iota(p.begin(), p.end(), 0);
  do {
    perms_.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  // next_permutation yields lexicographic order; refine by length first.
  std::stable_sort(perms_.begin(), perms_.end(),
                   [](const std::vector<int>& a, const std::vector<int>& b) {
                     return inversions(a) < inversions(b);
                   });

  std::map<std::vector<int>, long> index;
  for (std::size_t w = 0; w < perms_.size(); ++w) {
    len_.push_back(inversions(perms_[w]));
    index[perms_[w]] = static_cast<long>(w);
  }

  right_.assign(static_cast<std::size_t>(r - 1),
                std::vector<long>(perms_.size()));
  left_.assign(static_cast<std::size_t>(r - 1),
               std::vector<long>(perms_.size()));
  for (int i = 1; i < r; ++i) {
    for (std::size_t w = 0; w < perms_.size(); ++w) {
      std::vector<int> q = perms_[w];
      std::swap(q[static_cast<std::size_t>(i - 1)],
                q[static_cast<std::size_t>(i)]);
      right_[static_cast<std::size_t>(i - 1)][w] = index.at(q);
      q = perms_[w];
      for (auto& v : q) {
        if (v == i - 1)
          v = i;
        else if (v == i)
          v = i - 1;
      }
      left_[static_cast<std::size_t>(i - 1)][w] = index.at(q);
    }
  }

  // Reduced words, shortest elements first: w = (w s_i) s_i for the first
  // right descent i, so word(w) = word(w s_i) + [i].
  word_.resize(perms_.size());
  for (std::size_t w = 1; w < perms_.size(); ++w) {
    const std::vector<int>& pw = perms_[w];
    int i = 0;
    for (int k = 1; k < r; ++k)
      if (pw[static_cast<std::size_t>(k - 1)] > pw[static_cast<std::size_t>(k)]) {
        i = k;
        break;
      }
    long shorter = right_[static_cast<std::size_t>(i - 1)][w];
    word_[w] = word_[static_cast<std::size_t>(shorter)];
    word_[w].push_back(i);
  }
}

long SymmetricGroup::index_of(const std::vector<int>& one_line) const {
  for (std::size_t w = 0; w < perms_.size(); ++w)
    if (perms_[w] == one_line) return static_cast<long>(w);
  throw std::invalid_argument("SymmetricGroup::index_of: not a permutation");
}

HeckeAlgebra::HeckeAlgebra(long r, Scalar p) : g_(r), p_(std::move(p)) {
  const std::size_t n = static_cast<std::size_t>(g_.size());
  table_.assign(n, std::vector<SpVec>(n));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      SpVec x;
      x.push(static_cast<long>(u), Scalar::one());
      for (int letter : g_.reduced_word(static_cast<long>(v)))
        x = right_gen_apply(x, letter);
      table_[u][v] = std::move(x);
    }
  }
}

SpVec HeckeAlgebra::right_gen_apply(const SpVec& x, int i) const {
  Vec acc(static_cast<std::size_t>(g_.size()), Scalar::zero());
  const Scalar pm1 = p_ - Scalar::one();
  for (const auto& e : x.entries()) {
    long ws = g_.right_gen(e.idx, i);
    if (g_.length(ws) > g_.length(e.idx)) {
      acc[static_cast<std::size_t>(ws)] += e.val;
    } else {
      acc[static_cast<std::size_t>(ws)] += p_ * e.val;
      acc[static_cast<std::size_t>(e.idx)] += pm1 * e.val;
    }
  }
  return SpVec::from_dense(acc);
}

SpVec HeckeAlgebra::mul(const SpVec& x, const SpVec& y) const {
  Vec acc(static_cast<std::size_t>(g_.size()), Scalar::zero());
  for (const auto& ex : x.entries()) {
    for (const auto& ey : y.entries()) {
      Scalar c = ex.val * ey.val;
      for (const auto& et : basis_product(ex.idx, ey.idx).entries())
        acc[static_cast<std::size_t>(et.idx)] += c * et.val;
    }
  }
  return SpVec::from_dense(acc);
}

Mat HeckeAlgebra::right_gen_matrix(int i) const {
  Mat m(g_.size(), g_.size());
  for (long w = 0; w < g_.size(); ++w) {
    SpVec e;
    e.push(w, Scalar::one());
    for (const auto& ent : right_gen_apply(e, i).entries())
      m.at(ent.idx, w) = ent.val;
  }
  return m;
}

std::vector<Mat> HeckeAlgebra::representation(
    const std::vector<Mat>& gen_images) const {
  if (static_cast<long>(gen_images.size()) != g_.r() - 1)
    throw std::invalid_argument("HeckeAlgebra::representation: need r-1 images");
  if (gen_images.empty()) return {Mat::identity(1)};
  std::vector<Mat> rep(static_cast<std::size_t>(g_.size()));
  rep[0] = Mat::identity(gen_images[0].rows());
  // Group indices are sorted by length, so the word-prefix element of w
  // (w with its last letter dropped) is already filled in.
  for (long w = 1; w < g_.size(); ++w) {
    const std::vector<int>& word = g_.reduced_word(w);
    int last = word.back();
    long prefix = g_.right_gen(w, last);
    rep[static_cast<std::size_t>(w)] =
        rep[static_cast<std::size_t>(prefix)] *
        gen_images[static_cast<std::size_t>(last - 1)];
  }
  return rep;
}

SpVec HeckePairAmbient::unit() const {
  SpVec u;
  u.push(0, Scalar::one());
  return u;
}

SpVec HeckePairAmbient::mul(const SpVec& a, const SpVec& b) const {
  const long n = h_->dim();
  Vec acc(static_cast<std::size_t>(n * n), Scalar::zero());
  for (const auto& ea : a.entries()) {
    const long a1 = ea.idx / n, a2 = ea.idx % n;
    for (const auto& eb : b.entries()) {
      const long b1 = eb.idx / n, b2 = eb.idx % n;
      const Scalar c = ea.val * eb.val;
      for (const auto& e1 : h_->basis_product(a1, b1).entries()) {
        const Scalar c1 = c * e1.val;
        for (const auto& e2 : h_->basis_product(a2, b2).entries())
          acc[static_cast<std::size_t>(e1.idx * n + e2.idx)] += c1 * e2.val;
      }
    }
  }
  return SpVec::from_dense(acc);
}

std::string HeckePairAmbient::describe() const {
  return "Hecke pair algebra H_" + std::to_string(h_->r()) + " (x) H_" +
         std::to_string(h_->r());
}

}  // namespace nsq
