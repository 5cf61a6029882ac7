#include "linkchain/eval.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <stdexcept>
#include <utility>

namespace linkchain {

Tally score(const DepTree& pred, const DepTree& gold,
            const std::vector<bool>& oov_mask) {
  const std::size_t n = gold.size();
  if (pred.size() != n || oov_mask.size() != n)
    throw std::invalid_argument("score: length mismatch");

  std::set<std::pair<int, int>> gold_edges;  // unordered, ROOT as node 0
  for (std::size_t i = 0; i < n; ++i) {
    int a = static_cast<int>(i) + 1, b = gold.heads[i];
    gold_edges.emplace(std::min(a, b), std::max(a, b));
  }

  Tally t;
  t.tokens = static_cast<long long>(n);
  t.exact = true;
  for (std::size_t i = 0; i < n; ++i) {
    int tok = static_cast<int>(i) + 1;
    bool dir = pred.heads[i] == gold.heads[i];
    bool undir = gold_edges.count(
        {std::min(tok, pred.heads[i]), std::max(tok, pred.heads[i])});
    if (dir) ++t.dir_correct;
    if (undir) ++t.undir_correct;
    if (!dir) t.exact = false;
    if (gold.heads[i] == 0) {
      t.root_correct = dir;
    } else {
      ++t.nonroot_total;
      if (dir) ++t.nonroot_correct;
    }
    if (oov_mask[i]) {
      ++t.oov_total;
      if (dir) ++t.oov_correct;
    }
  }
  return t;
}

EvalReport aggregate(const std::vector<Tally>& tallies) {
  if (tallies.empty()) throw std::invalid_argument("aggregate: no tallies");
  long long tok = 0, dir = 0, undir = 0, nr_tok = 0, nr_ok = 0, oov_tok = 0,
            oov_ok = 0, roots = 0, exacts = 0;
  for (const auto& t : tallies) {
    tok += t.tokens;
    dir += t.dir_correct;
    undir += t.undir_correct;
    nr_tok += t.nonroot_total;
    nr_ok += t.nonroot_correct;
    oov_tok += t.oov_total;
    oov_ok += t.oov_correct;
    roots += t.root_correct ? 1 : 0;
    exacts += t.exact ? 1 : 0;
  }
  EvalReport r;
  r.tokens = tok;
  r.sentences = static_cast<long long>(tallies.size());
  r.nonroot_tokens = nr_tok;
  r.oov_tokens = oov_tok;
  r.directed = tok ? static_cast<double>(dir) / tok : 0.0;
  r.undirected = tok ? static_cast<double>(undir) / tok : 0.0;
  r.root = static_cast<double>(roots) / r.sentences;
  r.non_root = nr_tok ? static_cast<double>(nr_ok) / nr_tok : 0.0;
  r.oov = oov_tok ? static_cast<double>(oov_ok) / oov_tok : 0.0;
  r.exact = static_cast<double>(exacts) / r.sentences;
  return r;
}

void print_report(std::ostream& out, const EvalReport& r) {
  out << "directed\t" << r.directed << '\n'
      << "undirected\t" << r.undirected << '\n'
      << "root\t" << r.root << '\n'
      << "non_root\t" << r.non_root << '\n'
      << "oov\t" << r.oov << '\n'
      << "exact\t" << r.exact << '\n'
      << "tokens\t" << r.tokens << '\n'
      << "sentences\t" << r.sentences << '\n'
      << "nonroot_tokens\t" << r.nonroot_tokens << '\n'
      << "oov_tokens\t" << r.oov_tokens << '\n';
}

DepTree baseline_adjacent(std::size_t n) {
  DepTree t;
  t.heads.resize(n);
  for (std::size_t i = 0; i + 1 < n; ++i)
    t.heads[i] = static_cast<int>(i) + 2;
  if (n > 0) t.heads[n - 1] = 0;
  return t;
}

namespace {

// g[m]: projective trees on a span of m tokens (root inside the span).
// h[m]: forests of projective subtrees covering m tokens, every subtree
// root attached to one fixed external head. g[m] = sum_r h[l]*h[r];
// h[m] = sum_k g[k]*h[m-k].
struct SpanCounts {
  std::vector<long double> g{1.0L}, h{1.0L};  // index 0

  void grow(std::size_t n) {
    while (g.size() <= n) {
      std::size_t m = g.size();
      long double gm = 0.0L;
      for (std::size_t r = 1; r <= m; ++r) gm += h[r - 1] * h[m - r];
      g.push_back(gm);
      long double hm = 0.0L;
      for (std::size_t k = 1; k <= m; ++k) hm += g[k] * h[m - k];
      h.push_back(hm);
    }
  }
};

long double uniform_weighted_pick(std::mt19937_64& rng,
                                  const std::vector<long double>& weights,
                                  std::size_t& out_idx) {
  long double total = 0.0L;
  for (long double w : weights) total += w;
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  long double x = static_cast<long double>(dist(rng)) * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (x < weights[i] || i + 1 == weights.size()) {
      out_idx = i;
      return weights[i];
    }
    x -= weights[i];
  }
  out_idx = weights.size() - 1;
  return weights.back();
}

struct TreeSampler {
  SpanCounts& counts;
  std::mt19937_64& rng;
  std::vector<int>& heads;  // 1-based tokens, filled in place

  void sample_tree(int lo, int hi, int head) {
    // Pick the span root proportionally to the trees it can head.
    std::vector<long double> w;
    for (int r = lo; r <= hi; ++r)
      w.push_back(counts.h[r - lo] * counts.h[hi - r]);
    std::size_t idx = 0;
    uniform_weighted_pick(rng, w, idx);
    int root = lo + static_cast<int>(idx);
    heads[root - 1] = head;
    sample_forest(lo, root - 1, root);
    sample_forest(root + 1, hi, root);
  }

  void sample_forest(int lo, int hi, int head) {
    while (lo <= hi) {
      int len = hi - lo + 1;
      std::vector<long double> w;
      for (int k = 1; k <= len; ++k)
        w.push_back(counts.g[k] * counts.h[len - k]);
      std::size_t idx = 0;
      uniform_weighted_pick(rng, w, idx);
      int block = static_cast<int>(idx) + 1;
      sample_tree(lo, lo + block - 1, head);
      lo += block;
    }
  }
};

}  // namespace

long double projective_tree_count(std::size_t n) {
  SpanCounts counts;
  counts.grow(n);
  return counts.g[n];
}

DepTree uniform_projective_tree(std::size_t n, std::mt19937_64& rng) {
  if (n == 0) throw std::invalid_argument("empty sentence");
  static thread_local SpanCounts counts;
  counts.grow(n);
  DepTree t;
  t.heads.assign(n, 0);
  TreeSampler sampler{counts, rng, t.heads};
  sampler.sample_tree(1, static_cast<int>(n), 0);
  return t;
}

}  // namespace linkchain
