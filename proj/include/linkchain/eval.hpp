#ifndef LINKCHAIN_EVAL_HPP
#define LINKCHAIN_EVAL_HPP

#include <iosfwd>
#include <random>
#include <vector>

#include "linkchain/types.hpp"

namespace linkchain {

// Per-sentence attachment tallies; combine associatively.
struct Tally {
  long long tokens = 0;
  long long dir_correct = 0;
  long long undir_correct = 0;
  long long nonroot_total = 0;
  long long nonroot_correct = 0;
  long long oov_total = 0;
  long long oov_correct = 0;
  bool root_correct = false;
  bool exact = false;
};

struct EvalReport {
  double directed = 0.0;
  double undirected = 0.0;
  double root = 0.0;
  double non_root = 0.0;
  double oov = 0.0;
  double exact = 0.0;
  long long tokens = 0;
  long long sentences = 0;
  long long nonroot_tokens = 0;
  long long oov_tokens = 0;
};

// Directed: pred head == gold head. Undirected: the unordered pair
// {token, pred head} occurs in the gold edge set (ROOT as node 0).
// Throws on length mismatch.
Tally score(const DepTree& pred, const DepTree& gold,
            const std::vector<bool>& oov_mask);

EvalReport aggregate(const std::vector<Tally>& tallies);

void print_report(std::ostream& out, const EvalReport& r);

// heads[i] = i+2 for all but the last token, which heads to ROOT.
DepTree baseline_adjacent(std::size_t n);

// Uniform sample over all projective trees of size n (span-count DP).
DepTree uniform_projective_tree(std::size_t n, std::mt19937_64& rng);

inline DepTree baseline_random(std::size_t n, std::mt19937_64& rng) {
  return uniform_projective_tree(n, rng);
}

// Number of projective trees on n tokens (long double; exact for the
// sizes this parser handles).
long double projective_tree_count(std::size_t n);

}  // namespace linkchain

#endif  // LINKCHAIN_EVAL_HPP
