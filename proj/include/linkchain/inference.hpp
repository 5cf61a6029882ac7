#ifndef LINKCHAIN_INFERENCE_HPP
#define LINKCHAIN_INFERENCE_HPP

#include <array>
#include <vector>

#include "linkchain/model.hpp"
#include "linkchain/types.hpp"

namespace linkchain {

struct DecodeResult {
  std::vector<Link> labels;
  double log_score = 0.0;
  bool valid = false;
};

struct Marginals {
  std::vector<std::array<double, kNumLinks>> per_pos;
  double log_z = 0.0;
};

// Transition score with the categorical (RIGHT -> LEFT) ban applied
// regardless of counts.
double constrained_slice_score(const Model& model, const FeatureView& view,
                               int l_prev, Link l);

// Exact argmax over label sequences satisfying: L_1 != LEFT,
// L_T != RIGHT, no (RIGHT, LEFT) pair, at least one non-NONE label.
// Ties break to the lexicographically smallest sequence under
// LEFT < RIGHT < NONE. valid=false iff every admissible sequence
// scores -inf. Requires T >= 2.
DecodeResult viterbi(const Model& model, const std::vector<FeatureView>& views);

// Per-position posteriors and log partition over the same constrained
// lattice. Throws if every admissible sequence scores -inf.
Marginals forward_backward(const Model& model,
                           const std::vector<FeatureView>& views);

struct BruteForceResult {
  DecodeResult best;
  Marginals marginals;
};

// Enumeration oracle over all 3^T sequences with identical constraints
// and tie-break. Refuses T > 8.
BruteForceResult brute_force(const Model& model,
                             const std::vector<FeatureView>& views);

}  // namespace linkchain

#endif  // LINKCHAIN_INFERENCE_HPP
