#ifndef LINKCHAIN_PARSER_HPP
#define LINKCHAIN_PARSER_HPP

#include <utility>
#include <vector>

#include "linkchain/inference.hpp"
#include "linkchain/model.hpp"
#include "linkchain/oracle.hpp"
#include "linkchain/types.hpp"

namespace linkchain {

struct ParseResult {
  DepTree tree;
  std::vector<std::pair<Layer, std::vector<Link>>> trace;
  int fallback_count = 0;
};

enum class DecodeMode { Viterbi, Posterior };

// Recursive parse loop: decode the current layer, attach and compress,
// repeat until one token remains (which heads to ROOT). Posterior mode
// takes per-position marginal argmaxes and falls back to Viterbi when
// they violate the layer constraints.
ParseResult parse(const Model& model, const Sentence& sent,
                  DecodeMode mode = DecodeMode::Viterbi);

// Progress guarantee for alpha=0 dead ends: all NONE except one forced
// LEFT/RIGHT at the best-scoring boundary-legal slot, position 1 RIGHT
// as a last resort.
std::vector<Link> fallback_labels(const Model& model,
                                  const std::vector<FeatureView>& views);

}  // namespace linkchain

#endif  // LINKCHAIN_PARSER_HPP
