#ifndef LINKCHAIN_ORACLE_HPP
#define LINKCHAIN_ORACLE_HPP

#include <utility>
#include <vector>

#include "linkchain/corpus.hpp"
#include "linkchain/types.hpp"

namespace linkchain {

struct LayerToken {
  int orig_index = 0;  // 1-based position in the original sentence
  int word = 0;        // vocab code
  int pos = 0;         // tag code
  Comp lcomp = Comp::None;
  Comp rcomp = Comp::None;
  Link label = Link::None;  // gold in training, predicted in parsing
};

struct Layer {
  std::vector<LayerToken> tokens;

  std::size_t size() const { return tokens.size(); }
  std::vector<Link> labels() const;
};

// dependent orig_index -> head orig_index
using Attachment = std::pair<int, int>;

// Encodes a sentence as the bottom layer: all comp counters at None,
// labels None.
Layer encode_sentence(const Sentence& sent, const Vocab& vocab);

// Checks the boundary, adjacency and control invariants of a label
// sequence for a layer of the given length.
bool labels_admissible(const std::vector<Link>& labels);

// Removes every LEFT/RIGHT token, attaching it to its neighbor, and
// bumps the surviving heads' comp counters.
std::pair<Layer, std::vector<Attachment>> apply_labels(
    const Layer& layer, const std::vector<Link>& labels);

// Gold layered encoding of a projective tree: in each layer a token is
// labeled LEFT/RIGHT iff its gold head is its immediate neighbor there
// and all of its own dependents are already attached. Throws on
// non-projective input.
std::vector<Layer> derive_layers(const Sentence& sent, const DepTree& gold,
                                 const Vocab& vocab);

// Rebuilds the tree from the per-layer labels. The layers must carry
// their labels and end in a single token.
DepTree replay(const std::vector<Layer>& layers);

void dump_layers(std::ostream& out, const std::vector<Layer>& layers,
                 const Sentence& sent);

}  // namespace linkchain

#endif  // LINKCHAIN_ORACLE_HPP
