#include "linkchain/oracle.hpp"

#include <ostream>
#include <stdexcept>

namespace linkchain {

std::vector<Link> Layer::labels() const {
  std::vector<Link> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.label);
  return out;
}

Layer encode_sentence(const Sentence& sent, const Vocab& vocab) {
  Layer layer;
  layer.tokens.reserve(sent.size());
  for (const auto& t : sent.tokens) {
    LayerToken lt;
    lt.orig_index = t.index;
    lt.word = vocab.word_code(t.form);
    lt.pos = vocab.pos_code(t.pos);
    layer.tokens.push_back(lt);
  }
  return layer;
}

bool labels_admissible(const std::vector<Link>& labels) {
  const std::size_t n = labels.size();
  if (n == 0) return false;
  if (n == 1) return labels[0] == Link::None;
  if (labels.front() == Link::Left) return false;
  if (labels.back() == Link::Right) return false;
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] != Link::None) any = true;
    if (i + 1 < n && labels[i] == Link::Right && labels[i + 1] == Link::Left)
      return false;
  }
  return any;
}

std::pair<Layer, std::vector<Attachment>> apply_labels(
    const Layer& layer, const std::vector<Link>& labels) {
  const std::size_t n = layer.size();
  if (labels.size() != n) throw std::invalid_argument("label count mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] == Link::Left && i == 0)
      throw std::invalid_argument("first token labeled LEFT");
    if (labels[i] == Link::Right && i + 1 == n)
      throw std::invalid_argument("last token labeled RIGHT");
    if (i + 1 < n && labels[i] == Link::Right && labels[i + 1] == Link::Left)
      throw std::invalid_argument("adjacent (RIGHT, LEFT) pair");
  }

  Layer next;
  std::vector<Attachment> attachments;
  // Linked heads survive by construction (a RIGHT/LEFT neighbor of a
  // linked token cannot itself be linked toward a third token without
  // violating the adjacency rule, and heads keep NONE here).
  std::vector<int> lgain(n, 0), rgain(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] == Link::Left) {
      attachments.emplace_back(layer.tokens[i].orig_index,
                               layer.tokens[i - 1].orig_index);
      ++rgain[i - 1];
    } else if (labels[i] == Link::Right) {
      attachments.emplace_back(layer.tokens[i].orig_index,
                               layer.tokens[i + 1].orig_index);
      ++lgain[i + 1];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] != Link::None) continue;
    LayerToken t = layer.tokens[i];
    for (int k = 0; k < lgain[i]; ++k) t.lcomp = comp_increment(t.lcomp);
    for (int k = 0; k < rgain[i]; ++k) t.rcomp = comp_increment(t.rcomp);
    t.label = Link::None;
    next.tokens.push_back(t);
  }
  return {std::move(next), std::move(attachments)};
}

std::vector<Layer> derive_layers(const Sentence& sent, const DepTree& gold,
                                 const Vocab& vocab) {
  const std::size_t n = sent.size();
  if (gold.size() != n) throw std::invalid_argument("tree length mismatch");
  auto check = validate_tree(gold);
  if (!check.ok)
    throw std::invalid_argument("invalid gold tree: " + check.violation);

  std::vector<int> pending(n + 1, 0);  // unattached dependents per token
  for (int h : gold.heads) {
    if (h != 0) ++pending[h];
  }

  std::vector<Layer> layers;
  Layer cur = encode_sentence(sent, vocab);
  while (true) {
    const std::size_t m = cur.size();
    if (m == 1) {
      cur.tokens[0].label = Link::None;
      layers.push_back(cur);
      break;
    }
    std::vector<Link> labels(m, Link::None);
    for (std::size_t i = 0; i < m; ++i) {
      int oi = cur.tokens[i].orig_index;
      if (pending[oi] != 0) continue;  // still waiting on its own dependents
      int head = gold.heads[oi - 1];
      if (i > 0 && cur.tokens[i - 1].orig_index == head) {
        labels[i] = Link::Left;
      } else if (i + 1 < m && cur.tokens[i + 1].orig_index == head) {
        labels[i] = Link::Right;
      }
    }
    bool progress = false;
    for (std::size_t i = 0; i < m; ++i) {
      cur.tokens[i].label = labels[i];
      if (labels[i] != Link::None) progress = true;
    }
    if (!progress) {
      // Cannot happen for a projective tree: the shortest arc always
      // links a leaf to an adjacent head.
      throw std::logic_error("derive_layers stalled; tree not linearizable");
    }
    layers.push_back(cur);
    auto [next, attachments] = apply_labels(cur, labels);
    for (const auto& [dep, head] : attachments) {
      (void)dep;
      --pending[head];
    }
    cur = std::move(next);
  }
  return layers;
}

DepTree replay(const std::vector<Layer>& layers) {
  if (layers.empty()) throw std::invalid_argument("no layers");
  if (layers.back().size() != 1)
    throw std::invalid_argument("final layer must hold a single token");

  std::size_t n = layers.front().size();
  DepTree tree;
  tree.heads.assign(n, -1);
  auto assign = [&](int dep, int head) {
    if (dep < 1 || dep > static_cast<int>(n) || tree.heads[dep - 1] != -1)
      throw std::invalid_argument("replay: token attached twice");
    tree.heads[dep - 1] = head;
  };
  for (const auto& layer : layers) {
    if (layer.size() == 1) break;
    auto labels = layer.labels();
    if (!labels_admissible(labels))
      throw std::invalid_argument("replay: inadmissible label sequence");
    auto [next, attachments] = apply_labels(layer, labels);
    for (const auto& [dep, head] : attachments) assign(dep, head);
  }
  assign(layers.back().tokens[0].orig_index, 0);
  for (int h : tree.heads) {
    if (h == -1) throw std::invalid_argument("replay: unattached token");
  }
  auto check = validate_tree(tree);
  if (!check.ok)
    throw std::invalid_argument("replay: invalid tree: " + check.violation);
  return tree;
}

void dump_layers(std::ostream& out, const std::vector<Layer>& layers,
                 const Sentence& sent) {
  bool first = true;
  for (const auto& layer : layers) {
    if (!first) out << '\n';
    first = false;
    for (const auto& t : layer.tokens) {
      const auto& raw = sent.tokens[t.orig_index - 1];
      out << t.orig_index << ' ' << raw.form << ' ' << raw.pos << ' '
          << comp_name(t.lcomp) << ' ' << comp_name(t.rcomp) << ' '
          << link_name(t.label) << '\n';
    }
  }
}

}  // namespace linkchain
