#include "linkchain/parser.hpp"

#include <limits>
#include <stdexcept>

namespace linkchain {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

std::vector<Link> fallback_labels(const Model& model,
                                  const std::vector<FeatureView>& views) {
  const std::size_t n = views.size();
  std::vector<Link> labels(n, Link::None);
  double best = kNegInf;
  std::size_t best_t = 0;
  Link best_l = Link::Right;
  for (std::size_t t = 0; t < n; ++t) {
    for (Link l : {Link::Left, Link::Right}) {
      if (t == 0 && l == Link::Left) continue;
      if (t + 1 == n && l == Link::Right) continue;
      int l_prev = t == 0 ? kBoundaryLink : link_code(Link::None);
      double s = model.slice_log_score(views[t], l_prev, l);
      if (s > best) {
        best = s;
        best_t = t;
        best_l = l;
      }
    }
  }
  // best_t/best_l default to (0, RIGHT): the deterministic last resort.
  labels[best_t] = best_l;
  return labels;
}

ParseResult parse(const Model& model, const Sentence& sent, DecodeMode mode) {
  const std::size_t n = sent.size();
  if (n == 0) throw std::invalid_argument("empty sentence");

  ParseResult result;
  result.tree.heads.assign(n, -1);
  auto assign = [&](int dep, int head) { result.tree.heads[dep - 1] = head; };

  Layer cur = encode_sentence(sent, model.vocab);
  while (cur.size() > 1) {
    auto views = make_views(model.vocab, cur);
    std::vector<Link> labels;
    if (mode == DecodeMode::Posterior) {
      // Diagnostic mode: per-position argmax of the marginals, falling
      // back to Viterbi when the independent argmaxes clash.
      try {
        Marginals m = forward_backward(model, views);
        labels.reserve(views.size());
        for (const auto& dist : m.per_pos) {
          int arg = 0;
          for (int l = 1; l < kNumLinks; ++l)
            if (dist[l] > dist[arg]) arg = l;
          labels.push_back(static_cast<Link>(arg));
        }
        if (!labels_admissible(labels)) labels.clear();
      } catch (const std::runtime_error&) {
        labels.clear();
      }
    }
    if (labels.empty()) {
      DecodeResult decoded = viterbi(model, views);
      if (decoded.valid) {
        labels = std::move(decoded.labels);
      } else {
        labels = fallback_labels(model, views);
        ++result.fallback_count;
      }
    }
    Layer snapshot = cur;
    for (std::size_t i = 0; i < labels.size(); ++i)
      snapshot.tokens[i].label = labels[i];
    result.trace.emplace_back(snapshot, labels);
    auto [next, attachments] = apply_labels(cur, labels);
    for (const auto& [dep, head] : attachments) assign(dep, head);
    cur = std::move(next);
  }
  assign(cur.tokens[0].orig_index, 0);
  result.trace.emplace_back(cur, std::vector<Link>{Link::None});
  return result;
}

}  // namespace linkchain
