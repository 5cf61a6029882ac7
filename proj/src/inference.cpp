#include "linkchain/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace linkchain {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

constexpr Link kLinks[kNumLinks] = {Link::Left, Link::Right, Link::None};

bool transition_allowed(int l_prev, Link l) {
  return !(l_prev == link_code(Link::Right) && l == Link::Left);
}

bool position_allowed(std::size_t t, std::size_t last, Link l) {
  if (t == 0 && l == Link::Left) return false;
  if (t == last && l == Link::Right) return false;
  return true;
}

}  // namespace

double constrained_slice_score(const Model& model, const FeatureView& view,
                               int l_prev, Link l) {
  if (!transition_allowed(l_prev, l)) return kNegInf;
  return model.slice_log_score(view, l_prev, l);
}

DecodeResult viterbi(const Model& model,
                     const std::vector<FeatureView>& views) {
  const std::size_t n = views.size();
  if (n < 2) throw std::invalid_argument("viterbi requires T >= 2");

  // State = (link, seen non-NONE). Paths are kept whole so equal-score
  // ties resolve to the lexicographically smallest label sequence.
  struct Cell {
    double score = kNegInf;
    std::vector<Link> path;
  };
  auto better = [](const Cell& a, double score, const std::vector<Link>& path,
                   Link last) {
    if (score > a.score) return true;
    if (score < a.score || score == kNegInf) return false;
    std::vector<Link> cand = path;
    cand.push_back(last);
    return std::lexicographical_compare(cand.begin(), cand.end(),
                                        a.path.begin(), a.path.end());
  };

  std::array<std::array<Cell, 2>, kNumLinks> cur{};
  for (Link l : kLinks) {
    if (!position_allowed(0, n - 1, l)) continue;
    double s = model.slice_log_score(views[0], kBoundaryLink, l);
    if (s == kNegInf) continue;
    int seen = l != Link::None ? 1 : 0;
    cur[link_code(l)][seen] = {s, {l}};
  }
  for (std::size_t t = 1; t < n; ++t) {
    std::array<std::array<Cell, 2>, kNumLinks> next{};
    for (Link l : kLinks) {
      if (!position_allowed(t, n - 1, l)) continue;
      for (int lp = 0; lp < kNumLinks; ++lp) {
        if (!transition_allowed(lp, l)) continue;
        for (int seen = 0; seen < 2; ++seen) {
          const Cell& c = cur[lp][seen];
          if (c.score == kNegInf) continue;
          double s = c.score + model.slice_log_score(views[t], lp, l);
          if (s == kNegInf) continue;
          int seen2 = seen | (l != Link::None ? 1 : 0);
          Cell& dst = next[link_code(l)][seen2];
          if (better(dst, s, c.path, l)) {
            dst.score = s;
            dst.path = c.path;
            dst.path.push_back(l);
          }
        }
      }
    }
    cur = std::move(next);
  }

  DecodeResult result;
  const Cell* best = nullptr;
  for (int l = 0; l < kNumLinks; ++l) {
    const Cell& c = cur[l][1];  // control: at least one non-NONE label
    if (c.score == kNegInf) continue;
    if (!best || c.score > best->score ||
        (c.score == best->score &&
         std::lexicographical_compare(c.path.begin(), c.path.end(),
                                      best->path.begin(), best->path.end()))) {
      best = &c;
    }
  }
  if (!best) return result;
  result.labels = best->path;
  result.log_score = best->score;
  result.valid = true;
  return result;
}

Marginals forward_backward(const Model& model,
                           const std::vector<FeatureView>& views) {
  const std::size_t n = views.size();
  if (n < 2) throw std::invalid_argument("forward_backward requires T >= 2");

  using Lattice = std::vector<std::array<std::array<double, 2>, kNumLinks>>;
  Lattice fwd(n), bwd(n);
  for (auto& slice : fwd)
    for (auto& row : slice) row = {kNegInf, kNegInf};
  for (auto& slice : bwd)
    for (auto& row : slice) row = {kNegInf, kNegInf};

  for (Link l : kLinks) {
    if (!position_allowed(0, n - 1, l)) continue;
    int seen = l != Link::None ? 1 : 0;
    fwd[0][link_code(l)][seen] =
        model.slice_log_score(views[0], kBoundaryLink, l);
  }
  for (std::size_t t = 1; t < n; ++t) {
    for (Link l : kLinks) {
      if (!position_allowed(t, n - 1, l)) continue;
      for (int lp = 0; lp < kNumLinks; ++lp) {
        if (!transition_allowed(lp, l)) continue;
        double w = model.slice_log_score(views[t], lp, l);
        if (w == kNegInf) continue;
        for (int seen = 0; seen < 2; ++seen) {
          double a = fwd[t - 1][lp][seen];
          if (a == kNegInf) continue;
          int seen2 = seen | (l != Link::None ? 1 : 0);
          double& dst = fwd[t][link_code(l)][seen2];
          dst = log_add(dst, a + w);
        }
      }
    }
  }

  // Backward pass; only seen=1 end states are accepted.
  for (int l = 0; l < kNumLinks; ++l) bwd[n - 1][l][1] = 0.0;
  for (std::size_t t = n - 1; t > 0; --t) {
    for (int lp = 0; lp < kNumLinks; ++lp) {
      for (Link l : kLinks) {
        if (!position_allowed(t, n - 1, l)) continue;
        if (!transition_allowed(lp, l)) continue;
        double w = model.slice_log_score(views[t], lp, l);
        if (w == kNegInf) continue;
        for (int seen = 0; seen < 2; ++seen) {
          // seen at t-1; entering l may flip it.
          int seen2 = seen | (l != Link::None ? 1 : 0);
          double b = bwd[t][link_code(l)][seen2];
          if (b == kNegInf) continue;
          double& dst = bwd[t - 1][lp][seen];
          dst = log_add(dst, w + b);
        }
      }
    }
  }

  double log_z = kNegInf;
  for (int l = 0; l < kNumLinks; ++l)
    log_z = log_add(log_z, fwd[n - 1][l][1]);
  if (log_z == kNegInf)
    throw std::runtime_error("forward_backward: no admissible sequence");

  Marginals out;
  out.log_z = log_z;
  out.per_pos.assign(n, {0.0, 0.0, 0.0});
  for (std::size_t t = 0; t < n; ++t) {
    for (int l = 0; l < kNumLinks; ++l) {
      double m = kNegInf;
      for (int seen = 0; seen < 2; ++seen) {
        if (fwd[t][l][seen] == kNegInf || bwd[t][l][seen] == kNegInf) continue;
        m = log_add(m, fwd[t][l][seen] + bwd[t][l][seen]);
      }
      out.per_pos[t][l] = m == kNegInf ? 0.0 : std::exp(m - log_z);
    }
  }
  return out;
}

BruteForceResult brute_force(const Model& model,
                             const std::vector<FeatureView>& views) {
  const std::size_t n = views.size();
  if (n < 2) throw std::invalid_argument("brute_force requires T >= 2");
  if (n > 8) throw std::invalid_argument("brute_force refuses T > 8");

  BruteForceResult out;
  out.marginals.per_pos.assign(n, {0.0, 0.0, 0.0});
  out.marginals.log_z = kNegInf;

  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= kNumLinks;

  std::vector<Link> labels(n);
  std::vector<std::array<double, kNumLinks>> accum(n, {kNegInf, kNegInf, kNegInf});
  for (std::size_t code = 0; code < total; ++code) {
    // Most significant digit = position 0, so iteration order is
    // lexicographic under LEFT < RIGHT < NONE.
    std::size_t rem = code;
    for (std::size_t i = n; i-- > 0;) {
      labels[i] = kLinks[rem % kNumLinks];
      rem /= kNumLinks;
    }
    if (!labels_admissible(labels)) continue;
    double s = 0.0;
    int prev = kBoundaryLink;
    for (std::size_t t = 0; t < n && s != kNegInf; ++t) {
      s += constrained_slice_score(model, views[t], prev, labels[t]);
      prev = link_code(labels[t]);
    }
    if (s == kNegInf) continue;
    if (!out.best.valid || s > out.best.log_score) {
      out.best.valid = true;
      out.best.log_score = s;
      out.best.labels = labels;  // first max wins: lexicographic tie-break
    }
    out.marginals.log_z = log_add(out.marginals.log_z, s);
    for (std::size_t t = 0; t < n; ++t) {
      double& a = accum[t][link_code(labels[t])];
      a = log_add(a, s);
    }
  }
  if (out.marginals.log_z != kNegInf) {
    for (std::size_t t = 0; t < n; ++t) {
      for (int l = 0; l < kNumLinks; ++l) {
        out.marginals.per_pos[t][l] =
            accum[t][l] == kNegInf
                ? 0.0
                : std::exp(accum[t][l] - out.marginals.log_z);
      }
    }
  }
  return out;
}

}  // namespace linkchain
