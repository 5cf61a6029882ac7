#ifndef LINKCHAIN_MODEL_HPP
#define LINKCHAIN_MODEL_HPP

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "linkchain/corpus.hpp"
#include "linkchain/oracle.hpp"
#include "linkchain/types.hpp"

namespace linkchain {

// Conditional probability table learned by counting. Counts are kept
// exact; probabilities are derived on demand with additive smoothing.
class CPTable {
 public:
  CPTable() = default;
  CPTable(int num_contexts, int num_values);

  void add(int ctx, int value, long long k = 1);
  long long count(int ctx, int value) const;
  long long context_total(int ctx) const;

  // (count + alpha) / (total + alpha * num_values); -inf when the
  // numerator is zero and alpha is zero.
  double log_prob(int ctx, int value, double alpha) const;

  int num_contexts() const { return num_contexts_; }
  int num_values() const { return num_values_; }

  void merge(const CPTable& other);
  bool operator==(const CPTable&) const = default;

 private:
  int num_contexts_ = 0;
  int num_values_ = 0;
  std::vector<long long> counts_;
  std::vector<long long> totals_;
};

// The eight per-slice observed features, all conditioned on the link.
enum Feature {
  kWordCur = 0,
  kPosCur,
  kLcompCur,
  kRcompCur,
  kWordNext,
  kPosNext,
  kRcompPrev,
  kLcompNext,
  kNumFeatures
};

const char* feature_name(int f);

struct FeatureView {
  std::array<int, kNumFeatures> codes{};
};

// Feature view for position t of a layer; out-of-range neighbor slots
// carry the vocab's boundary codes.
FeatureView make_view(const Vocab& vocab, const Layer& layer, std::size_t t);
std::vector<FeatureView> make_views(const Vocab& vocab, const Layer& layer);

struct Model {
  Vocab vocab;
  double alpha = 0.1;
  CPTable trans;  // P(L_t | L_{t-1}), context kBoundaryLink at t=1
  std::array<CPTable, kNumFeatures> emit;  // P(f | L_t)

  static Model make(Vocab vocab, double alpha);

  // Adds the gold-label counts of one layer; single-token layers
  // contribute nothing.
  void observe_layer(const Layer& layer);

  // log P(l_t | l_prev) + sum_f log P(f | l_t). Pure table lookup; the
  // decoder applies the hard adjacency constraint on top.
  double slice_log_score(const FeatureView& view, int l_prev, Link l) const;

  void merge_counts(const Model& other);
};

Model train(const Vocab& vocab, double alpha,
            const std::vector<std::vector<Layer>>& sentences_layers);

void save_model(std::ostream& out, const Model& model);
Model load_model(std::istream& in);
void save_model_file(const std::string& path, const Model& model);
Model load_model_file(const std::string& path);

}  // namespace linkchain

#endif  // LINKCHAIN_MODEL_HPP
