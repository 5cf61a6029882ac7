#ifndef LINKCHAIN_TESTS_SUPPORT_HELPERS_HPP
#define LINKCHAIN_TESTS_SUPPORT_HELPERS_HPP

#include <random>
#include <string>
#include <vector>

#include "linkchain/corpus.hpp"
#include "linkchain/eval.hpp"
#include "linkchain/model.hpp"
#include "linkchain/oracle.hpp"
#include "linkchain/types.hpp"

namespace linkchain::testing {

// "The king of Prussia bought a camel", heads (2,5,2,3,0,7,5).
inline Sentence fig1_sentence() {
  Sentence s;
  const char* forms[] = {"The", "king", "of", "Prussia", "bought", "a", "camel"};
  const char* tags[] = {"DT", "NN", "IN", "NNP", "VBD", "DT", "NN"};
  const int heads[] = {2, 5, 2, 3, 0, 7, 5};
  for (int i = 0; i < 7; ++i) {
    s.tokens.push_back({i + 1, forms[i], tags[i], heads[i]});
  }
  return s;
}

inline DepTree fig1_tree() { return DepTree{{2, 5, 2, 3, 0, 7, 5}}; }

inline Sentence make_sentence(const std::vector<int>& heads) {
  Sentence s;
  for (std::size_t i = 0; i < heads.size(); ++i) {
    s.tokens.push_back({static_cast<int>(i) + 1, "w" + std::to_string(i),
                        "T" + std::to_string(i % 3), heads[i]});
  }
  return s;
}

inline Vocab tiny_vocab(int num_words, int num_tags) {
  std::vector<Sentence> corpus;
  Sentence s;
  for (int i = 0; i < num_words; ++i) {
    s.tokens.push_back({i + 1, "w" + std::to_string(i),
                        "T" + std::to_string(i % num_tags), i == 0 ? 0 : 1});
  }
  corpus.push_back(s);
  return build_vocab(corpus, static_cast<std::size_t>(num_words));
}

// Model with random counts in every table; alpha > 0 keeps all scores
// finite so the enumeration oracles apply.
inline Model random_model(std::mt19937_64& rng, double alpha = 0.1,
                          int num_words = 5, int num_tags = 3) {
  Model m = Model::make(tiny_vocab(num_words, num_tags), alpha);
  std::uniform_int_distribution<int> count_dist(0, 6);
  for (int c = 0; c < m.trans.num_contexts(); ++c) {
    for (int v = 0; v < m.trans.num_values(); ++v) {
      m.trans.add(c, v, count_dist(rng));
    }
  }
  for (int f = 0; f < kNumFeatures; ++f) {
    for (int c = 0; c < m.emit[f].num_contexts(); ++c) {
      for (int v = 0; v < m.emit[f].num_values(); ++v) {
        m.emit[f].add(c, v, count_dist(rng));
      }
    }
  }
  return m;
}

inline std::vector<FeatureView> random_views(const Model& m, std::size_t t_len,
                                             std::mt19937_64& rng) {
  std::vector<FeatureView> views(t_len);
  int cards[kNumFeatures] = {
      m.vocab.word_card(), m.vocab.pos_card(), kCompCard, kCompCard,
      m.vocab.word_card(), m.vocab.pos_card(), kCompCard, kCompCard};
  for (auto& v : views) {
    for (int f = 0; f < kNumFeatures; ++f) {
      v.codes[f] = std::uniform_int_distribution<int>(0, cards[f] - 1)(rng);
    }
  }
  return views;
}

}  // namespace linkchain::testing

#endif  // LINKCHAIN_TESTS_SUPPORT_HELPERS_HPP
