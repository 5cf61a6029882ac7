#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "linkchain/eval.hpp"
#include "linkchain/parser.hpp"
#include "linkchain/synthetic.hpp"
#include "support/helpers.hpp"

using namespace linkchain;

namespace {

Model synthetic_model(std::size_t n_train, double alpha) {
  ToyGrammar grammar;
  auto pairs = generate(grammar, 42, n_train);
  std::vector<Sentence> sents;
  for (auto& [s, t] : pairs) sents.push_back(s);
  Vocab vocab = build_vocab(sents, 2500);
  Model m = Model::make(vocab, alpha);
  for (auto& [s, t] : pairs) {
    for (const auto& layer : derive_layers(s, t, vocab)) m.observe_layer(layer);
  }
  return m;
}

}  // namespace

TEST_CASE("single-token sentences parse to ROOT with zero passes") {
  std::mt19937_64 rng(1);
  Model m = testing::random_model(rng);
  Sentence s = testing::make_sentence({0});
  ParseResult r = parse(m, s);
  CHECK(r.tree == DepTree{{0}});
  CHECK(r.fallback_count == 0);
}

TEST_CASE("two-token parses match the decoded pair") {
  std::mt19937_64 rng(2);
  for (int iter = 0; iter < 30; ++iter) {
    Model m = testing::random_model(rng, 0.1);
    Sentence s = testing::make_sentence({2, 0});
    ParseResult r = parse(m, s);
    bool right = r.tree == DepTree{{2, 0}};
    bool left = r.tree == DepTree{{0, 1}};
    CHECK((right || left));
    Layer bottom = encode_sentence(s, m.vocab);
    DecodeResult d = viterbi(m, make_views(m.vocab, bottom));
    REQUIRE(d.valid);
    CHECK(right == (d.labels[0] == Link::Right));
  }
}

TEST_CASE("parse output is always a valid projective tree") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 150; ++iter) {
    Model m = testing::random_model(rng, iter % 3 ? 0.1 : 0.0);
    std::size_t n = 1 + rng() % 10;
    std::vector<int> heads(n, 0);
    Sentence s = testing::make_sentence(heads);
    ParseResult r = parse(m, s);
    auto check = validate_tree(r.tree);
    CHECK(check.ok);
    CHECK(is_projective(r.tree.heads));
    CHECK(r.trace.size() <= n + 1);
  }
}

TEST_CASE("parsing is deterministic") {
  std::mt19937_64 rng(4);
  Model m = testing::random_model(rng, 0.1);
  Sentence s = testing::make_sentence({2, 3, 0, 3, 4});
  ParseResult a = parse(m, s);
  ParseResult b = parse(m, s);
  CHECK(a.tree == b.tree);
  CHECK(a.fallback_count == b.fallback_count);
}

TEST_CASE("no fallback is ever needed with smoothing on") {
  std::mt19937_64 rng(5);
  Model m = synthetic_model(50, 0.1);
  ToyGrammar grammar;
  for (auto& [s, t] : generate(grammar, 7, 60)) {
    ParseResult r = parse(m, s);
    CHECK(r.fallback_count == 0);
  }
}

TEST_CASE("cheating scorer reproduces the gold tree") {
  // A model trained on exactly one sentence with alpha=0 assigns the
  // gold layer labels probability-1 slices at every pass, so parsing
  // that same sentence must replay the derivation.
  auto sent = testing::fig1_sentence();
  std::vector<Sentence> corpus{sent};
  Vocab vocab = build_vocab(corpus, 2500);
  auto layers = derive_layers(sent, testing::fig1_tree(), vocab);
  Model m = train(vocab, 0.0, {layers});
  ParseResult r = parse(m, sent);
  CHECK(r.tree == testing::fig1_tree());
  CHECK(r.fallback_count == 0);
  // The predicted labels match the derivation layer by layer.
  REQUIRE(r.trace.size() == layers.size());
  for (std::size_t k = 0; k + 1 < layers.size(); ++k) {
    CHECK(r.trace[k].second == layers[k].labels());
  }
}

TEST_CASE("fallback picks the single best finite link") {
  Vocab vocab = testing::tiny_vocab(4, 2);
  Model m = train(vocab, 0.0, {});  // every score is -inf
  std::mt19937_64 rng(6);
  auto views = testing::random_views(m, 4, rng);
  auto labels = fallback_labels(m, views);
  CHECK(labels == std::vector<Link>{Link::Right, Link::None, Link::None,
                                    Link::None});

  // Make exactly one option finite: LEFT at position 3 (index 2).
  Model m2 = train(vocab, 0.0, {});
  m2.trans.add(link_code(Link::None), link_code(Link::Left), 1);
  for (int f = 0; f < kNumFeatures; ++f) {
    m2.emit[f].add(link_code(Link::Left), views[2].codes[f], 1);
  }
  auto labels2 = fallback_labels(m2, views);
  CHECK(labels2 == std::vector<Link>{Link::None, Link::None, Link::Left,
                                     Link::None});
}

TEST_CASE("fallback output survives apply_labels") {
  Vocab vocab = testing::tiny_vocab(4, 2);
  Model m = train(vocab, 0.0, {});
  Sentence s = testing::make_sentence({2, 3, 0, 3});
  ParseResult r = parse(m, s);
  CHECK(validate_tree(r.tree).ok);
  CHECK(r.fallback_count > 0);
}

TEST_CASE("trained model recovers synthetic grammar trees") {
  Model m = synthetic_model(400, 0.1);
  ToyGrammar grammar;
  auto held_out = generate(grammar, 99, 50);
  int correct = 0, total = 0;
  for (auto& [s, gold] : held_out) {
    ParseResult r = parse(m, s);
    for (std::size_t i = 0; i < gold.size(); ++i) {
      if (r.tree.heads[i] == gold.heads[i]) ++correct;
      ++total;
    }
  }
  CHECK(static_cast<double>(correct) / total > 0.85);
}

TEST_CASE("posterior decode mode produces valid trees") {
  Model m = synthetic_model(100, 0.1);
  ToyGrammar grammar;
  for (auto& [s, gold] : generate(grammar, 11, 25)) {
    ParseResult r = parse(m, s, DecodeMode::Posterior);
    CHECK(validate_tree(r.tree).ok);
  }
}
