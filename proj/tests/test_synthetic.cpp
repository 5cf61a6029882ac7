#include <doctest.h>

#include "linkchain/corpus.hpp"
#include "linkchain/oracle.hpp"
#include "linkchain/synthetic.hpp"
#include "support/helpers.hpp"

using namespace linkchain;

TEST_CASE("generation is deterministic under a fixed seed") {
  ToyGrammar grammar;
  auto a = generate(grammar, 42, 100);
  auto b = generate(grammar, 42, 100);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].second == b[i].second);
    REQUIRE(a[i].first.size() == b[i].first.size());
    for (std::size_t j = 0; j < a[i].first.size(); ++j) {
      CHECK(a[i].first.tokens[j].form == b[i].first.tokens[j].form);
    }
  }
}

TEST_CASE("every generated tree is valid, projective and short") {
  ToyGrammar grammar;
  for (auto& [sent, tree] : generate(grammar, 42, 2000)) {
    CHECK(sent.size() <= 10);
    CHECK(validate_tree(tree).ok);
    CHECK(is_projective(tree.heads));
    CHECK(sent.heads() == tree.heads);
    // Survives the corpus filter untouched.
    auto kept = filter_short(sent, default_punct_tags(), 10);
    REQUIRE(kept);
    CHECK(kept->heads() == tree.heads);
  }
}

TEST_CASE("bare transitive clause has the expected shape") {
  // DET NOUN VERB DET NOUN instances carry heads (2,3,0,5,3).
  ToyGrammar grammar;
  bool found = false;
  for (auto& [sent, tree] : generate(grammar, 1, 3000)) {
    if (sent.size() != 5) continue;
    std::vector<std::string> tags;
    for (const auto& t : sent.tokens) tags.push_back(t.pos);
    if (tags != std::vector<std::string>{"DET", "NOUN", "VERB", "DET", "NOUN"})
      continue;
    found = true;
    CHECK(tree == DepTree{{2, 3, 0, 5, 3}});
  }
  CHECK(found);
}

TEST_CASE("prepositional phrases reproduce the example tree shape") {
  // DET NOUN PREP NOUN VERB DET NOUN => heads (2,5,2,3,0,7,5).
  ToyGrammar grammar;
  bool found = false;
  for (auto& [sent, tree] : generate(grammar, 2, 20000)) {
    if (sent.size() != 7) continue;
    std::vector<std::string> tags;
    for (const auto& t : sent.tokens) tags.push_back(t.pos);
    if (tags != std::vector<std::string>{"DET", "NOUN", "PREP", "NOUN", "VERB",
                                         "DET", "NOUN"})
      continue;
    found = true;
    CHECK(tree == DepTree{{2, 5, 2, 3, 0, 7, 5}});
  }
  CHECK(found);
}

TEST_CASE("generated corpora are closed under the oracle round-trip") {
  ToyGrammar grammar;
  auto pairs = generate(grammar, 42, 500);
  std::vector<Sentence> sents;
  for (auto& [s, t] : pairs) sents.push_back(s);
  Vocab vocab = build_vocab(sents, 2500);
  for (auto& [sent, tree] : pairs) {
    auto layers = derive_layers(sent, tree, vocab);
    CHECK(replay(layers) == tree);
  }
}
