#include "linkchain/synthetic.hpp"

#include <random>
#include <stdexcept>

#include "linkchain/corpus.hpp"

namespace linkchain {

namespace {

struct Generator {
  const ToyGrammar& g;
  std::mt19937_64& rng;
  std::vector<RawToken> tokens;
  std::vector<int> heads;  // parallel, 1-based head or 0

  bool flip(double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
  }

  const std::string& pick(const std::vector<std::string>& lex) {
    std::uniform_int_distribution<std::size_t> d(0, lex.size() - 1);
    return lex[d(rng)];
  }

  int emit(const std::string& form, const std::string& pos) {
    RawToken t;
    t.index = static_cast<int>(tokens.size()) + 1;
    t.form = form;
    t.pos = pos;
    tokens.push_back(std::move(t));
    heads.push_back(0);
    return static_cast<int>(tokens.size());
  }

  // Returns the index of the head noun; depth bounds PP recursion.
  int gen_np(int depth) {
    int det = flip(g.p_det) ? emit(pick(g.det), "DET") : 0;
    int noun = emit(pick(g.noun), "NOUN");
    if (det) heads[det - 1] = noun;
    if (depth < 2 && flip(g.p_pp)) {
      int prep = emit(pick(g.prep), "PREP");
      heads[prep - 1] = noun;
      int inner = gen_np(depth + 1);
      heads[inner - 1] = prep;
    }
    return noun;
  }

  void gen_sentence() {
    int subj = gen_np(0);
    int verb = emit(pick(g.verb), "VERB");
    heads[subj - 1] = verb;
    heads[verb - 1] = 0;
    if (flip(g.p_object)) {
      int obj = gen_np(0);
      heads[obj - 1] = verb;
    }
    if (flip(g.p_adv)) {
      int adv = emit(pick(g.adv), "ADV");
      heads[adv - 1] = verb;
    }
  }
};

}  // namespace

std::vector<std::pair<Sentence, DepTree>> generate(const ToyGrammar& grammar,
                                                   std::uint64_t seed,
                                                   std::size_t count) {
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Sentence, DepTree>> out;
  out.reserve(count);
  while (out.size() < count) {
    Generator gen{grammar, rng};
    gen.gen_sentence();
    if (gen.tokens.size() > grammar.max_len) continue;  // resample
    Sentence sent;
    DepTree tree;
    for (std::size_t i = 0; i < gen.tokens.size(); ++i) {
      gen.tokens[i].head = gen.heads[i];
      tree.heads.push_back(gen.heads[i]);
      sent.tokens.push_back(gen.tokens[i]);
    }
    out.emplace_back(std::move(sent), std::move(tree));
  }
  return out;
}

}  // namespace linkchain
