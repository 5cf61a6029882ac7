#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "linkchain/corpus.hpp"
#include "linkchain/eval.hpp"
#include "linkchain/inference.hpp"
#include "linkchain/model.hpp"
#include "linkchain/oracle.hpp"
#include "linkchain/parser.hpp"
#include "linkchain/synthetic.hpp"
#include "linkchain/types.hpp"

namespace {

using namespace linkchain;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct FilterStats {
  std::size_t kept = 0;
  std::size_t too_long = 0;
  std::size_t invalid_after_punct = 0;
  std::size_t nonprojective = 0;
};

// Punctuation removal + length bound + projectivity gate shared by the
// training-side commands.
std::vector<Sentence> load_usable(const std::string& path,
                                  const std::set<std::string>& punct,
                                  std::size_t max_len, FilterStats& stats) {
  std::vector<Sentence> usable;
  for (const auto& raw : read_corpus_file(path)) {
    auto filtered = filter_short(raw, punct, max_len);
    if (!filtered) {
      std::size_t nonpunct = 0;
      for (const auto& t : raw.tokens)
        if (!punct.count(t.pos)) ++nonpunct;
      if (nonpunct > max_len)
        ++stats.too_long;
      else
        ++stats.invalid_after_punct;
      continue;
    }
    if (!is_projective(filtered->heads())) {
      ++stats.nonprojective;
      continue;
    }
    ++stats.kept;
    usable.push_back(std::move(*filtered));
  }
  return usable;
}

std::set<std::string> punct_set(const std::vector<std::string>& flags) {
  if (flags.empty()) return default_punct_tags();
  return {flags.begin(), flags.end()};
}

DecodeMode parse_mode(const std::string& s) {
  if (s == "posterior") return DecodeMode::Posterior;
  return DecodeMode::Viterbi;
}

int cmd_train(const std::string& treebank, const std::string& model_out,
              std::size_t vocab_size, double alpha, std::size_t max_len,
              const std::vector<std::string>& punct_flags, double split,
              std::uint64_t seed) {
  FilterStats stats;
  auto usable = load_usable(treebank, punct_set(punct_flags), max_len, stats);
  if (usable.empty()) {
    std::cerr << "error: zero usable sentences in " << treebank << '\n';
    return kExitData;
  }

  std::vector<Sentence> train_set;
  if (split > 0.0 && split < 1.0) {
    std::vector<std::size_t> order(usable.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t n_train =
        static_cast<std::size_t>(split * static_cast<double>(usable.size()));
    std::vector<Sentence> test_set;
    for (std::size_t i = 0; i < order.size(); ++i) {
      (i < n_train ? train_set : test_set).push_back(usable[order[i]]);
    }
    std::ofstream tr(model_out + ".train"), te(model_out + ".test");
    if (!tr || !te) {
      std::cerr << "error: cannot write split files next to " << model_out << '\n';
      return kExitData;
    }
    write_corpus(tr, train_set);
    write_corpus(te, test_set);
    std::cerr << "split: " << train_set.size() << " train / " << test_set.size()
              << " test sentences\n";
  } else {
    train_set = usable;
  }
  if (train_set.empty()) {
    std::cerr << "error: zero usable sentences after split\n";
    return kExitData;
  }

  Vocab vocab = build_vocab(train_set, vocab_size);
  Model model = Model::make(vocab, alpha);
  std::size_t layer_count = 0;
  for (const auto& sent : train_set) {
    auto layers = derive_layers(sent, DepTree{sent.heads()}, vocab);
    layer_count += layers.size();
    for (const auto& layer : layers) model.observe_layer(layer);
  }
  try {
    save_model_file(model_out, model);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  std::cerr << "trained on " << train_set.size() << " sentences ("
            << stats.too_long << " too long, " << stats.invalid_after_punct
            << " invalid after punctuation removal, " << stats.nonprojective
            << " non-projective rejected); " << layer_count << " layers; vocab "
            << vocab.words.size() << " words, " << vocab.pos_tags.size()
            << " tags\n";
  return kExitOk;
}

int cmd_parse(const std::string& model_path, const std::string& input,
              bool trace, const std::string& mode, bool marginals) {
  Model model = load_model_file(model_path);
  auto sents = read_corpus_file(input);
  bool first = true;
  for (const auto& sent : sents) {
    ParseResult r = parse(model, sent, parse_mode(mode));
    if (!first) std::cout << '\n';
    first = false;
    for (std::size_t i = 0; i < sent.size(); ++i) {
      std::cout << (i + 1) << '\t' << sent.tokens[i].form << '\t'
                << sent.tokens[i].pos << '\t' << r.tree.heads[i] << '\n';
    }
    if (trace) {
      std::vector<Layer> layers;
      for (const auto& [layer, labels] : r.trace) layers.push_back(layer);
      std::cerr << "# trace (fallbacks: " << r.fallback_count << ")\n";
      dump_layers(std::cerr, layers, sent);
      std::cerr << '\n';
    }
    if (marginals && sent.size() > 1) {
      Layer bottom = encode_sentence(sent, model.vocab);
      Marginals m = forward_backward(model, make_views(model.vocab, bottom));
      std::cerr << "# marginals log_Z=" << m.log_z << '\n';
      for (std::size_t t = 0; t < m.per_pos.size(); ++t) {
        std::cerr << (t + 1) << '\t' << m.per_pos[t][0] << '\t'
                  << m.per_pos[t][1] << '\t' << m.per_pos[t][2] << '\n';
      }
    }
  }
  return kExitOk;
}

int cmd_eval(const std::string& model_path, const std::string& gold_path,
             const std::string& baseline, std::size_t samples,
             std::uint64_t seed, const std::string& mode) {
  Model model = load_model_file(model_path);
  auto sents = read_corpus_file(gold_path);
  if (sents.empty()) {
    std::cerr << "error: empty gold corpus\n";
    return kExitData;
  }
  std::mt19937_64 rng(seed);
  std::vector<Tally> tallies;
  for (const auto& sent : sents) {
    DepTree gold{sent.heads()};
    std::vector<bool> oov(sent.size());
    for (std::size_t i = 0; i < sent.size(); ++i)
      oov[i] = model.vocab.is_oov(sent.tokens[i].form);
    if (baseline == "adjacent") {
      tallies.push_back(score(baseline_adjacent(sent.size()), gold, oov));
    } else if (baseline == "random") {
      for (std::size_t s = 0; s < samples; ++s)
        tallies.push_back(score(baseline_random(sent.size(), rng), gold, oov));
    } else {
      tallies.push_back(score(parse(model, sent, parse_mode(mode)).tree, gold, oov));
    }
  }
  print_report(std::cout, aggregate(tallies));
  return kExitOk;
}

int cmd_layers(const std::string& treebank) {
  auto sents = read_corpus_file(treebank);
  // Self-contained vocabulary so the dump carries real codes.
  Vocab vocab = build_vocab(sents, sents.size() * 128 + 1);
  bool first = true;
  std::size_t skipped = 0;
  for (const auto& sent : sents) {
    DepTree gold{sent.heads()};
    if (!validate_tree(gold).ok) {
      ++skipped;
      continue;
    }
    if (!first) std::cout << "\n";
    first = false;
    dump_layers(std::cout, derive_layers(sent, gold, vocab), sent);
  }
  if (skipped)
    std::cerr << "skipped " << skipped << " sentences with invalid trees\n";
  return kExitOk;
}

int cmd_generate(std::uint64_t seed, std::size_t count) {
  ToyGrammar grammar;
  auto pairs = generate(grammar, seed, count);
  std::vector<Sentence> sents;
  sents.reserve(pairs.size());
  for (auto& [sent, tree] : pairs) sents.push_back(std::move(sent));
  write_corpus(std::cout, sents);
  return kExitOk;
}

int cmd_stats(const std::string& treebank, std::size_t max_len,
              const std::vector<std::string>& punct_flags) {
  auto sents = read_corpus_file(treebank);
  FilterStats stats;
  auto usable = load_usable(treebank, punct_set(punct_flags), max_len, stats);
  std::size_t tokens = 0;
  for (const auto& s : sents) tokens += s.size();
  std::size_t usable_tokens = 0;
  for (const auto& s : usable) usable_tokens += s.size();
  std::cout << "sentences\t" << sents.size() << '\n'
            << "tokens\t" << tokens << '\n'
            << "usable_sentences\t" << stats.kept << '\n'
            << "usable_tokens\t" << usable_tokens << '\n'
            << "rejected_too_long\t" << stats.too_long << '\n'
            << "rejected_invalid\t" << stats.invalid_after_punct << '\n'
            << "rejected_nonprojective\t" << stats.nonprojective << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linkchain: recursive chain-classifier dependency parser"};
  app.require_subcommand(1);

  std::string treebank, model_path, input, gold_path, model_out;
  std::string baseline, mode = "viterbi";
  std::size_t vocab_size = 2500, max_len = 10, count = 1000, samples = 10;
  double alpha = 0.1, split = 0.0;
  std::uint64_t seed = 1;
  bool trace = false, marginals = false;
  std::vector<std::string> punct_flags;

  auto* train = app.add_subcommand("train", "train a model from a treebank");
  train->add_option("treebank", treebank)->required();
  train->add_option("-o,--model-out", model_out)->required();
  train->add_option("--vocab-size", vocab_size);
  train->add_option("--alpha", alpha);
  train->add_option("--max-len", max_len);
  train->add_option("--punct", punct_flags);
  train->add_option("--split", split, "train fraction; writes .train/.test files");
  train->add_option("--seed", seed);

  auto* parse_cmd = app.add_subcommand("parse", "parse sentences with a model");
  parse_cmd->add_option("model", model_path)->required();
  parse_cmd->add_option("input", input)->required();
  parse_cmd->add_flag("--trace", trace);
  parse_cmd->add_flag("--marginals", marginals);
  parse_cmd->add_option("--mode", mode)->check(CLI::IsMember({"viterbi", "posterior"}));

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a model or baseline");
  eval_cmd->add_option("model", model_path)->required();
  eval_cmd->add_option("gold", gold_path)->required();
  eval_cmd->add_option("--baseline", baseline)
      ->check(CLI::IsMember({"adjacent", "random"}));
  eval_cmd->add_option("--samples", samples);
  eval_cmd->add_option("--seed", seed);
  eval_cmd->add_option("--mode", mode)->check(CLI::IsMember({"viterbi", "posterior"}));

  auto* layers_cmd = app.add_subcommand("layers", "dump gold layer encoding");
  layers_cmd->add_option("treebank", treebank)->required();

  auto* gen_cmd = app.add_subcommand("generate", "emit a synthetic treebank");
  gen_cmd->add_option("--seed", seed);
  gen_cmd->add_option("--count", count);

  auto* stats_cmd = app.add_subcommand("stats", "corpus filter statistics");
  stats_cmd->add_option("treebank", treebank)->required();
  stats_cmd->add_option("--max-len", max_len);
  stats_cmd->add_option("--punct", punct_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (train->parsed())
      return cmd_train(treebank, model_out, vocab_size, alpha, max_len,
                       punct_flags, split, seed);
    if (parse_cmd->parsed())
      return cmd_parse(model_path, input, trace, mode, marginals);
    if (eval_cmd->parsed())
      return cmd_eval(model_path, gold_path, baseline, samples, seed, mode);
    if (layers_cmd->parsed()) return cmd_layers(treebank);
    if (gen_cmd->parsed()) return cmd_generate(seed, count);
    if (stats_cmd->parsed()) return cmd_stats(treebank, max_len, punct_flags);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
