#include "linkchain/model.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace linkchain {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

CPTable::CPTable(int num_contexts, int num_values)
    : num_contexts_(num_contexts),
      num_values_(num_values),
      counts_(static_cast<std::size_t>(num_contexts) * num_values, 0),
      totals_(num_contexts, 0) {}

void CPTable::add(int ctx, int value, long long k) {
  counts_[static_cast<std::size_t>(ctx) * num_values_ + value] += k;
  totals_[ctx] += k;
}

long long CPTable::count(int ctx, int value) const {
  return counts_[static_cast<std::size_t>(ctx) * num_values_ + value];
}

long long CPTable::context_total(int ctx) const { return totals_[ctx]; }

double CPTable::log_prob(int ctx, int value, double alpha) const {
  double num = static_cast<double>(count(ctx, value)) + alpha;
  if (num <= 0.0) return kNegInf;
  double den = static_cast<double>(totals_[ctx]) + alpha * num_values_;
  return std::log(num) - std::log(den);
}

void CPTable::merge(const CPTable& other) {
  if (other.num_contexts_ != num_contexts_ || other.num_values_ != num_values_)
    throw std::invalid_argument("CPTable shape mismatch");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  for (std::size_t i = 0; i < totals_.size(); ++i) totals_[i] += other.totals_[i];
}

const char* feature_name(int f) {
  static const char* names[kNumFeatures] = {"word",      "pos",       "lcomp",
                                            "rcomp",     "next_word", "next_pos",
                                            "prev_rcomp", "next_lcomp"};
  return names[f];
}

FeatureView make_view(const Vocab& vocab, const Layer& layer, std::size_t t) {
  const std::size_t n = layer.size();
  const auto& tok = layer.tokens[t];
  FeatureView v;
  v.codes[kWordCur] = tok.word;
  v.codes[kPosCur] = tok.pos;
  v.codes[kLcompCur] = static_cast<int>(tok.lcomp);
  v.codes[kRcompCur] = static_cast<int>(tok.rcomp);
  if (t + 1 < n) {
    v.codes[kWordNext] = layer.tokens[t + 1].word;
    v.codes[kPosNext] = layer.tokens[t + 1].pos;
    v.codes[kLcompNext] = static_cast<int>(layer.tokens[t + 1].lcomp);
  } else {
    v.codes[kWordNext] = vocab.word_boundary_code();
    v.codes[kPosNext] = vocab.pos_boundary_code();
    v.codes[kLcompNext] = kBoundaryComp;
  }
  v.codes[kRcompPrev] =
      t > 0 ? static_cast<int>(layer.tokens[t - 1].rcomp) : kBoundaryComp;
  return v;
}

std::vector<FeatureView> make_views(const Vocab& vocab, const Layer& layer) {
  std::vector<FeatureView> views;
  views.reserve(layer.size());
  for (std::size_t t = 0; t < layer.size(); ++t)
    views.push_back(make_view(vocab, layer, t));
  return views;
}

Model Model::make(Vocab vocab, double alpha) {
  Model m;
  m.alpha = alpha;
  m.trans = CPTable(kNumLinkContexts, kNumLinks);
  int cards[kNumFeatures] = {vocab.word_card(), vocab.pos_card(), kCompCard,
                             kCompCard,         vocab.word_card(), vocab.pos_card(),
                             kCompCard,         kCompCard};
  for (int f = 0; f < kNumFeatures; ++f) m.emit[f] = CPTable(kNumLinks, cards[f]);
  m.vocab = std::move(vocab);
  return m;
}

void Model::observe_layer(const Layer& layer) {
  const std::size_t n = layer.size();
  if (n < 2) return;
  int prev = kBoundaryLink;
  for (std::size_t t = 0; t < n; ++t) {
    Link l = layer.tokens[t].label;
    trans.add(prev, link_code(l));
    FeatureView view = make_view(vocab, layer, t);
    for (int f = 0; f < kNumFeatures; ++f)
      emit[f].add(link_code(l), view.codes[f]);
    prev = link_code(l);
  }
}

double Model::slice_log_score(const FeatureView& view, int l_prev,
                              Link l) const {
  double s = trans.log_prob(l_prev, link_code(l), alpha);
  for (int f = 0; f < kNumFeatures; ++f) {
    s += emit[f].log_prob(link_code(l), view.codes[f], alpha);
  }
  return s;
}

void Model::merge_counts(const Model& other) {
  trans.merge(other.trans);
  for (int f = 0; f < kNumFeatures; ++f) emit[f].merge(other.emit[f]);
}

Model train(const Vocab& vocab, double alpha,
            const std::vector<std::vector<Layer>>& sentences_layers) {
  Model m = Model::make(vocab, alpha);
  for (const auto& layers : sentences_layers) {
    for (const auto& layer : layers) m.observe_layer(layer);
  }
  return m;
}

namespace {

void save_table(std::ostream& out, const std::string& name,
                const CPTable& table) {
  out << "[table " << name << ' ' << table.num_contexts() << ' '
      << table.num_values() << "]\n";
  for (int c = 0; c < table.num_contexts(); ++c) {
    for (int v = 0; v < table.num_values(); ++v) {
      long long k = table.count(c, v);
      if (k != 0) out << c << '|' << v << '|' << k << '\n';
    }
  }
  out << "[end]\n";
}

CPTable load_table(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("model file: missing table " + name);
  char got[128];
  int ctxs = 0, vals = 0;
  if (sscanf(line.c_str(), "[table %127s %d %d]", got, &ctxs, &vals) != 3 ||
      name != got) {
    throw ParseError("model file: bad table header for " + name);
  }
  CPTable table(ctxs, vals);
  while (std::getline(in, line)) {
    if (line == "[end]") return table;
    int c = 0, v = 0;
    long long k = 0;
    if (sscanf(line.c_str(), "%d|%d|%lld", &c, &v, &k) != 3 || c < 0 ||
        c >= ctxs || v < 0 || v >= vals) {
      throw ParseError("model file: bad count line '" + line + "'");
    }
    table.add(c, v, k);
  }
  throw ParseError("model file: truncated table " + name);
}

}  // namespace

void save_model(std::ostream& out, const Model& model) {
  out.precision(std::numeric_limits<double>::max_digits10);
  out << "linkchain-model v1 alpha=" << model.alpha << '\n';
  save_vocab(out, model.vocab);
  save_table(out, "trans", model.trans);
  for (int f = 0; f < kNumFeatures; ++f)
    save_table(out, feature_name(f), model.emit[f]);
}

Model load_model(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("model file: empty");
  double alpha = 0.0;
  if (sscanf(line.c_str(), "linkchain-model v1 alpha=%lf", &alpha) != 1) {
    throw ParseError("model file: unrecognized header '" + line + "'");
  }
  Vocab vocab = load_vocab(in);
  Model m = Model::make(std::move(vocab), alpha);
  m.trans = load_table(in, "trans");
  if (m.trans.num_contexts() != kNumLinkContexts ||
      m.trans.num_values() != kNumLinks) {
    throw ParseError("model file: transition table has wrong shape");
  }
  for (int f = 0; f < kNumFeatures; ++f) {
    CPTable t = load_table(in, feature_name(f));
    if (t.num_contexts() != m.emit[f].num_contexts() ||
        t.num_values() != m.emit[f].num_values()) {
      throw ParseError("model file: table shape mismatch for " +
                       std::string(feature_name(f)));
    }
    m.emit[f] = std::move(t);
  }
  return m;
}

void save_model_file(const std::string& path, const Model& model) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  save_model(out, model);
  if (!out) throw ParseError("write failed: " + path);
}

Model load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return load_model(in);
}

}  // namespace linkchain
