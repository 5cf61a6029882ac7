#include "linkchain/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace linkchain {

const char* link_name(Link l) {
  switch (l) {
    case Link::Left: return "LEFT";
    case Link::Right: return "RIGHT";
    case Link::None: return "NONE";
  }
  return "?";
}

const char* comp_name(Comp c) {
  switch (c) {
    case Comp::None: return "none";
    case Comp::One: return "one";
    case Comp::Many: return "many";
  }
  return "?";
}

std::vector<int> Sentence::heads() const {
  std::vector<int> h;
  h.reserve(tokens.size());
  for (const auto& t : tokens) h.push_back(t.head);
  return h;
}

int Vocab::word_code(const std::string& form) const {
  auto it = word_index.find(form);
  return it == word_index.end() ? oov_code() : it->second;
}

int Vocab::pos_code(const std::string& tag) const {
  auto it = pos_index.find(tag);
  return it == pos_index.end() ? pos_unk_code() : it->second;
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      cols.push_back(line.substr(start));
      break;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cols;
}

int parse_int(const std::string& s, std::size_t lineno, const char* what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(lineno) + ": bad " + what +
                     " '" + s + "'");
  }
}

void finish_sentence(std::vector<Sentence>& out, Sentence& cur,
                     std::size_t lineno) {
  if (cur.tokens.empty()) return;
  for (std::size_t i = 0; i < cur.tokens.size(); ++i) {
    if (cur.tokens[i].index != static_cast<int>(i) + 1) {
      throw ParseError("line " + std::to_string(lineno) +
                       ": token indices not contiguous in sentence ending here");
    }
  }
  out.push_back(std::move(cur));
  cur = Sentence{};
}

}  // namespace

std::vector<Sentence> read_corpus(std::istream& in) {
  std::vector<Sentence> out;
  Sentence cur;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      finish_sentence(out, cur, lineno);
      continue;
    }
    auto cols = split_tabs(line);
    if (cols.size() != 4) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 4 columns, got " +
                       std::to_string(cols.size()));
    }
    RawToken tok;
    tok.index = parse_int(cols[0], lineno, "index");
    tok.form = cols[1];
    tok.pos = cols[2];
    tok.head = parse_int(cols[3], lineno, "head");
    if (tok.index < 1)
      throw ParseError("line " + std::to_string(lineno) + ": index must be >= 1");
    if (tok.head < 0)
      throw ParseError("line " + std::to_string(lineno) + ": head must be >= 0");
    if (tok.head == tok.index)
      throw ParseError("line " + std::to_string(lineno) + ": token is its own head");
    cur.tokens.push_back(std::move(tok));
  }
  finish_sentence(out, cur, lineno + 1);
  return out;
}

std::vector<Sentence> read_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_corpus(in);
}

void write_corpus(std::ostream& out, const std::vector<Sentence>& sents) {
  bool first = true;
  for (const auto& s : sents) {
    if (!first) out << '\n';
    first = false;
    for (const auto& t : s.tokens) {
      out << t.index << '\t' << t.form << '\t' << t.pos << '\t' << t.head
          << '\n';
    }
  }
}

namespace {

// All-pairs interleaving test with a virtual arc from position 0 to each
// root token; works on head vectors that may contain cycles.
bool has_crossing(const std::vector<int>& heads) {
  const int n = static_cast<int>(heads.size());
  std::vector<std::pair<int, int>> arcs;
  for (int i = 1; i <= n; ++i) {
    int h = heads[i - 1];
    arcs.emplace_back(std::min(i, h), std::max(i, h));
  }
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    for (std::size_t b = a + 1; b < arcs.size(); ++b) {
      auto [lo1, hi1] = arcs[a];
      auto [lo2, hi2] = arcs[b];
      if ((lo1 < lo2 && lo2 < hi1 && hi1 < hi2) ||
          (lo2 < lo1 && lo1 < hi2 && hi2 < hi1)) {
        return true;
      }
    }
  }
  return false;
}

bool has_cycle(const std::vector<int>& heads) {
  const int n = static_cast<int>(heads.size());
  for (int start = 1; start <= n; ++start) {
    int cur = start;
    for (int steps = 0; steps <= n; ++steps) {
      cur = heads[cur - 1];
      if (cur == 0) break;
      if (cur == start) return true;
    }
  }
  return false;
}

}  // namespace

TreeCheck validate_tree(const std::vector<int>& heads) {
  const int n = static_cast<int>(heads.size());
  if (n == 0) return {false, "empty tree"};
  int roots = 0;
  for (int i = 1; i <= n; ++i) {
    int h = heads[i - 1];
    if (h < 0 || h > n) return {false, "head index out of range"};
    if (h == i) return {false, "token is its own head"};
    if (h == 0) ++roots;
  }
  // Crossing is reported before cycle/root problems; the interleaving
  // test does not need an acyclic input.
  if (has_crossing(heads)) return {false, "crossing arcs"};
  if (has_cycle(heads)) return {false, "cycle"};
  if (roots == 0) return {false, "no root"};
  if (roots > 1) return {false, "multiple roots"};
  return {true, ""};
}

bool is_projective(const std::vector<int>& heads) {
  const int n = static_cast<int>(heads.size());
  std::vector<std::vector<int>> children(n + 1);
  for (int i = 1; i <= n; ++i) children[heads[i - 1]].push_back(i);
  // Subtree of every node must cover a contiguous span.
  std::vector<int> lo(n + 1), hi(n + 1), size(n + 1);
  bool ok = true;
  auto dfs = [&](auto&& self, int u) -> void {
    lo[u] = hi[u] = u;
    size[u] = 1;
    for (int c : children[u]) {
      self(self, c);
      lo[u] = std::min(lo[u], lo[c]);
      hi[u] = std::max(hi[u], hi[c]);
      size[u] += size[c];
    }
    if (hi[u] - lo[u] + 1 != size[u]) ok = false;
  };
  for (int r : children[0]) {
    dfs(dfs, r);
  }
  return ok;
}

const std::set<std::string>& default_punct_tags() {
  static const std::set<std::string> tags = {
      ",", ".", ":", "``", "''", "#", "$", "(", ")", "-LRB-", "-RRB-"};
  return tags;
}

std::optional<Sentence> filter_short(const Sentence& sent,
                                     const std::set<std::string>& punct_tags,
                                     std::size_t max_len) {
  const int n = static_cast<int>(sent.size());
  std::vector<bool> punct(n + 1, false);
  for (const auto& t : sent.tokens) {
    if (punct_tags.count(t.pos)) punct[t.index] = true;
  }
  // Re-head through removed punctuation, transitively.
  auto resolve = [&](int h) {
    int steps = 0;
    while (h != 0 && punct[h]) {
      h = sent.tokens[h - 1].head;
      if (++steps > n) return -1;  // punctuation cycle
    }
    return h;
  };
  Sentence out;
  std::vector<int> new_index(n + 1, 0);
  for (const auto& t : sent.tokens) {
    if (punct[t.index]) continue;
    new_index[t.index] = static_cast<int>(out.tokens.size()) + 1;
    out.tokens.push_back(t);
  }
  if (out.size() > max_len || out.tokens.empty()) return std::nullopt;
  for (auto& t : out.tokens) {
    int h = resolve(t.head);
    if (h < 0 || (h != 0 && new_index[h] == 0)) return std::nullopt;
    t.head = h == 0 ? 0 : new_index[h];
    t.index = new_index[t.index];
  }
  if (!validate_tree(out.heads()).ok) return std::nullopt;
  return out;
}

Vocab build_vocab(const std::vector<Sentence>& corpus, std::size_t k) {
  struct Entry {
    long long freq = 0;
    long long first_seen = 0;
  };
  std::unordered_map<std::string, Entry> freq;
  std::map<std::string, bool> tags;  // ordered for determinism
  long long order = 0;
  for (const auto& s : corpus) {
    for (const auto& t : s.tokens) {
      auto [it, inserted] = freq.try_emplace(t.form);
      if (inserted) it->second.first_seen = order;
      ++it->second.freq;
      ++order;
      tags[t.pos] = true;
    }
  }
  std::vector<std::pair<std::string, Entry>> ranked(freq.begin(), freq.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second.freq != b.second.freq) return a.second.freq > b.second.freq;
    return a.second.first_seen < b.second.first_seen;
  });
  if (ranked.size() > k) ranked.resize(k);

  Vocab v;
  for (const auto& [form, e] : ranked) {
    v.word_index[form] = static_cast<int>(v.words.size());
    v.words.push_back(form);
    v.word_freq.push_back(e.freq);
  }
  for (const auto& [tag, _] : tags) {
    v.pos_index[tag] = static_cast<int>(v.pos_tags.size());
    v.pos_tags.push_back(tag);
  }
  return v;
}

void save_vocab(std::ostream& out, const Vocab& vocab) {
  out << "[words " << vocab.words.size() << "]\n";
  for (std::size_t i = 0; i < vocab.words.size(); ++i) {
    out << i << '\t' << vocab.words[i] << '\t' << vocab.word_freq[i] << '\n';
  }
  out << "[pos " << vocab.pos_tags.size() << "]\n";
  for (std::size_t i = 0; i < vocab.pos_tags.size(); ++i) {
    out << i << '\t' << vocab.pos_tags[i] << '\n';
  }
}

Vocab load_vocab(std::istream& in) {
  Vocab v;
  std::string line;
  std::size_t nwords = 0, npos = 0;
  if (!std::getline(in, line) ||
      sscanf(line.c_str(), "[words %zu]", &nwords) != 1) {
    throw ParseError("model file: bad vocabulary header");
  }
  for (std::size_t i = 0; i < nwords; ++i) {
    if (!std::getline(in, line)) throw ParseError("model file: truncated vocabulary");
    auto cols = split_tabs(line);
    if (cols.size() != 3) throw ParseError("model file: bad vocabulary entry");
    v.word_index[cols[1]] = static_cast<int>(v.words.size());
    v.words.push_back(cols[1]);
    v.word_freq.push_back(std::stoll(cols[2]));
  }
  if (!std::getline(in, line) || sscanf(line.c_str(), "[pos %zu]", &npos) != 1) {
    throw ParseError("model file: bad pos header");
  }
  for (std::size_t i = 0; i < npos; ++i) {
    if (!std::getline(in, line)) throw ParseError("model file: truncated pos table");
    auto cols = split_tabs(line);
    if (cols.size() != 2) throw ParseError("model file: bad pos entry");
    v.pos_index[cols[1]] = static_cast<int>(v.pos_tags.size());
    v.pos_tags.push_back(cols[1]);
  }
  return v;
}

}  // namespace linkchain
