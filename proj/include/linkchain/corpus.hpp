#ifndef LINKCHAIN_CORPUS_HPP
#define LINKCHAIN_CORPUS_HPP

#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "linkchain/types.hpp"

namespace linkchain {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Word and PoS code books. Word lookups never fail: out-of-vocabulary
// forms map to a dedicated code, unseen tags likewise.
struct Vocab {
  std::vector<std::string> words;        // code -> form, frequency order
  std::vector<long long> word_freq;      // parallel to words
  std::vector<std::string> pos_tags;
  std::unordered_map<std::string, int> word_index;
  std::unordered_map<std::string, int> pos_index;

  int word_code(const std::string& form) const;
  int pos_code(const std::string& tag) const;

  int oov_code() const { return static_cast<int>(words.size()); }
  int word_boundary_code() const { return oov_code() + 1; }
  int word_card() const { return oov_code() + 2; }

  int pos_unk_code() const { return static_cast<int>(pos_tags.size()); }
  int pos_boundary_code() const { return pos_unk_code() + 1; }
  int pos_card() const { return pos_unk_code() + 2; }

  bool is_oov(const std::string& form) const {
    return word_index.find(form) == word_index.end();
  }
};

struct TreeCheck {
  bool ok = true;
  std::string violation;  // empty when ok
};

// Reads tab-separated INDEX FORM POS HEAD records, blank line between
// sentences. Throws ParseError naming the offending line.
std::vector<Sentence> read_corpus(std::istream& in);
std::vector<Sentence> read_corpus_file(const std::string& path);

void write_corpus(std::ostream& out, const std::vector<Sentence>& sents);

// Checks the dependency axioms; violations are reported, not thrown.
TreeCheck validate_tree(const std::vector<int>& heads);
inline TreeCheck validate_tree(const DepTree& t) { return validate_tree(t.heads); }

// Subtree-contiguity test. Requires a single-rooted acyclic head vector.
bool is_projective(const std::vector<int>& heads);
inline bool is_projective(const DepTree& t) { return is_projective(t.heads); }

// Penn Treebank punctuation tags, both bracket spellings.
const std::set<std::string>& default_punct_tags();

// Drops punctuation tokens (re-heading their dependents transitively)
// and rejects sentences longer than max_len or with an invalid tree.
std::optional<Sentence> filter_short(const Sentence& sent,
                                     const std::set<std::string>& punct_tags,
                                     std::size_t max_len);

// Top-K forms by frequency, ties broken by first occurrence.
Vocab build_vocab(const std::vector<Sentence>& corpus, std::size_t k);

void save_vocab(std::ostream& out, const Vocab& vocab);
Vocab load_vocab(std::istream& in);

}  // namespace linkchain

#endif  // LINKCHAIN_CORPUS_HPP
