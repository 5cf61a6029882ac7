#ifndef LINKCHAIN_TYPES_HPP
#define LINKCHAIN_TYPES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace linkchain {

// Local attachment decision for one token in one compression pass.
// Enum order doubles as the tie-break order for decoding.
enum class Link : std::uint8_t { Left = 0, Right = 1, None = 2 };

constexpr int kNumLinks = 3;

// Context code for the transition table: the three links plus the
// sequence-initial context.
constexpr int kBoundaryLink = 3;
constexpr int kNumLinkContexts = 4;

inline int link_code(Link l) { return static_cast<int>(l); }

const char* link_name(Link l);

// Saturating dependent counter: none, one, many.
enum class Comp : std::uint8_t { None = 0, One = 1, Many = 2 };

constexpr int kNumComp = 3;
// Comp slots for out-of-range neighbors carry this code.
constexpr int kBoundaryComp = 3;
constexpr int kCompCard = 4;

inline Comp comp_increment(Comp c) {
  return c == Comp::None ? Comp::One : Comp::Many;
}

const char* comp_name(Comp c);

struct RawToken {
  int index = 0;       // 1-based position in the sentence
  std::string form;
  std::string pos;
  int head = 0;        // 1-based head index, 0 = ROOT
};

struct Sentence {
  std::vector<RawToken> tokens;

  std::size_t size() const { return tokens.size(); }
  std::vector<int> heads() const;
};

// Head vector of a dependency tree: heads[i] is the 1-based head of
// token i+1, with 0 meaning ROOT.
struct DepTree {
  std::vector<int> heads;

  std::size_t size() const { return heads.size(); }
  bool operator==(const DepTree&) const = default;
};

}  // namespace linkchain

#endif  // LINKCHAIN_TYPES_HPP
