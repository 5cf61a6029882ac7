#ifndef LINKCHAIN_SYNTHETIC_HPP
#define LINKCHAIN_SYNTHETIC_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "linkchain/types.hpp"

namespace linkchain {

// Toy dependency grammar: S -> NP VERB (NP) (ADV); NP -> (DET) NOUN (PP);
// PP -> PREP NP. Attachments are fixed by class, so the chain classifier
// can in principle recover every tree. All output is projective and at
// most 10 tokens long.
struct ToyGrammar {
  std::vector<std::string> det = {"the", "a", "some"};
  std::vector<std::string> noun = {"king",  "camel",     "country",
                                   "trunk", "telescope", "minister"};
  std::vector<std::string> prep = {"of", "with", "in"};
  std::vector<std::string> verb = {"bought", "saw", "slept", "praised"};
  std::vector<std::string> adv = {"quickly", "today", "reluctantly"};

  double p_det = 0.7;
  double p_pp = 0.3;
  double p_object = 0.6;
  double p_adv = 0.25;
  std::size_t max_len = 10;
};

std::vector<std::pair<Sentence, DepTree>> generate(const ToyGrammar& grammar,
                                                   std::uint64_t seed,
                                                   std::size_t count);

}  // namespace linkchain

#endif  // LINKCHAIN_SYNTHETIC_HPP
