#pragma once

#include <cstdint>
#include <string>

namespace ilb {

// Entity-resolution world: latent entities rendered as several mention
// constants, each carrying hasword facts over a token pool. Mentions of one
// entity share its identity tokens, minus per-token noise.
struct SynthSpec {
  int entities = 50;
  int mentions_per_entity = 3;
  int token_pool = 600;
  int tokens_per_entity = 6;
  int extra_tokens_per_mention = 2;
  double noise = 0.1;       // chance an identity token is replaced on a mention
  std::string salt;         // constant-name prefix; disjoint salts share nothing
  std::uint64_t seed = 0;
};

struct SynthData {
  std::string facts;      // hasword(mention, token) lines
  std::string positives;  // sameentity(a, b) lines, both argument orders
};

// Deterministic per (spec, seed, salt). Throws std::invalid_argument on an
// inconsistent spec.
SynthData generate_synthetic(const SynthSpec& spec);

}  // namespace ilb
