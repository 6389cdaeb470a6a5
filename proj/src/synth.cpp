#include "ilb/synth.hpp"

#include <stdexcept>
#include <vector>

#include "ilb/rng.hpp"

namespace ilb {

SynthData generate_synthetic(const SynthSpec& spec) {
  if (spec.entities < 1) throw std::invalid_argument("entities must be at least 1");
  if (spec.mentions_per_entity < 1) {
    throw std::invalid_argument("mentions_per_entity must be at least 1");
  }
  if (spec.tokens_per_entity < 1) {
    throw std::invalid_argument("tokens_per_entity must be at least 1");
  }
  if (spec.token_pool < spec.tokens_per_entity) {
    throw std::invalid_argument("token_pool must cover tokens_per_entity");
  }
  if (spec.extra_tokens_per_mention < 0) {
    throw std::invalid_argument("extra_tokens_per_mention must be nonnegative");
  }
  if (!(spec.noise >= 0.0 && spec.noise <= 1.0)) {
    throw std::invalid_argument("noise must lie in [0,1]");
  }

  SplitMix64 rng(spec.seed);
  auto token_name = [&](std::size_t idx) {
    return spec.salt + "t" + std::to_string(idx);
  };

  SynthData out;
  for (int e = 0; e < spec.entities; ++e) {
    std::vector<std::size_t> identity =
        sample_indices(static_cast<std::size_t>(spec.token_pool),
                       static_cast<std::size_t>(spec.tokens_per_entity), rng);

    std::vector<std::string> mentions;
    for (int mi = 0; mi < spec.mentions_per_entity; ++mi) {
      std::string mention =
          spec.salt + "m" + std::to_string(e) + "_" + std::to_string(mi);
      for (std::size_t tok : identity) {
        if (rng.unit() < spec.noise) {
          tok = rng.bounded(static_cast<std::uint64_t>(spec.token_pool));
        }
        out.facts += "hasword(" + mention + "," + token_name(tok) + ").\n";
      }
      for (int x = 0; x < spec.extra_tokens_per_mention; ++x) {
        std::size_t tok = rng.bounded(static_cast<std::uint64_t>(spec.token_pool));
        out.facts += "hasword(" + mention + "," + token_name(tok) + ").\n";
      }
      mentions.push_back(std::move(mention));
    }

    // The relation is symmetric, so both argument orders are labeled.
    for (std::size_t a = 0; a < mentions.size(); ++a) {
      for (std::size_t b = a + 1; b < mentions.size(); ++b) {
        out.positives += "sameentity(" + mentions[a] + "," + mentions[b] + ").\n";
        out.positives += "sameentity(" + mentions[b] + "," + mentions[a] + ").\n";
      }
    }
  }
  return out;
}

}  // namespace ilb
