#pragma once

#include <cstdint>

#include "fibcheck/io.hpp"

namespace fibcheck {

// splitmix64; cross-platform deterministic
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % static_cast<uint64_t>(n)); }
  bool coin(int percent) { return below(100) < percent; }
};

struct SuiteConfig {
  uint64_t seed = 1;
  int samples = 100;
  int max_objects = 8;
  int max_morphisms = 40;
  long max_functor_candidates = 20000;
  std::vector<std::string> theorems;  // empty = all
  std::string report_format = "text";
  int threads = 0;  // 0 = hardware, capped
};

// Recipes are small JSON trees; building one is deterministic, so every
// counterexample replays from its recipe alone.
CatPtr build_cat_recipe(const Json& r);
Functor build_fib_recipe(const Json& r);
TwoSidedInstance build_twosided_recipe(const Json& r);
SlicedMap build_sliced_recipe(const Json& r);
struct CospanRecipeOut {
  SlicedCospan cospan;
};
SlicedCospan build_cospan_recipe(const Json& r);

// span recipes for the free fibration: a pair of functors out of one total
struct SpanOut {
  Functor xi, pi;
};
SpanOut build_span_recipe(const Json& r);

Json sample_cat_recipe(Rng& rng, const SuiteConfig& cfg, int depth = 0);
Json sample_fib_recipe(Rng& rng, const SuiteConfig& cfg);
// closed_only: use only two-sidedness-preserving constructions
Json sample_twosided_recipe(Rng& rng, const SuiteConfig& cfg, bool closed_only);
Json sample_sliced_recipe(Rng& rng, const SuiteConfig& cfg);
Json sample_cospan_recipe(Rng& rng, const SuiteConfig& cfg);
Json sample_span_recipe(Rng& rng, const SuiteConfig& cfg);

// retry wrapper: resamples (bounded) when a recipe busts the caps
template <typename Builder, typename Sampler>
auto sample_with_retry(Rng& rng, const SuiteConfig& cfg, Sampler sample, Builder build,
                       Json* out_recipe) {
  for (int attempt = 0;; ++attempt) {
    Json r = sample(rng, cfg);
    try {
      auto v = build(r);
      if (out_recipe) *out_recipe = r;
      return v;
    } catch (const Error& e) {
      bool retryable =
          e.code == ErrorCode::SizeCapExceeded || e.code == ErrorCode::PreconditionFailed;
      if (!retryable || attempt > 200) throw;
    }
  }
}

// caps applied to built categories during sampling
void enforce_caps(const FinCat& c, const SuiteConfig& cfg);

}  // namespace fibcheck
