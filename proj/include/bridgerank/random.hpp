#pragma once
// Portable seeded randomness. The standard distributions are implementation
// defined, so sampling is done here on top of mt19937_64 to keep fixtures
// byte-identical across toolchains.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace bridgerank {

uint64_t splitmix64(uint64_t x);

// Combine a base seed with stream labels into an independent child seed.
uint64_t derive_seed(uint64_t base, std::initializer_list<uint64_t> parts);
uint64_t hash_string(std::string_view s);

class Rng {
  public:
    explicit Rng(uint64_t seed) : engine_(splitmix64(seed)) {}

    // Uniform in [0, 1).
    double uniform();
    // Uniform integer in [0, n).
    uint64_t index(uint64_t n);
    double normal();

    uint64_t bits() { return engine_(); }

  private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace bridgerank
