#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace heckfa::rng {

// splitmix64 step; used to derive well-separated seeds from (seed, path).
std::uint64_t splitmix64(std::uint64_t& state);

// Hash-chains the path onto the root seed. Streams derived with distinct
// paths are independent, so e.g. training draws never perturb extraction
// draws when the epoch count changes.
std::uint64_t derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

// Stream tags for the seed sub-streams used across the pipeline.
inline constexpr std::uint64_t kTagTrain = 0x7452414e49ull;     // training epochs
inline constexpr std::uint64_t kTagExtract = 0x5845545243ull;   // extraction draws
inline constexpr std::uint64_t kTagSynth = 0x53594e5448ull;     // synthetic rows
inline constexpr std::uint64_t kTagSplit = 0x53504c4954ull;     // train/test shuffle
inline constexpr std::uint64_t kTagBench = 0x42454e4348ull;     // benchmark cells

// Deterministic random source. The engine is std::mt19937_64 whose output
// sequence is pinned by the standard; the variate transforms below are our
// own, so identical seeds give identical draws on every platform/libstdc++.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0, 1).
  double uniform01();

  // Standard normal via Box-Muller (pair cached).
  double normal();

  // Standard Gumbel(0,1): -log(-log(U)).
  double gumbel();

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace heckfa::rng
