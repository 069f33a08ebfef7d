// Copyright 2026 The pmlhist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pmlhist/random_stream.h"

#include <cassert>
#include <utility>

namespace pmlhist {
namespace {

std::mt19937_64 SeedEngine(uint64_t seed, const std::vector<uint64_t>& path) {
  // Length prefix keeps {} and {0} distinct.
  std::vector<uint32_t> words;
  words.reserve(3 + 2 * path.size());
  words.push_back(static_cast<uint32_t>(path.size()));
  words.push_back(static_cast<uint32_t>(seed));
  words.push_back(static_cast<uint32_t>(seed >> 32));
  for (uint64_t label : path) {
    words.push_back(static_cast<uint32_t>(label));
    words.push_back(static_cast<uint32_t>(label >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(uint64_t seed) : RandomStream(seed, {}) {}

RandomStream::RandomStream(uint64_t seed, std::vector<uint64_t> path)
    : seed_(seed), path_(std::move(path)), engine_(SeedEngine(seed_, path_)) {}

RandomStream RandomStream::At(uint64_t seed, std::vector<uint64_t> path) {
  return RandomStream(seed, std::move(path));
}

RandomStream RandomStream::Child(uint64_t label) const {
  std::vector<uint64_t> child_path = path_;
  child_path.push_back(label);
  return RandomStream(seed_, std::move(child_path));
}

double RandomStream::NextOpenUniform() {
  // (j + 0.5) / 2^53 for j in [0, 2^53).
  const uint64_t j = engine_() >> 11;
  return (static_cast<double>(j) + 0.5) * 0x1.0p-53;
}

uint64_t RandomStream::NextBelow(uint64_t bound) {
  assert(bound > 0);
  // Exactly uniform; the accepted range is a multiple of bound.
  const uint64_t limit = -bound % bound;  // 2^64 mod bound
  uint64_t x;
  do {
    x = engine_();
  } while (x < limit);
  return x % bound;
}

}  // namespace pmlhist
