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

#ifndef PMLHIST_RANDOM_STREAM_H_
#define PMLHIST_RANDOM_STREAM_H_

#include <cstdint>
#include <random>
#include <vector>

namespace pmlhist {

// A reproducible random stream addressed by (seed, path).
//
// The engine state is derived from the seed and every path label through
// std::seed_seq, so two streams with the same address produce the same
// sequence on every platform, and child streams with different labels are
// independent of each other and of their parent. A stream is not safe to
// share between threads; derive one child per worker instead.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed);

  // Equivalent to chaining Child() over `path`, without building the
  // intermediate engines.
  static RandomStream At(uint64_t seed, std::vector<uint64_t> path);

  // Stream at path() + {label}. Does not advance this stream.
  RandomStream Child(uint64_t label) const;

  uint64_t seed() const { return seed_; }
  const std::vector<uint64_t>& path() const { return path_; }

  uint64_t NextBits() { return engine_(); }

  // Uniform on the open interval (0, 1), on a grid of spacing 2^-53.
  double NextOpenUniform();

  // Uniform integer in [0, bound). Requires bound > 0.
  uint64_t NextBelow(uint64_t bound);

 private:
  RandomStream(uint64_t seed, std::vector<uint64_t> path);

  uint64_t seed_;
  std::vector<uint64_t> path_;
  std::mt19937_64 engine_;
};

}  // namespace pmlhist

#endif  // PMLHIST_RANDOM_STREAM_H_
