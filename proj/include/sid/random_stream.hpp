/*
   Copyright 2026 The sid Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <array>
#include <cstdint>

namespace sid {

/// Philox4x32-10 counter-based block function (Salmon et al., SC'11).
/// Stateless: the same (counter, key) always yields the same block.
struct Philox4x32 {
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Block generate(Block counter, Key key) noexcept;
};

/// SplitMix64 finalizer; a bijective avalanche mixer on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of trajectory `index` in an ensemble rooted at `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Sequential view over a Philox stream. The key is fixed by the seed and the
/// counter walks forward, so a stream is reproducible from its seed alone and
/// distinct seeds give independent streams without coordination.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) noexcept;

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() noexcept;

    /// Standard normal via Box-Muller on two consecutive uniforms.
    double normal() noexcept;

    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t next_word() noexcept;

    std::uint64_t seed_;
    Philox4x32::Key key_;
    std::uint64_t counter_ = 0;
    std::array<std::uint64_t, 2> words_{};
    int words_left_ = 0;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace sid
