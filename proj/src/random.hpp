// Copyright 2026 The mirex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace mirex {

// std::mt19937_64's output sequence is fixed by the standard; the library
// distributions are not, so the conversions below are done by hand to keep
// generated bytes identical across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    bool chance(double p) { return uniform() < p; }

  private:
    std::mt19937_64 engine_;
};

/// Samples ranks 0..n-1 with probability proportional to 1/(rank+1)^s.
class ZipfSampler {
  public:
    ZipfSampler(std::size_t n, double exponent) : cumulative_(n) {
        double total = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            total += 1.0 / std::pow(static_cast<double>(r + 1), exponent);
            cumulative_[r] = total;
        }
        for (double& c : cumulative_) c /= total;
    }

    std::size_t operator()(Rng& rng) const {
        double u = rng.uniform();
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        if (it == cumulative_.end()) return cumulative_.size() - 1;
        return static_cast<std::size_t>(it - cumulative_.begin());
    }

  private:
    std::vector<double> cumulative_;
};

/// Derives an independent stream seed from a base seed and salt values.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    auto splitmix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return splitmix(splitmix(splitmix(seed) ^ a) ^ b);
}

}  // namespace mirex
