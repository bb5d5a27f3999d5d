/* Copyright 2026 The cudtaus Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "cudtaus/tausworthe.hpp"

namespace cudtaus {

/// Supplies one s-dimensional point in [0,1)^s per Markov chain transition.
class PointDriver {
  public:
    virtual ~PointDriver() = default;
    virtual unsigned dim() const = 0;
    virtual void next(std::span<double> out) = 0;
};

/// IID uniforms from a 64-bit Mersenne Twister.
class IidDriver final : public PointDriver {
  public:
    IidDriver(unsigned dim, std::uint64_t seed) : dim_(dim), rng_(seed) {}

    unsigned dim() const override { return dim_; }
    void next(std::span<double> out) override {
        for (unsigned j = 0; j < dim_; ++j)
            out[j] = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }

  private:
    unsigned dim_;
    std::mt19937_64 rng_;
};

/// CUD driving points: non-overlapping s-blocks over one full generator
/// period (origin first), assembled by the loops or balanced scheme and
/// digitally shifted per replication. The full period of outputs is shared
/// between replications; requesting more than b^m points throws.
template <unsigned B>
class CudDriver final : public PointDriver {
  public:
    CudDriver(std::shared_ptr<const std::vector<std::uint64_t>> stream, unsigned w, unsigned s,
              BlockScheme scheme, std::vector<std::uint64_t> shift)
        : stream_(std::move(stream)),
          w_(w),
          s_(s),
          shift_(std::move(shift)),
          indexer_(stream_->size(), s, scheme),
          scale_(1.0 / static_cast<double>(field_power<B>(w))) {
        if (!shift_.empty() && shift_.size() != s_)
            throw std::invalid_argument("digital shift must have one entry per coordinate");
    }

    unsigned dim() const override { return s_; }

    void next(std::span<double> out) override {
        if (i_ >= indexer_.point_count())
            throw std::invalid_argument("CUD driver exhausted: chain length exceeds b^m points");
        for (unsigned r = 0; r < s_; ++r) {
            std::uint64_t v = i_ == 0 ? 0 : (*stream_)[indexer_.index(i_, r)];
            if (!shift_.empty()) v = digital_shift_numerator<B>(v, shift_[r], w_);
            out[r] = static_cast<double>(v) * scale_;
        }
        ++i_;
    }

    std::uint64_t points_available() const { return indexer_.point_count(); }

  private:
    std::shared_ptr<const std::vector<std::uint64_t>> stream_;
    unsigned w_, s_;
    std::vector<std::uint64_t> shift_;
    BlockIndexer indexer_;
    double scale_;
    std::uint64_t i_ = 0;
};

/// Wrapper asserting the consumption discipline: exactly one point (all s
/// coordinates at once) per transition, none dropped or reused.
class CountingDriver final : public PointDriver {
  public:
    explicit CountingDriver(PointDriver& inner) : inner_(&inner) {}

    unsigned dim() const override { return inner_->dim(); }
    void next(std::span<double> out) override {
        if (out.size() != inner_->dim())
            throw std::logic_error("transition consumed a partial point");
        inner_->next(out);
        ++count_;
    }
    std::uint64_t transitions() const { return count_; }

  private:
    PointDriver* inner_;
    std::uint64_t count_ = 0;
};

/// Draws a w-digit digital-shift vector (one numerator per coordinate) from
/// a seeded generator, uniform over [0, b^w).
template <unsigned B>
std::vector<std::uint64_t> draw_shift(std::mt19937_64& rng, unsigned s, unsigned w) {
    const std::uint64_t bound = field_power<B>(w);
    std::uniform_int_distribution<std::uint64_t> dist(0, bound - 1);
    std::vector<std::uint64_t> shift(s);
    for (unsigned r = 0; r < s; ++r) shift[r] = dist(rng);
    return shift;
}

}  // namespace cudtaus
