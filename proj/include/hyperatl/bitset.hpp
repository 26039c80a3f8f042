/*
 * Copyright 2026 The hyperatl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace hyperatl {

/// Fixed-capacity dense bit set used for automaton state sets.
class BitSet
{
public:
    BitSet() = default;
    explicit BitSet(std::size_t size) : words_((size + 63) / 64, 0), size_(size) {}

    std::size_t size() const noexcept { return size_; }

    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

    bool any() const
    {
        for (auto w : words_)
            if (w != 0) return true;
        return false;
    }
    bool none() const { return !any(); }

    std::size_t count() const
    {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    BitSet &operator|=(const BitSet &o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    BitSet &operator&=(const BitSet &o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    /// Set difference.
    BitSet &operator-=(const BitSet &o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    bool intersects(const BitSet &o) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    bool subset_of(const BitSet &o) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    template <typename F>
    void for_each(F &&f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            auto bits = words_[w];
            while (bits) {
                auto tz = static_cast<std::size_t>(std::countr_zero(bits));
                f(w * 64 + tz);
                bits &= bits - 1;
            }
        }
    }

    const std::vector<std::uint64_t> &words() const noexcept { return words_; }

    friend bool operator==(const BitSet &a, const BitSet &b) { return a.words_ == b.words_; }
    friend bool operator<(const BitSet &a, const BitSet &b) { return a.words_ < b.words_; }

    std::size_t hash() const noexcept
    {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (auto w : words_) h = (h ^ std::hash<std::uint64_t>{}(w)) * 0x100000001b3ULL;
        return h;
    }

private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

struct BitSetHash
{
    std::size_t operator()(const BitSet &b) const noexcept { return b.hash(); }
};

/// Hash for integer sequences used as interning keys.
struct VectorHash
{
    template <typename T>
    std::size_t operator()(const std::vector<T> &v) const noexcept
    {
        std::size_t h = 0xcbf29ce484222325ULL ^ v.size();
        for (const auto &x : v) {
            h ^= std::hash<T>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

} // namespace hyperatl
