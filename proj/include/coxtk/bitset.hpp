// bitset.hpp - word-packed vertex sets over a fixed universe {0, ..., n-1}
#ifndef COXTK_BITSET_HPP
#define COXTK_BITSET_HPP

#include <bit>
#include <cassert>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace coxtk {

// Subset of a fixed vertex range, packed into 64-bit words.  Two sets may be
// combined only when they share the same universe size.
class Bitset {
public:
    Bitset() = default;

    explicit Bitset(int universe) : n_(universe), w_((universe + 63) / 64, 0) {
        assert(universe >= 0);
    }

    static Bitset full(int universe) {
        Bitset b(universe);
        for (auto& w : b.w_) w = ~std::uint64_t{0};
        b.trim();
        return b;
    }

    static Bitset of(int universe, std::initializer_list<int> vs) {
        Bitset b(universe);
        for (int v : vs) b.set(v);
        return b;
    }

    int universe() const { return n_; }

    bool test(int i) const {
        assert(i >= 0 && i < n_);
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(int i) {
        assert(i >= 0 && i < n_);
        w_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }

    void reset(int i) {
        assert(i >= 0 && i < n_);
        w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    void clear() {
        for (auto& w : w_) w = 0;
    }

    int count() const {
        int c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }

    bool none() const { return !any(); }

    bool intersects(const Bitset& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    // this ⊇ o
    bool contains(const Bitset& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (o.w_[i] & ~w_[i]) return false;
        return true;
    }

    bool is_subset_of(const Bitset& o) const { return o.contains(*this); }

    Bitset& operator|=(const Bitset& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }

    Bitset& operator&=(const Bitset& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }

    // this := this \ o
    Bitset& subtract(const Bitset& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    // Drop all members <= v.
    Bitset& remove_at_most(int v) {
        if (v < 0) return *this;
        int word = v >> 6;
        for (int i = 0; i < word && i < static_cast<int>(w_.size()); ++i) w_[i] = 0;
        if (word < static_cast<int>(w_.size())) {
            if ((v & 63) == 63)
                w_[word] = 0;
            else
                w_[word] &= ~std::uint64_t{0} << ((v & 63) + 1);
        }
        return *this;
    }

    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

    Bitset complement() const {
        Bitset r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
        r.trim();
        return r;
    }

    bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Bitset& o) const { return !(*this == o); }

    // Lexicographic on the vertex sequence; gives a stable canonical order.
    bool operator<(const Bitset& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) {
            if (w_[i] == o.w_[i]) continue;
            // lower set bits first: compare the lowest differing bit
            std::uint64_t diff = w_[i] ^ o.w_[i];
            std::uint64_t low = diff & ~(diff - 1);
            return (w_[i] & low) != 0;
        }
        return false;
    }

    // Smallest member, or -1 when empty.
    int first() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return static_cast<int>(i * 64 + std::countr_zero(w_[i]));
        return -1;
    }

    // Smallest member > v, or -1.
    int next(int v) const {
        int i = (v + 1) >> 6;
        if (i >= static_cast<int>(w_.size())) return -1;
        std::uint64_t w = w_[i] & (~std::uint64_t{0} << ((v + 1) & 63));
        while (true) {
            if (w) return i * 64 + std::countr_zero(w);
            if (++i >= static_cast<int>(w_.size())) return -1;
            w = w_[i];
        }
    }

    template <typename F>
    void for_each(F f) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t w = w_[i];
            while (w) {
                f(static_cast<int>(i * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(count());
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    // Low 64 bits; valid only when universe() <= 64.
    std::uint64_t low_word() const {
        assert(n_ <= 64);
        return w_.empty() ? 0 : w_[0];
    }

    static Bitset from_word(int universe, std::uint64_t word) {
        assert(universe <= 64);
        Bitset b(universe);
        if (!b.w_.empty()) b.w_[0] = word;
        b.trim();
        return b;
    }

    std::size_t hash() const {
        std::size_t h = std::hash<int>{}(n_);
        for (auto w : w_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }

    std::string to_string() const {
        std::string s = "{";
        bool first_out = true;
        for_each([&](int v) {
            if (!first_out) s += ",";
            s += std::to_string(v);
            first_out = false;
        });
        return s + "}";
    }

private:
    void trim() {
        if (n_ % 64 != 0 && !w_.empty())
            w_.back() &= (~std::uint64_t{0}) >> (64 - n_ % 64);
    }

    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace coxtk

#endif
