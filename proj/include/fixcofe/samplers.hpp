#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "fixcofe/checkers.hpp"
#include "fixcofe/discrete.hpp"
#include "fixcofe/later.hpp"
#include "fixcofe/natfun.hpp"
#include "fixcofe/product.hpp"
#include "fixcofe/stream.hpp"

namespace fixcofe {

struct SamplerBounds {
    Level prefix_len = 8;  // sampled tables carry this many explicit entries
    Value max_value = 16;
};

/// Tables with random entries and default; splice copies the level-n
/// observation of the source and randomizes everything beyond it.
inline Sampler<NatFun> natfun_sampler(std::uint64_t seed, SamplerBounds b = {}) {
    Sampler<NatFun> s;
    s.seed = seed;
    s.gen = [b](std::mt19937_64& rng) {
        NatFun::Table t;
        t.prefix.resize(b.prefix_len);
        for (auto& v : t.prefix) v = rng() % (b.max_value + 1);
        t.def = rng() % (b.max_value + 1);
        return t.to_elem();
    };
    s.splice = [b](const NatFun::Elem& a, Level n, std::mt19937_64& rng) {
        NatFun::Table t;
        t.prefix.resize(std::max<std::size_t>(n, b.prefix_len));
        for (std::size_t k = 0; k < t.prefix.size(); ++k)
            t.prefix[k] = k < n ? a(k) : rng() % (b.max_value + 1);
        t.def = rng() % (b.max_value + 1);
        return t.to_elem();
    };
    return s;
}

inline Sampler<Stream> stream_sampler(std::uint64_t seed, SamplerBounds b = {}) {
    Sampler<Stream> s;
    s.seed = seed;
    s.gen = [b](std::mt19937_64& rng) {
        std::vector<Value> prefix(b.prefix_len);
        for (auto& v : prefix) v = rng() % (b.max_value + 1);
        return stream_from_prefix(std::move(prefix), rng() % (b.max_value + 1));
    };
    s.splice = [b](const Stream::Elem& a, Level n, std::mt19937_64& rng) {
        std::vector<Value> prefix(std::max<std::size_t>(n, b.prefix_len));
        for (std::size_t k = 0; k < prefix.size(); ++k)
            prefix[k] = k < n ? a.at(k) : rng() % (b.max_value + 1);
        return stream_from_prefix(std::move(prefix), rng() % (b.max_value + 1));
    };
    return s;
}

inline Sampler<Discrete<Value>> discrete_sampler(std::uint64_t seed, SamplerBounds b = {}) {
    Sampler<Discrete<Value>> s;
    s.seed = seed;
    s.gen = [b](std::mt19937_64& rng) { return rng() % (b.max_value + 1); };
    // For n >= 1, level-n equality is full equality, so the splice is a copy.
    s.splice = [b](const Value& a, Level n, std::mt19937_64& rng) {
        return n == 0 ? rng() % (b.max_value + 1) : a;
    };
    return s;
}

template <Cofe A, Cofe B>
Sampler<Product<A, B>> product_sampler(Sampler<A> left, Sampler<B> right) {
    Sampler<Product<A, B>> s;
    s.seed = left.seed;
    s.gen = [left, right](std::mt19937_64& rng) ->
        typename Product<A, B>::Elem { return {left.gen(rng), right.gen(rng)}; };
    s.splice = [left, right](const typename Product<A, B>::Elem& a, Level n,
                             std::mt19937_64& rng) -> typename Product<A, B>::Elem {
        return {left.splice(a.first, n, rng), right.splice(a.second, n, rng)};
    };
    return s;
}

template <Cofe A>
Sampler<Later<A>> later_sampler(Sampler<A> inner) {
    Sampler<Later<A>> s;
    s.seed = inner.seed;
    s.gen = [inner](std::mt19937_64& rng) -> typename Later<A>::Elem {
        return {inner.gen(rng)};
    };
    s.splice = [inner](const typename Later<A>::Elem& a, Level n, std::mt19937_64& rng) ->
        typename Later<A>::Elem {
            if (n == 0) return {inner.gen(rng)};
            return {inner.splice(a.payload, n - 1, rng)};
        };
    return s;
}

}  // namespace fixcofe
