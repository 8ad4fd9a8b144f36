#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "fixcofe/fixpoint.hpp"
#include "fixcofe/natfun.hpp"
#include "fixcofe/samplers.hpp"
#include "fixcofe/stream.hpp"

namespace fixcofe::testing {

// The nested-recursion operator T g = λx. if x = 0 then 0 else g(g(x-1)),
// hand-rolled (independent of the dsl module).
inline Operator<NatFun> hand_t(Mode mode = Mode::ContractiveOnFixedPoints) {
    return {.apply =
                [](const NatFun::Elem& g) {
                    return NatFun::Elem(
                        [g](Value x) -> Value { return x == 0 ? 0 : g(g(x - 1)); });
                },
            .mode = mode};
}

inline Operator<Stream> naturals_op() {
    return {.apply = [](const Stream::Elem& s) {
                return stream_cons(0, stream_map([](Value v) { return v + 1; }, s));
            },
            .mode = Mode::Contractive};
}

inline Operator<Stream> fib_op() {
    return {.apply = [](const Stream::Elem& s) {
                return stream_cons(
                    0, stream_cons(1, stream_zip([](Value a, Value b) { return a + b; }, s,
                                                 stream_tail(s))));
            },
            .mode = Mode::Contractive};
}

// Deliberately broken instance: observations compare raw values modulo the
// level, so higher-level equality no longer implies lower-level equality.
// Negative control for the law checker.
struct BrokenNatFun {
    using Elem = NatFun::Elem;
    struct Obs {
        Level level = 0;
        std::vector<Value> raw;

        friend bool operator==(const Obs& a, const Obs& b) {
            if (a.level != b.level || a.raw.size() != b.raw.size()) return false;
            Value mod = a.level ? a.level : 1;
            for (std::size_t k = 0; k < a.raw.size(); ++k)
                if (a.raw[k] % mod != b.raw[k] % mod) return false;
            return true;
        }
    };

    static Obs truncate(Level n, const Elem& a) {
        Obs o;
        o.level = n;
        for (Level k = 0; k < n; ++k) o.raw.push_back(a(k));
        return o;
    }

    static Obs restrict_obs(const Obs& o, Level m) {
        Obs r;
        r.level = m;
        r.raw.assign(o.raw.begin(), o.raw.begin() + std::min<std::size_t>(m, o.raw.size()));
        return r;
    }

    static std::string show(const Obs& o) { return show_prefix(o.raw); }
    static Elem limit(const Seq<BrokenNatFun>& s) { return NatFun::limit(s); }
};

static_assert(Cofe<BrokenNatFun>);

inline Sampler<BrokenNatFun> broken_sampler(std::uint64_t seed) {
    auto base = natfun_sampler(seed);
    Sampler<BrokenNatFun> s;
    s.seed = base.seed;
    s.gen = base.gen;
    s.splice = base.splice;
    return s;
}

}  // namespace fixcofe::testing
