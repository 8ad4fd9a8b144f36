#pragma once

#include <optional>
#include <string>

#include "fixcofe/cofe.hpp"
#include "fixcofe/value.hpp"

namespace fixcofe {

/// Degenerate instance over a set with decidable equality: a ≡_n b iff
/// n = 0 or a = b. Observation at level >= 1 is the value itself.
template <class T = Value>
struct Discrete {
    using Elem = T;
    using Obs = std::optional<T>;

    static Obs truncate(Level n, const Elem& a) {
        if (n == 0) return std::nullopt;
        return a;
    }

    static Obs restrict_obs(const Obs& o, Level m) {
        if (m == 0) return std::nullopt;
        return o;
    }

    static std::string show(const Obs& o) {
        if (!o) return "()";
        if constexpr (requires(const T& t) { std::to_string(t); })
            return std::to_string(*o);
        else
            return "<value>";
    }

    // Level 1 already determines the element.
    static Elem limit(const Seq<Discrete>& s) { return s(1); }
};

static_assert(Cofe<Discrete<Value>>);

}  // namespace fixcofe
