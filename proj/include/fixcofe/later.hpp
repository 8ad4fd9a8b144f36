#pragma once

#include <optional>
#include <string>
#include <utility>

#include "fixcofe/cofe.hpp"

namespace fixcofe {

/// The one-step shift instance: equality of wrapped elements is delayed by
/// one level, so level-preserving maps into Later become contractive.
template <Cofe A>
struct Later {
    struct Elem {
        typename A::Elem payload;
    };
    using Obs = std::optional<typename A::Obs>;

    static Obs truncate(Level n, const Elem& e) {
        if (n == 0) return std::nullopt;
        return A::truncate(n - 1, e.payload);
    }

    static Obs restrict_obs(const Obs& o, Level m) {
        if (m == 0 || !o) return std::nullopt;
        return A::restrict_obs(*o, m - 1);
    }

    static std::string show(const Obs& o) {
        if (!o) return "()";
        return "next " + A::show(*o);
    }

    static Elem limit(const Seq<Later>& s) {
        return {A::limit([s](Level n) { return s(n + 1).payload; })};
    }
};

template <Cofe A>
typename Later<A>::Elem later_next(typename A::Elem a) {
    return {std::move(a)};
}

}  // namespace fixcofe
