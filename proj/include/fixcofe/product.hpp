#pragma once

#include <string>
#include <utility>

#include "fixcofe/cofe.hpp"

namespace fixcofe {

/// Binary product instance: observations are pairs of component
/// observations at the same level.
template <Cofe A, Cofe B>
struct Product {
    using Elem = std::pair<typename A::Elem, typename B::Elem>;
    using Obs = std::pair<typename A::Obs, typename B::Obs>;

    static Obs truncate(Level n, const Elem& e) {
        return {A::truncate(n, e.first), B::truncate(n, e.second)};
    }

    static Obs restrict_obs(const Obs& o, Level m) {
        return {A::restrict_obs(o.first, m), B::restrict_obs(o.second, m)};
    }

    static std::string show(const Obs& o) {
        return "(" + A::show(o.first) + ", " + B::show(o.second) + ")";
    }

    static Elem limit(const Seq<Product>& s) {
        return {A::limit([s](Level n) { return s(n).first; }),
                B::limit([s](Level n) { return s(n).second; })};
    }
};

template <Cofe A, Cofe B>
typename Product<A, B>::Elem product_pair(typename A::Elem a, typename B::Elem b) {
    return {std::move(a), std::move(b)};
}

}  // namespace fixcofe
