#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>

#include "fixcofe/report.hpp"
#include "fixcofe/value.hpp"

namespace fixcofe {

// A sequence of elements of one instance, indexed by level.
template <class I>
using Seq = std::function<typename I::Elem(Level)>;

/// A COFE instance: elements with canonical finite observations per level.
/// Two elements are n-equal iff their level-n observations are identical.
/// Requirements:
///   - truncate(0, a) is the unique empty observation,
///   - restrict_obs(truncate(n, a), m) == truncate(m, a) for m <= n,
///   - limit(s) of a coherent s observes as s(n) at every level n (lazily).
template <class I>
concept Cofe = requires(const typename I::Elem& a, const typename I::Obs& o, Level n, Seq<I> s) {
    typename I::Elem;
    typename I::Obs;
    { I::truncate(n, a) } -> std::same_as<typename I::Obs>;
    { I::restrict_obs(o, n) } -> std::same_as<typename I::Obs>;
    { o == o } -> std::convertible_to<bool>;
    { I::show(o) } -> std::same_as<std::string>;
    { I::limit(s) } -> std::same_as<typename I::Elem>;
};

template <Cofe I>
bool approx_eq(Level n, const typename I::Elem& a, const typename I::Elem& b) {
    if (n == 0) return true;
    return I::truncate(n, a) == I::truncate(n, b);
}

/// Distance in the 1-bounded bisected ultrametric view: either an exact
/// power of two, or an upper bound 2^-res when no disagreement was found
/// up to the query resolution.
struct DyadicDistance {
    bool exact = false;
    Level exponent = 0;  // value is 2^-exponent

    friend bool operator==(const DyadicDistance&, const DyadicDistance&) = default;

    static DyadicDistance exactly(Level m) { return {true, m}; }
    static DyadicDistance at_most(Level res) { return {false, res}; }
};

template <Cofe I>
DyadicDistance distance_at(const typename I::Elem& a, const typename I::Elem& b, Level res) {
    for (Level m = 1; m <= res; ++m) {
        if (!approx_eq<I>(m, a, b)) return DyadicDistance::exactly(m - 1);
    }
    return DyadicDistance::at_most(res);
}

template <Cofe I>
typename I::Elem limit_of(const Seq<I>& s) {
    return I::limit(s);
}

/// Checks x_n ≡_n x_{n+1} for all n < N. On failure reports the least
/// failing n and both observations.
template <Cofe I>
CheckReport coherence_check(const Seq<I>& s, Level n_max) {
    for (Level n = 0; n < n_max; ++n) {
        auto oa = I::truncate(n, s(n));
        auto ob = I::truncate(n, s(n + 1));
        if (!(oa == ob)) {
            CheckReport r;
            r.passed = false;
            r.property = "coherence";
            r.level = n;
            r.witness_a = I::show(oa);
            r.witness_b = I::show(ob);
            r.samples = n + 1;
            r.replay = [s, n] { return !approx_eq<I>(n, s(n), s(n + 1)); };
            return r;
        }
    }
    return CheckReport::pass(n_max);
}

/// A Cauchy modulus: k(n) such that all elements from index k(n) on are
/// n-equal. Normalized to monotone by running max.
class Modulus {
public:
    explicit Modulus(std::function<std::uint64_t(Level)> k) : k_(std::move(k)) {}

    std::uint64_t operator()(Level n) const {
        std::uint64_t m = 0;
        for (Level i = 0; i <= n; ++i) m = std::max(m, k_(i));
        return m;
    }

private:
    std::function<std::uint64_t(Level)> k_;
};

/// Extracts a coherent subsequence from a Cauchy sequence with explicit
/// modulus: y(n) = s(M(n)) with M(n) = max(m(0), ..., m(n+1)). Coherence of
/// the result is the caller's obligation via the modulus; violations surface
/// through coherence_check, not here.
template <Cofe I>
Seq<I> coherent_of_cauchy(const Seq<I>& s, const Modulus& m) {
    return [s, m](Level n) { return s(static_cast<Level>(m(n + 1))); };
}

}  // namespace fixcofe
