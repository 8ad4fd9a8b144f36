#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fixcofe/cofe.hpp"
#include "fixcofe/fixpoint.hpp"
#include "fixcofe/natfun.hpp"
#include "fixcofe/report.hpp"

namespace fixcofe {

/// Deterministic element source for one instance. `gen` draws a fresh
/// element; `splice` builds b from a by copying a's level-n observation and
/// randomizing beyond it, so premises of the form a ≡_n b are frequently
/// non-vacuous.
template <Cofe I>
struct Sampler {
    std::uint64_t seed = 0;
    std::function<typename I::Elem(std::mt19937_64&)> gen;
    std::function<typename I::Elem(const typename I::Elem&, Level, std::mt19937_64&)> splice;
};

namespace detail {

template <Cofe I>
CheckReport law_failure(const char* property, Level n, const typename I::Elem& a,
                        const typename I::Elem& b, std::uint64_t samples,
                        std::uint64_t premise_hits, std::uint64_t seed,
                        std::function<bool()> replay) {
    CheckReport r;
    r.passed = false;
    r.property = property;
    r.level = n;
    r.witness_a = I::show(I::truncate(n, a));
    r.witness_b = I::show(I::truncate(n, b));
    r.samples = samples;
    r.premise_hits = premise_hits;
    r.rng_seed = seed;
    r.replay = std::move(replay);
    r.witness_data = std::make_pair(a, b);
    return r;
}

}  // namespace detail

/// Finite-depth check of the OFE laws on sampled elements: totality at
/// level 0, antitone nesting, per-level equivalence laws, and coherence of
/// observations under restriction. A pass is evidence, not proof.
template <Cofe I>
CheckReport check_ofe_laws(const Sampler<I>& s, Level n_max, std::size_t samples) {
    std::mt19937_64 rng(s.seed);
    std::uint64_t tried = 0, hits = 0;
    for (std::size_t it = 0; it < samples; ++it) {
        Level n_splice = static_cast<Level>(rng() % (n_max + 1));
        auto a = s.gen(rng);
        auto b = s.splice(a, n_splice, rng);
        auto c = s.splice(a, n_splice, rng);
        auto d = s.gen(rng);
        ++tried;

        // totality at 0
        if (!(I::truncate(0, a) == I::truncate(0, d)))
            return detail::law_failure<I>("totality-at-0", 0, a, d, tried, hits, s.seed,
                                          [a, d] { return !approx_eq<I>(0, a, d); });

        for (Level n = 0; n <= n_max; ++n) {
            // reflexivity
            if (!approx_eq<I>(n, a, a))
                return detail::law_failure<I>("reflexivity", n, a, a, tried, hits, s.seed,
                                              [a, n] { return !approx_eq<I>(n, a, a); });
            // observation restriction
            for (Level m = 0; m <= n; m += (n > 2 ? n / 2 : 1)) {
                if (!(I::restrict_obs(I::truncate(n, a), m) == I::truncate(m, a)))
                    return detail::law_failure<I>(
                        "observation-restriction", n, a, a, tried, hits, s.seed, [a, n, m] {
                            return !(I::restrict_obs(I::truncate(n, a), m) == I::truncate(m, a));
                        });
                if (m == n) break;
            }
            for (const auto& other : {b, d}) {
                // symmetry
                if (approx_eq<I>(n, a, other) != approx_eq<I>(n, other, a))
                    return detail::law_failure<I>("symmetry", n, a, other, tried, hits, s.seed,
                                                  [a, other, n] {
                                                      return approx_eq<I>(n, a, other) !=
                                                             approx_eq<I>(n, other, a);
                                                  });
                // nesting: n+1-equality implies n-equality
                if (n < n_max && approx_eq<I>(n + 1, a, other)) {
                    ++hits;
                    if (!approx_eq<I>(n, a, other))
                        return detail::law_failure<I>(
                            "nesting", n, a, other, tried, hits, s.seed, [a, other, n] {
                                return approx_eq<I>(n + 1, a, other) && !approx_eq<I>(n, a, other);
                            });
                }
            }
            // transitivity over the spliced triple
            if (approx_eq<I>(n, a, b) && approx_eq<I>(n, b, c)) {
                ++hits;
                if (!approx_eq<I>(n, a, c))
                    return detail::law_failure<I>("transitivity", n, a, c, tried, hits, s.seed,
                                                  [a, b, c, n] {
                                                      return approx_eq<I>(n, a, b) &&
                                                             approx_eq<I>(n, b, c) &&
                                                             !approx_eq<I>(n, a, c);
                                                  });
            }
        }
    }
    auto r = CheckReport::pass(tried, hits);
    r.rng_seed = s.seed;
    return r;
}

/// Checks a ≡_n b ⟶ f(a) ≡_{n+1} f(b) on sampled prefix-spliced pairs.
template <Cofe I>
CheckReport check_contractive(const Operator<I>& f, const Sampler<I>& s, Level n_max,
                              std::size_t samples) {
    std::mt19937_64 rng(s.seed);
    std::uint64_t tried = 0, hits = 0;
    for (std::size_t it = 0; it < samples; ++it) {
        Level n_splice = static_cast<Level>(rng() % n_max);
        auto a = s.gen(rng);
        auto b = it % 4 == 3 ? s.gen(rng) : s.splice(a, n_splice, rng);
        auto fa = f.apply(a);
        auto fb = f.apply(b);
        ++tried;
        for (Level n = 0; n < n_max; ++n) {
            if (!approx_eq<I>(n, a, b)) break;
            ++hits;
            if (!approx_eq<I>(n + 1, fa, fb)) {
                auto r = detail::law_failure<I>("contractive", n, a, b, tried, hits, s.seed,
                                                [f, a, b, n] {
                                                    return approx_eq<I>(n, a, b) &&
                                                           !approx_eq<I>(n + 1, f.apply(a),
                                                                         f.apply(b));
                                                });
                r.witness_a = I::show(I::truncate(n + 1, fa));
                r.witness_b = I::show(I::truncate(n + 1, fb));
                return r;
            }
        }
    }
    auto r = CheckReport::pass(tried, hits);
    r.rng_seed = s.seed;
    return r;
}

/// Checks contractiveness on fixed points:
///   a ≡_n b, a ≡_n f(a), b ≡_n f(b)  ⟶  f(a) ≡_{n+1} f(b)
/// on (i) prefix-spliced sampled pairs and (ii) pairs of iterates from
/// sampled seeds, which satisfy the premise whenever f is c.f.p. and so
/// keep the premise-hit count meaningful.
template <Cofe I>
CheckReport check_cfp(const Operator<I>& f, const Sampler<I>& s, Level n_max,
                      std::size_t samples) {
    std::mt19937_64 rng(s.seed);
    std::uint64_t tried = 0, hits = 0;

    auto test_pair = [&](const typename I::Elem& a, const typename I::Elem& b,
                         const typename I::Elem& fa, const typename I::Elem& fb,
                         Level n) -> CheckReport {
        if (approx_eq<I>(n, a, b) && approx_eq<I>(n, a, fa) && approx_eq<I>(n, b, fb)) {
            ++hits;
            if (!approx_eq<I>(n + 1, fa, fb)) {
                auto r = detail::law_failure<I>("cfp", n, a, b, tried, hits, s.seed,
                                                [f, a, b, n] {
                                                    auto fa2 = f.apply(a);
                                                    auto fb2 = f.apply(b);
                                                    return approx_eq<I>(n, a, b) &&
                                                           approx_eq<I>(n, a, fa2) &&
                                                           approx_eq<I>(n, b, fb2) &&
                                                           !approx_eq<I>(n + 1, fa2, fb2);
                                                });
                r.witness_a = I::show(I::truncate(n + 1, fa));
                r.witness_b = I::show(I::truncate(n + 1, fb));
                return r;
            }
        }
        return CheckReport::pass();
    };

    // (i) spliced pairs
    for (std::size_t it = 0; it < samples; ++it) {
        Level n_splice = static_cast<Level>(rng() % n_max);
        auto a = s.gen(rng);
        auto b = s.splice(a, n_splice, rng);
        auto fa = f.apply(a);
        auto fb = f.apply(b);
        ++tried;
        for (Level n = 0; n < n_max; ++n) {
            auto r = test_pair(a, b, fa, fb, n);
            if (!r.passed) return r;
        }
    }

    // (ii) iterate pairs from sampled seeds
    std::size_t seed_pairs = samples / 8 + 1;
    for (std::size_t it = 0; it < seed_pairs; ++it) {
        auto x = s.gen(rng);
        auto y = s.gen(rng);
        std::vector<typename I::Elem> xi{x}, yi{y};
        for (Level i = 0; i <= n_max; ++i) {
            xi.push_back(f.apply(xi.back()));
            yi.push_back(f.apply(yi.back()));
        }
        ++tried;
        for (Level n = 0; n < n_max; ++n) {
            auto r = test_pair(xi[n], yi[n], xi[n + 1], yi[n + 1], n);
            if (!r.passed) return r;
        }
    }
    auto r = CheckReport::pass(tried, hits);
    r.rng_seed = s.seed;
    return r;
}

// ---- NatFun exhaustive machinery --------------------------------------

/// Pair witness for NatFun-table counterexamples, replayable from its
/// serialized form.
struct NatFunPairWitness {
    NatFun::Table a;
    NatFun::Table b;
    Level level = 0;
};

struct NatFunLemmaWitness {
    NatFun::Table f;
    Level level = 0;
    Value arg = 0;
};

// Default 10^6; overridable via the FIXCOFE_ENUM_CAP environment variable.
std::uint64_t enumeration_cap();

/// All tables with entries f(k) <= vmax for k < len and default 0, in
/// lexicographic order. Throws EnumerationCapError beyond the cap.
std::vector<NatFun::Table> enumerate_natfun_tables(Level len, Value vmax);

CheckReport check_contractive_exhaustive(const Operator<NatFun>& f, Level len, Value vmax,
                                         Level n_max);
CheckReport check_cfp_exhaustive(const Operator<NatFun>& f, Level len, Value vmax, Level n_max);

/// Exhaustive check that partial fixed points vanish below their level:
/// whenever T(f) ≡_n f (n <= n_max), every f(k) with k < n is 0.
CheckReport check_partial_fixpoint_lemma(const Operator<NatFun>& f, Level len, Value vmax,
                                         Level n_max);

}  // namespace fixcofe
