#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "fixcofe/cofe.hpp"
#include "fixcofe/report.hpp"

namespace fixcofe {

enum class Mode { Contractive, ContractiveOnFixedPoints, Unverified };

/// A total endomap on one instance. The mode is a caller declaration; the
/// engine assumes nothing beyond Unverified without it.
template <Cofe I>
struct Operator {
    std::function<typename I::Elem(const typename I::Elem&)> apply;
    Mode mode = Mode::Unverified;
};

template <Cofe I>
typename I::Elem iterate(const Operator<I>& f, typename I::Elem x0, Level n) {
    for (Level i = 0; i < n; ++i) x0 = f.apply(x0);
    return x0;
}

/// The fixed point of f as a lazily observable limit of iterates:
/// query(n) = truncate(n, f^n(seed)), which for operators contractive on
/// fixed points equals the fixed point's level-n observation.
template <Cofe I>
class FixHandle {
public:
    // Unverified operators require an explicit override; the handle then
    // carries a caveat marker.
    FixHandle(Operator<I> f, typename I::Elem seed, bool override_unverified = false)
        : f_(std::move(f)), state_(std::make_shared<State>(std::move(seed))) {
        if (f_.mode == Mode::Unverified) {
            if (!override_unverified)
                throw UnverifiedOperatorError(
                    "operator mode is Unverified; pass the override to iterate anyway");
            caveat_ = true;
        }
    }

    typename I::Obs query(Level n) const { return I::truncate(n, iterate_at(n)); }

    // f^n(seed), memoized per handle.
    const typename I::Elem& iterate_at(Level n) const {
        std::lock_guard<std::mutex> lock(state_->mu);
        while (state_->iterates.size() <= n)
            state_->iterates.push_back(f_.apply(state_->iterates.back()));
        return state_->iterates[n];
    }

    bool caveat() const { return caveat_; }
    const Operator<I>& op() const { return f_; }

private:
    struct State {
        explicit State(typename I::Elem seed) { iterates.push_back(std::move(seed)); }
        std::mutex mu;
        std::vector<typename I::Elem> iterates;
    };
    Operator<I> f_;
    std::shared_ptr<State> state_;
    bool caveat_ = false;
};

template <Cofe I>
FixHandle<I> fix(Operator<I> f, typename I::Elem seed, bool override_unverified = false) {
    return FixHandle<I>(std::move(f), std::move(seed), override_unverified);
}

/// Checks the iterate coherence lemma: f^n(x0) ≡_n f^{n+1}(x0) for all
/// n < N. A failure is evidence that f is not contractive on fixed points.
template <Cofe I>
CheckReport iterate_coherence_probe(const Operator<I>& f, typename I::Elem x0, Level n_max) {
    std::vector<typename I::Elem> iters{x0};
    for (Level i = 0; i < n_max; ++i) iters.push_back(f.apply(iters.back()));
    for (Level n = 0; n < n_max; ++n) {
        auto oa = I::truncate(n, iters[n]);
        auto ob = I::truncate(n, iters[n + 1]);
        if (!(oa == ob)) {
            CheckReport r;
            r.passed = false;
            r.property = "iterate-coherence";
            r.level = n;
            r.witness_a = I::show(oa);
            r.witness_b = I::show(ob);
            r.samples = n + 1;
            auto a = iters[n];
            auto b = iters[n + 1];
            r.replay = [a, b, n] { return !approx_eq<I>(n, a, b); };
            return r;
        }
    }
    return CheckReport::pass(n_max);
}

/// Checks uniqueness at finite depth: iterates from every pair of seeds
/// agree at matching observation levels, truncate(n, f^n(x)) =
/// truncate(n, f^n(y)) for all n <= N.
template <Cofe I>
CheckReport seed_independence_probe(const Operator<I>& f, const std::vector<typename I::Elem>& seeds,
                                    Level n_max) {
    std::vector<std::vector<typename I::Elem>> iters;
    for (const auto& s : seeds) {
        std::vector<typename I::Elem> row{s};
        for (Level i = 0; i < n_max; ++i) row.push_back(f.apply(row.back()));
        iters.push_back(std::move(row));
    }
    std::uint64_t checked = 0;
    for (Level n = 0; n <= n_max; ++n) {
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            for (std::size_t j = i + 1; j < seeds.size(); ++j) {
                ++checked;
                auto oa = I::truncate(n, iters[i][n]);
                auto ob = I::truncate(n, iters[j][n]);
                if (!(oa == ob)) {
                    CheckReport r;
                    r.passed = false;
                    r.property = "seed-independence";
                    r.level = n;
                    r.witness_a = I::show(oa);
                    r.witness_b = I::show(ob);
                    r.samples = checked;
                    auto a = iters[i][n];
                    auto b = iters[j][n];
                    r.replay = [a, b, n] { return !approx_eq<I>(n, a, b); };
                    return r;
                }
            }
        }
    }
    return CheckReport::pass(checked);
}

}  // namespace fixcofe
