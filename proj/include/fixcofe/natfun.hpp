#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "fixcofe/cofe.hpp"
#include "fixcofe/value.hpp"

namespace fixcofe {

/// The prefix-equality COFE on total functions ℕ → Value: two functions are
/// n-equal iff they agree on arguments 0..n-1. The level-n observation is
/// the vector [f(0), ..., f(n-1)].
class NatFun {
public:
    class Elem {
    public:
        explicit Elem(std::function<Value(Value)> fn)
            : fn_(std::move(fn)), memo_(std::make_shared<Memo>()) {}

        // Memoized evaluation. The memo is a transparent cache: no
        // observable effect beyond timing.
        Value operator()(Value x) const {
            {
                std::lock_guard<std::mutex> lock(memo_->mu);
                auto it = memo_->table.find(x);
                if (it != memo_->table.end()) return it->second;
            }
            Value v = fn_(x);
            std::lock_guard<std::mutex> lock(memo_->mu);
            memo_->table.emplace(x, v);
            return v;
        }

    private:
        struct Memo {
            std::mutex mu;
            std::unordered_map<Value, Value> table;
        };
        std::function<Value(Value)> fn_;
        std::shared_ptr<Memo> memo_;
    };

    using Obs = std::vector<Value>;

    static Obs truncate(Level n, const Elem& a) {
        Obs o;
        o.reserve(n);
        for (Level k = 0; k < n; ++k) o.push_back(a(k));
        return o;
    }

    static Obs restrict_obs(const Obs& o, Level m) {
        return Obs(o.begin(), o.begin() + std::min<std::size_t>(m, o.size()));
    }

    static std::string show(const Obs& o) { return show_prefix(o); }

    // Lazy limit of a coherent sequence: position k is observed by forcing
    // s(k+1) only.
    static Elem limit(const Seq<NatFun>& s) {
        return Elem([s](Value x) {
            return s(static_cast<Level>(x) + 1)(x);
        });
    }

    // A finite table with entries f(k) = prefix[k] for k < prefix.size()
    // and a default value elsewhere. The sampled and enumerated shapes used
    // throughout the checkers.
    struct Table {
        std::vector<Value> prefix;
        Value def = 0;

        friend bool operator==(const Table&, const Table&) = default;

        Elem to_elem() const {
            auto p = prefix;
            auto d = def;
            return Elem([p = std::move(p), d](Value x) {
                return x < p.size() ? p[static_cast<std::size_t>(x)] : d;
            });
        }

        std::string show() const {
            std::string out = show_prefix(prefix);
            out += " default ";
            out += std::to_string(def);
            return out;
        }
    };

    static Elem from_table(const std::map<Value, Value>& entries, Value def) {
        return Elem([entries, def](Value x) {
            auto it = entries.find(x);
            return it != entries.end() ? it->second : def;
        });
    }

    static Elem zero() { return constant(0); }
    static Elem constant(Value c) { return Elem([c](Value) { return c; }); }
    static Elem identity() { return Elem([](Value x) { return x; }); }
};

static_assert(Cofe<NatFun>);

}  // namespace fixcofe
