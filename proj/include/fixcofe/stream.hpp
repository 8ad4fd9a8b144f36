#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "fixcofe/cofe.hpp"
#include "fixcofe/value.hpp"

namespace fixcofe {

/// Streams of values with prefix observations: the level-n observation is
/// the first n values.
class Stream {
public:
    class Elem {
    public:
        explicit Elem(std::function<Value(std::uint64_t)> at)
            : at_(std::move(at)), memo_(std::make_shared<Memo>()) {}

        Value at(std::uint64_t i) const {
            {
                std::lock_guard<std::mutex> lock(memo_->mu);
                auto it = memo_->table.find(i);
                if (it != memo_->table.end()) return it->second;
            }
            Value v = at_(i);
            std::lock_guard<std::mutex> lock(memo_->mu);
            memo_->table.emplace(i, v);
            return v;
        }

    private:
        struct Memo {
            std::mutex mu;
            std::unordered_map<std::uint64_t, Value> table;
        };
        std::function<Value(std::uint64_t)> at_;
        std::shared_ptr<Memo> memo_;
    };

    using Obs = std::vector<Value>;

    static Obs truncate(Level n, const Elem& s) {
        Obs o;
        o.reserve(n);
        for (Level i = 0; i < n; ++i) o.push_back(s.at(i));
        return o;
    }

    static Obs restrict_obs(const Obs& o, Level m) {
        return Obs(o.begin(), o.begin() + std::min<std::size_t>(m, o.size()));
    }

    static std::string show(const Obs& o) { return show_prefix(o); }

    static Elem limit(const Seq<Stream>& s) {
        return Elem([s](std::uint64_t i) {
            return s(static_cast<Level>(i) + 1).at(i);
        });
    }
};

static_assert(Cofe<Stream>);

/// Guarded constructor: observation at level n+1 is h followed by t's
/// observation at level n. This level shift is what makes stream operators
/// contractive.
inline Stream::Elem stream_cons(Value h, Stream::Elem t) {
    return Stream::Elem([h, t = std::move(t)](std::uint64_t i) {
        return i == 0 ? h : t.at(i - 1);
    });
}

inline Stream::Elem stream_tail(Stream::Elem s) {
    return Stream::Elem([s = std::move(s)](std::uint64_t i) { return s.at(i + 1); });
}

// Pointwise combinators; level-preserving (non-expansive).
inline Stream::Elem stream_map(std::function<Value(Value)> g, Stream::Elem s) {
    return Stream::Elem([g = std::move(g), s = std::move(s)](std::uint64_t i) {
        return g(s.at(i));
    });
}

inline Stream::Elem stream_zip(std::function<Value(Value, Value)> g, Stream::Elem s,
                               Stream::Elem t) {
    return Stream::Elem([g = std::move(g), s = std::move(s), t = std::move(t)](std::uint64_t i) {
        return g(s.at(i), t.at(i));
    });
}

inline Stream::Elem stream_const(Value v) {
    return Stream::Elem([v](std::uint64_t) { return v; });
}

inline Stream::Elem stream_naturals() {
    return Stream::Elem([](std::uint64_t i) { return static_cast<Value>(i); });
}

inline Stream::Elem stream_from_prefix(std::vector<Value> prefix, Value def) {
    return Stream::Elem([prefix = std::move(prefix), def](std::uint64_t i) {
        return i < prefix.size() ? prefix[static_cast<std::size_t>(i)] : def;
    });
}

}  // namespace fixcofe
