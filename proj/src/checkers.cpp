#include "fixcofe/checkers.hpp"

#include <cstdlib>
#include <stdexcept>

namespace fixcofe {

namespace {

bool prefix_eq(Level n, const std::vector<Value>& a, const std::vector<Value>& b) {
    for (Level k = 0; k < n; ++k)
        if (a[k] != b[k]) return false;
    return true;
}

std::uint64_t pow_count(Value base, Level exp, std::uint64_t cap) {
    std::uint64_t count = 1;
    for (Level i = 0; i < exp; ++i) {
        if (count > cap / base) return cap + 1;
        count *= base;
    }
    return count;
}

}  // namespace

std::uint64_t enumeration_cap() {
    if (const char* env = std::getenv("FIXCOFE_ENUM_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 1'000'000;
}

std::vector<NatFun::Table> enumerate_natfun_tables(Level len, Value vmax) {
    std::uint64_t cap = enumeration_cap();
    std::uint64_t count = pow_count(vmax + 1, len, cap);
    if (count > cap)
        throw EnumerationCapError("enumeration of (" + std::to_string(vmax + 1) + ")^" +
                                  std::to_string(len) + " tables exceeds cap " +
                                  std::to_string(cap));
    std::vector<NatFun::Table> out;
    out.reserve(count);
    std::vector<Value> cur(len, 0);
    for (std::uint64_t i = 0; i < count; ++i) {
        out.push_back(NatFun::Table{cur, 0});
        // lexicographic successor, most significant digit first
        for (Level pos = len; pos-- > 0;) {
            if (cur[pos] < vmax) {
                ++cur[pos];
                break;
            }
            cur[pos] = 0;
        }
    }
    return out;
}

namespace {

struct TableObs {
    NatFun::Table table;
    std::vector<Value> self;   // truncate(depth, table)
    std::vector<Value> image;  // truncate(depth, f(table))
};

std::vector<TableObs> precompute(const Operator<NatFun>& f, Level len, Value vmax, Level depth) {
    auto tables = enumerate_natfun_tables(len, vmax);
    std::vector<TableObs> out;
    out.reserve(tables.size());
    for (auto& t : tables) {
        auto e = t.to_elem();
        TableObs o;
        o.self = NatFun::truncate(depth, e);
        o.image = NatFun::truncate(depth, f.apply(e));
        o.table = std::move(t);
        out.push_back(std::move(o));
    }
    return out;
}

CheckReport pair_failure(const char* property, const Operator<NatFun>& f, const TableObs& a,
                         const TableObs& b, Level n, std::uint64_t tried, std::uint64_t hits) {
    CheckReport r;
    r.passed = false;
    r.property = property;
    r.level = n;
    r.witness_a = a.table.show();
    r.witness_b = b.table.show();
    r.samples = tried;
    r.premise_hits = hits;
    NatFunPairWitness w{a.table, b.table, n};
    r.witness_data = w;
    r.replay = [f, w] {
        auto ea = w.a.to_elem();
        auto eb = w.b.to_elem();
        return approx_eq<NatFun>(w.level, ea, eb) &&
               !approx_eq<NatFun>(w.level + 1, f.apply(ea), f.apply(eb));
    };
    return r;
}

}  // namespace

CheckReport check_contractive_exhaustive(const Operator<NatFun>& f, Level len, Value vmax,
                                         Level n_max) {
    auto obs = precompute(f, len, vmax, n_max + 1);
    std::uint64_t tried = 0, hits = 0;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        for (std::size_t j = i + 1; j < obs.size(); ++j) {
            ++tried;
            for (Level n = 0; n < n_max; ++n) {
                if (!prefix_eq(n, obs[i].self, obs[j].self)) break;
                ++hits;
                if (!prefix_eq(n + 1, obs[i].image, obs[j].image))
                    return pair_failure("contractive", f, obs[i], obs[j], n, tried, hits);
            }
        }
    }
    return CheckReport::pass(tried, hits);
}

CheckReport check_cfp_exhaustive(const Operator<NatFun>& f, Level len, Value vmax, Level n_max) {
    auto obs = precompute(f, len, vmax, n_max + 1);
    std::uint64_t tried = 0, hits = 0;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        for (std::size_t j = i + 1; j < obs.size(); ++j) {
            ++tried;
            for (Level n = 0; n < n_max; ++n) {
                if (!prefix_eq(n, obs[i].self, obs[j].self)) break;
                if (!prefix_eq(n, obs[i].self, obs[i].image)) continue;
                if (!prefix_eq(n, obs[j].self, obs[j].image)) continue;
                ++hits;
                if (!prefix_eq(n + 1, obs[i].image, obs[j].image)) {
                    auto r = pair_failure("cfp", f, obs[i], obs[j], n, tried, hits);
                    NatFunPairWitness w{obs[i].table, obs[j].table, n};
                    r.replay = [f, w] {
                        auto ea = w.a.to_elem();
                        auto eb = w.b.to_elem();
                        auto fa = f.apply(ea);
                        auto fb = f.apply(eb);
                        return approx_eq<NatFun>(w.level, ea, eb) &&
                               approx_eq<NatFun>(w.level, ea, fa) &&
                               approx_eq<NatFun>(w.level, eb, fb) &&
                               !approx_eq<NatFun>(w.level + 1, fa, fb);
                    };
                    return r;
                }
            }
        }
    }
    return CheckReport::pass(tried, hits);
}

CheckReport check_partial_fixpoint_lemma(const Operator<NatFun>& f, Level len, Value vmax,
                                         Level n_max) {
    if (n_max > len)
        throw std::invalid_argument("lemma depth must not exceed the table length");
    auto obs = precompute(f, len, vmax, n_max);
    std::uint64_t tried = 0, hits = 0;
    for (const auto& o : obs) {
        ++tried;
        for (Level n = 0; n <= n_max; ++n) {
            if (!prefix_eq(n, o.image, o.self)) continue;
            ++hits;
            for (Level k = 0; k < n; ++k) {
                if (o.self[k] != 0) {
                    CheckReport r;
                    r.passed = false;
                    r.property = "partial-fixpoint-lemma";
                    r.level = n;
                    r.witness_a = o.table.show();
                    r.witness_b = "f(" + std::to_string(k) + ") = " + std::to_string(o.self[k]);
                    r.samples = tried;
                    r.premise_hits = hits;
                    NatFunLemmaWitness w{o.table, n, k};
                    r.witness_data = w;
                    r.replay = [f, w] {
                        auto e = w.f.to_elem();
                        return approx_eq<NatFun>(w.level, f.apply(e), e) && e(w.arg) != 0;
                    };
                    return r;
                }
            }
        }
    }
    return CheckReport::pass(tried, hits);
}

}  // namespace fixcofe
