#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "fixcofe/cofe.hpp"
#include "fixcofe/discrete.hpp"
#include "fixcofe/natfun.hpp"
#include "helpers.hpp"

using namespace fixcofe;
using fixcofe::testing::hand_t;

namespace {

NatFun::Elem table(std::map<Value, Value> entries, Value def) {
    return NatFun::from_table(entries, def);
}

}  // namespace

TEST_CASE("truncate produces prefix observations") {
    CHECK(NatFun::truncate(0, NatFun::identity()) == NatFun::Obs{});
    CHECK(NatFun::truncate(3, NatFun::zero()) == NatFun::Obs{0, 0, 0});
    CHECK(NatFun::truncate(3, NatFun::identity()) == NatFun::Obs{0, 1, 2});
}

TEST_CASE("truncate is deterministic across repeated calls") {
    auto f = table({{0, 5}, {5, 1}}, 0);
    CHECK(NatFun::truncate(6, f) == NatFun::truncate(6, f));
    CHECK(NatFun::truncate(0, f) == NatFun::Obs{});
}

TEST_CASE("approx_eq compares observations") {
    auto f = table({{0, 5}, {5, 1}}, 0);
    auto g = table({{0, 5}, {5, 2}}, 0);
    CHECK(approx_eq<NatFun>(0, f, g));  // level 0 is total
    CHECK(approx_eq<NatFun>(1, f, g));
    CHECK(approx_eq<NatFun>(5, f, g));
    CHECK_FALSE(approx_eq<NatFun>(6, f, g));
}

TEST_CASE("distance_at returns exact powers of two or an upper bound") {
    auto f = NatFun::identity();
    CHECK(distance_at<NatFun>(f, f, 8) == DyadicDistance::at_most(8));

    auto z = NatFun::zero();
    auto step = NatFun::Elem([](Value x) -> Value { return x == 0 ? 0 : 1; });
    // first disagreement at argument 1: equal at level 1, distinct at level 2
    CHECK(distance_at<NatFun>(z, step, 8) == DyadicDistance::exactly(1));

    using D = Discrete<Value>;
    CHECK(distance_at<D>(3, 4, 8) == DyadicDistance::exactly(0));
    CHECK(distance_at<D>(3, 3, 8) == DyadicDistance::at_most(8));
}

TEST_CASE("distance soundness on sampled levels") {
    auto z = NatFun::zero();
    for (Value arg = 0; arg < 6; ++arg) {
        auto g = table({{arg, 1}}, 0);
        auto d = distance_at<NatFun>(z, g, 10);
        // least failing level is arg+1
        CHECK(d == DyadicDistance::exactly(static_cast<Level>(arg)));
        CHECK(approx_eq<NatFun>(static_cast<Level>(arg), z, g));
        CHECK_FALSE(approx_eq<NatFun>(static_cast<Level>(arg) + 1, z, g));
    }
}

TEST_CASE("limit of a constant sequence observes as the element") {
    auto e = table({{2, 4}}, 1);
    Seq<NatFun> s = [e](Level) { return e; };
    auto lim = limit_of<NatFun>(s);
    for (Level n = 0; n <= 12; ++n) CHECK(NatFun::truncate(n, lim) == NatFun::truncate(n, e));
}

TEST_CASE("limit of the zero-prefix sequence observes as the zero function") {
    // s(n) is 0 on arguments < n and 7 elsewhere
    Seq<NatFun> s = [](Level n) {
        return NatFun::Elem([n](Value x) -> Value { return x < n ? 0 : 7; });
    };
    auto lim = limit_of<NatFun>(s);
    for (Level n = 0; n <= 16; ++n) {
        CHECK(NatFun::truncate(n, lim) == NatFun::Obs(n, 0));
        CHECK(approx_eq<NatFun>(n, lim, s(n)));
    }
}

TEST_CASE("limit of the nested-recursion iterates observes as the zero function") {
    auto t = hand_t();
    Seq<NatFun> s = [t](Level n) { return iterate(t, NatFun::identity(), n); };
    auto lim = limit_of<NatFun>(s);
    CHECK(NatFun::truncate(12, lim) == NatFun::Obs(12, 0));
}

TEST_CASE("coherence_check on a constant sequence passes") {
    Seq<NatFun> s = [](Level) { return NatFun::zero(); };
    CHECK(coherence_check<NatFun>(s, 16).passed);
}

TEST_CASE("coherence_check reports the least failing level") {
    // switches from the zero function to the one function after index 1, so
    // s(1) and s(2) first disagree at level 1
    Seq<NatFun> s = [](Level n) { return n <= 1 ? NatFun::zero() : NatFun::constant(1); };
    auto r = coherence_check<NatFun>(s, 4);
    REQUIRE_FALSE(r.passed);
    CHECK(r.level == 1);
    CHECK(r.witness_a == "[0]");
    CHECK(r.witness_b == "[1]");
    CHECK(r.replay());
}

TEST_CASE("iterates of the nested-recursion operator are coherent") {
    auto t = hand_t();
    Seq<NatFun> s = [t](Level n) { return iterate(t, NatFun::identity(), n); };
    CHECK(coherence_check<NatFun>(s, 8).passed);
}

TEST_CASE("coherent_of_cauchy on a constant sequence is constant") {
    auto e = table({{1, 3}}, 0);
    Seq<NatFun> s = [e](Level) { return e; };
    Modulus m([](Level) { return std::uint64_t{0}; });
    auto y = coherent_of_cauchy<NatFun>(s, m);
    CHECK(coherence_check<NatFun>(y, 16).passed);
    CHECK(NatFun::truncate(8, y(5)) == NatFun::truncate(8, e));
}

TEST_CASE("coherent_of_cauchy extracts a coherent subsequence") {
    // s(i) is zero on arguments < i and 9 elsewhere; modulus m(n) = n
    Seq<NatFun> s = [](Level i) {
        return NatFun::Elem([i](Value x) -> Value { return x < i ? 0 : 9; });
    };
    Modulus m([](Level n) { return static_cast<std::uint64_t>(n); });
    auto y = coherent_of_cauchy<NatFun>(s, m);
    CHECK(coherence_check<NatFun>(y, 16).passed);
    auto lim = limit_of<NatFun>(y);
    for (Level n = 0; n <= 16; ++n) CHECK(approx_eq<NatFun>(n, lim, NatFun::zero()));
}

TEST_CASE("coherent_of_cauchy with a modulus valid only to level 5") {
    // u and v agree up to level 5 only; s alternates between them
    auto u = NatFun::zero();
    auto v = table({{5, 1}}, 0);
    Seq<NatFun> s = [u, v](Level i) { return i % 2 == 0 ? u : v; };
    Modulus m([](Level n) { return static_cast<std::uint64_t>(n); });
    auto y = coherent_of_cauchy<NatFun>(s, m);
    CHECK(coherence_check<NatFun>(y, 5).passed);
    auto r = coherence_check<NatFun>(y, 7);
    CHECK_FALSE(r.passed);
    CHECK(r.level == 6);
}

TEST_CASE("modulus is normalized to monotone by running max") {
    Modulus m([](Level n) { return n == 0 ? std::uint64_t{9} : std::uint64_t{1}; });
    CHECK(m(0) == 9);
    CHECK(m(3) == 9);
    Modulus inc([](Level n) { return static_cast<std::uint64_t>(n); });
    CHECK(inc(4) == 4);
}
