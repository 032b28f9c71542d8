#include <xsolve/errors.hh>
#include <xsolve/integer_set.hh>

#include <doctest.h>

#include <random>
#include <set>

using namespace xsolve;

namespace
{
    auto canonical(const IntegerSet & s) -> bool
    {
        auto r = s.intervals();
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (r[i].lo > r[i].hi)
                return false;
            if (i > 0 && r[i - 1].hi + 1 >= r[i].lo)
                return false;
        }
        return true;
    }
}

TEST_CASE("integer set text")
{
    CHECK(parse_integer_set("1..2") == IntegerSet::range(1, 2));
    CHECK(parse_integer_set("5") == IntegerSet::singleton(5));
    CHECK(parse_integer_set("1 3 2..4 7") == IntegerSet::from_intervals({{1, 4}, {7, 7}}));
    CHECK(parse_integer_set("-3..-1 0") == IntegerSet::range(-3, 0));
    CHECK(parse_integer_set("  4\n\t2  ").values() == std::vector<Integer>{2, 4});
    CHECK(parse_integer_set("").empty());
    CHECK(parse_integer_set("1 3 2..4 7").to_string() == "1..4 7");
}

TEST_CASE("integer set text errors")
{
    CHECK_THROWS_AS(parse_integer_set("3..1"), FormatError);
    CHECK_THROWS_AS(parse_integer_set("1 x"), FormatError);
    CHECK_THROWS_AS(parse_integer_set("1..2..3"), FormatError);
    CHECK_THROWS_AS(parse_integer_set("1.5"), FormatError);
    CHECK_THROWS_AS(parse_integer_set("99999999999999999999"), FormatError);
}

TEST_CASE("integer set queries")
{
    auto s = IntegerSet::from_values({7, 1, 2, 3, 9, 8});
    CHECK(s.intervals().size() == 2);
    CHECK(s.min() == 1);
    CHECK(s.max() == 9);
    CHECK(s.size() == 6);
    CHECK(s.contains(8));
    CHECK_FALSE(s.contains(5));
    CHECK_FALSE(s.is_singleton());
    CHECK(IntegerSet::singleton(-4).is_singleton());
    CHECK(IntegerSet::range(std::numeric_limits<Integer>::min(), std::numeric_limits<Integer>::max()).size() ==
        std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("integer set narrowing")
{
    auto s = IntegerSet::range(1, 10);
    CHECK(s.remove(5));
    CHECK_FALSE(s.remove(5));
    CHECK(s.to_string() == "1..4 6..10");
    CHECK(s.remove_range(3, 7));
    CHECK(s.to_string() == "1..2 8..10");
    CHECK(s.restrict_to(2, 9));
    CHECK(s.to_string() == "2 8..9");
    CHECK_FALSE(s.restrict_to(0, 100));
    CHECK(s.restrict_to(3, 7));
    CHECK(s.empty());
}

TEST_CASE("integer set operations agree with std::set")
{
    std::mt19937_64 rng{7};
    std::uniform_int_distribution<int> value(-6, 6), count(0, 8);
    for (int round = 0; round < 2000; ++round) {
        std::set<Integer> a, b;
        for (int i = count(rng); i > 0; --i)
            a.insert(value(rng));
        for (int i = count(rng); i > 0; --i)
            b.insert(value(rng));
        auto sa = IntegerSet::from_values({a.begin(), a.end()});
        auto sb = IntegerSet::from_values({b.begin(), b.end()});
        REQUIRE(canonical(sa));

        std::set<Integer> inter, uni = a, diff;
        for (auto x : a)
            (b.count(x) ? inter : diff).insert(x);
        uni.insert(b.begin(), b.end());

        CHECK(sa.intersect(sb).values() == std::vector<Integer>(inter.begin(), inter.end()));
        CHECK(sa.unite(sb).values() == std::vector<Integer>(uni.begin(), uni.end()));
        CHECK(sa.subtract(sb).values() == std::vector<Integer>(diff.begin(), diff.end()));
        CHECK(sa.intersects(sb) == ! inter.empty());
        CHECK(sa.subset_of(sb) == diff.empty());
        CHECK(sa.size() == a.size());
        CHECK(canonical(sa.intersect(sb)));
        CHECK(canonical(sa.unite(sb)));
        CHECK(canonical(sa.subtract(sb)));

        // re-canonicalising text output is the identity
        CHECK(parse_integer_set(sa.to_string()) == sa);
    }
}
