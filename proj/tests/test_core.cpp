#include "doctest.h"

#include "graphmoves/components.hpp"
#include "graphmoves/db_pair.hpp"

using namespace gm;

namespace {

const ExtInt I = kInf;

Graph make(std::vector<std::string> names, Matrix<ExtInt> a) { return Graph(std::move(names), std::move(a)); }

}  // namespace

TEST_CASE("extended integer arithmetic") {
    CHECK(I + ExtInt(3) == I);
    CHECK(I * ExtInt(0) == ExtInt(0));
    CHECK(I * ExtInt(2) == I);
    CHECK_THROWS_AS(I - I, DomainError);
    CHECK(ExtInt::sub(I, I, true) == I);
    CHECK_THROWS_AS(ExtInt(INT64_MAX) + ExtInt(1), DomainError);
    CHECK_THROWS_AS(ExtInt(INT64_MAX) * ExtInt(2), DomainError);
    CHECK(ExtInt(5) < I);
}

TEST_CASE("validate_graph") {
    CHECK(validate_graph({{"v"}, {{1}}}).empty());
    auto d = validate_graph({{"v", "w"}, {{1, 0}, {1}}});
    CHECK(std::find(d.begin(), d.end(), "not square") != d.end());
    d = validate_graph({{"v"}, {{-1}}});
    CHECK(std::find(d.begin(), d.end(), "negative multiplicity") != d.end());
    CHECK(!validate_graph({{"v", "v"}, {{0, 0}, {0, 0}}}).empty());
    CHECK(!validate_graph({{}, {}}).empty());
}

TEST_CASE("vertex_class") {
    auto g = make({"a", "b", "c", "s"}, {{1, 0, 0, 0}, {0, 0, 0, 0}, {1, I, 0, 0}, {1, 0, 0, 0}});
    CHECK(vertex_class(g, 0) == VertexClass::Regular);
    CHECK(vertex_class(g, 1) == VertexClass::Sink);
    CHECK(vertex_class(g, 2) == VertexClass::InfiniteEmitter);
    CHECK(vertex_class(g, 3) == VertexClass::RegularSource);
    CHECK_THROWS_AS((void)vertex_class(g, 4), DomainError);
}

TEST_CASE("to_db examples") {
    auto p = to_db(make({"1", "2"}, {{1, 2}, {0, 1}}));
    CHECK(p.b == Matrix<ExtInt>{{0, 0}, {2, 0}});
    CHECK(p.d == std::vector<std::int64_t>{1, 1});

    p = to_db(make({"v", "s"}, {{2, 0}, {3, 0}}));
    CHECK(p.b == Matrix<ExtInt>{{1}});
    CHECK(p.d == std::vector<std::int64_t>{4});
    CHECK(p.labels == std::vector<std::string>{"v"});

    p = to_db(make({"v"}, {{I}}));
    CHECK(p.b == Matrix<ExtInt>{{I}});
    CHECK(p.d == std::vector<std::int64_t>{1});
    CHECK(p.is_infinite_emitter(0));
}

TEST_CASE("from_db examples") {
    auto g = from_db({{{1}}, {1}, {"v"}});
    CHECK(g.size() == 1);
    CHECK(g.at(0, 0) == ExtInt(2));

    g = from_db({{{-1}}, {2}, {"v"}});
    REQUIRE(g.size() == 2);
    CHECK(g.is_sink(0));
    CHECK(g.is_regular_source(1));
    CHECK(g.at(1, 0) == ExtInt(1));

    g = from_db({{{0, 1}, {1, 0}}, {1, 1}, {"a", "b"}});
    CHECK(g.adjacency() == Matrix<ExtInt>{{1, 1}, {1, 1}});
}

TEST_CASE("round trip and transposition law") {
    DBPair p{{{0, 0, 0}, {1, -1, 0}, {3, 0, I}}, {1, 3, 2}, {"x", "y", "z"}};
    CHECK(p.is_sink(1));
    CHECK(p.is_infinite_emitter(2));
    CHECK(to_db(from_db(p)) == p);
    auto g = from_db(p);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(p.b(i, j) + ExtInt(i == j) == g.at(j, i));
}

TEST_CASE("invalid DB pairs are rejected") {
    CHECK_THROWS_AS((void)from_db({{{-2}}, {1}, {"v"}}), DomainError);
    CHECK_THROWS_AS((void)from_db({{{0, -1}, {0, 0}}, {1, 1}, {"a", "b"}}), DomainError);
    CHECK_THROWS_AS((void)from_db({{{0}}, {0}, {"v"}}), DomainError);
    // a regular vertex with no incoming edges and d = 1 would be a source
    CHECK_THROWS_AS((void)from_db({{{-1, 0}, {1, 0}}, {1, 1}, {"a", "b"}}), DomainError);
}

TEST_CASE("several sources are collected in to_db") {
    auto g = make({"v", "s1", "s2", "s3"}, {{1, 0, 0, 0}, {2, 0, 0, 0}, {1, 0, 0, 0}, {3, 0, 0, 0}});
    auto p = to_db(g);
    CHECK(p.d == std::vector<std::int64_t>{7});
}

TEST_CASE("components") {
    auto cs = components(make({"a", "b"}, {{0, 1}, {1, 0}}));
    REQUIRE(cs.comps.size() == 1);
    CHECK(cs.comps[0].regular == 2);
    CHECK(cs.comps[0].singular == 0);
    CHECK(cs.comps[0].cyclic);

    // v -> w: gamma(w) <= gamma(v)
    cs = components(make({"v", "w"}, {{0, 1}, {0, 0}}));
    REQUIRE(cs.comps.size() == 2);
    auto cv = cs.comp_of[0], cw = cs.comp_of[1];
    CHECK(cs.leq(cw, cv));
    CHECK(!cs.leq(cv, cw));
    CHECK(cv < cw);  // larger first in block order
    CHECK(!cs.comps[cv].cyclic);
    CHECK(!cs.comps[cv].essential());
    CHECK(cs.comps[cw].essential());

    cs = components(make({"v"}, {{0}}));
    CHECK(cs.comps.size() == 1);
    CHECK(cs.comps[0].size() == 1);
}

TEST_CASE("singular vertices last and B in block pattern") {
    // 0 <-> 1 (1 is an infinite emitter), 2 downstream sink, 3 upstream loop
    auto g = make({"a", "b", "c", "d"}, {{0, 1, 0, 0}, {I, 0, 1, 0}, {0, 0, 0, 0}, {1, 0, 0, 1}});
    auto p = to_db(g);
    auto cs = components(p);
    REQUIRE(cs.comps.size() == 3);
    CHECK(cs.comps[0].members == std::vector<std::size_t>{3});
    CHECK(cs.comps[1].members == std::vector<std::size_t>{0, 1});
    CHECK(cs.comps[1].singular == 1);
    CHECK(cs.comps[2].members == std::vector<std::size_t>{2});
    std::vector<std::size_t> same{0, 1, 2, 3};
    CHECK(in_block_pattern(p.b, cs, same));

    auto q = canonically_ordered(p);
    CHECK(q.labels == std::vector<std::string>{"d", "a", "b", "c"});
    auto qs = components(q);
    std::vector<std::size_t> id{0, 1, 2, 3};
    CHECK(in_block_pattern(q.b, qs, id));
    // an entry against the preorder is rejected
    Matrix<ExtInt> bad(4, 4, 0);
    bad(0, 3) = 1;  // gamma(d) <= gamma(c) fails
    CHECK(!in_block_pattern(bad, qs, id));
}

TEST_CASE("components invariant under relabeling") {
    auto g = make({"a", "b", "c"}, {{1, 1, 0}, {0, 0, 1}, {0, 1, 0}});
    auto h = g.permuted({2, 0, 1});
    auto cg = components(g), ch = components(h);
    REQUIRE(cg.comps.size() == ch.comps.size());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            auto hi = h.index_of(g.name(i)), hj = h.index_of(g.name(j));
            CHECK(cg.leq(cg.comp_of[i], cg.comp_of[j]) == ch.leq(ch.comp_of[hi], ch.comp_of[hj]));
        }
}
