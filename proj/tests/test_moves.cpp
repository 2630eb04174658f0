#include "doctest.h"

#include "graphmoves/moves.hpp"

using namespace gm;

namespace {

const ExtInt I = kInf;

Graph make(std::vector<std::string> names, Matrix<ExtInt> a) { return Graph(std::move(names), std::move(a)); }

}  // namespace

TEST_CASE("outsplit") {
    auto g = make({"w"}, {{2}});
    auto h = outsplit(g, 0, {{1}, {1}});
    CHECK(h.adjacency() == Matrix<ExtInt>{{1, 1}, {1, 1}});
    CHECK(h.names() == std::vector<std::string>{"w", "w.1"});

    // u -> w, w -> x twice; split the two edges to x
    g = make({"u", "w", "x"}, {{0, 1, 0}, {0, 0, 2}, {0, 0, 1}});
    h = outsplit(g, 1, {{0, 0, 1}, {0, 0, 1}}, {"w1", "w2"});
    CHECK(h.names() == std::vector<std::string>{"u", "w1", "x", "w2"});
    CHECK(h.adjacency() == Matrix<ExtInt>{{0, 1, 0, 1}, {0, 0, 1, 0}, {0, 0, 1, 0}, {0, 0, 1, 0}});

    CHECK(outsplit(g, 1, {{0, 0, 2}}) == g);

    CHECK_THROWS_AS((void)outsplit(g, 1, {{0, 0, 2}, {0, 0, 0}}), DomainError);
    CHECK_THROWS_AS((void)outsplit(g, 1, {{0, 0, 1}, {0, 0, 0}}), DomainError);
    auto sink = make({"a", "b"}, {{0, 1}, {0, 0}});
    CHECK_THROWS_AS((void)outsplit(sink, 1, {{0, 0}}), DomainError);
    auto inf = make({"a", "b"}, {{I, I}, {0, 1}});
    CHECK_THROWS_AS((void)outsplit(inf, 0, {{I, 0}, {0, I}}), DomainError);
    CHECK_NOTHROW((void)outsplit(inf, 0, {{1, 0}, {I, I}}));
}

TEST_CASE("outsplit_inverse") {
    auto g = make({"s1", "s2", "v"}, {{0, 0, 1}, {0, 0, 2}, {0, 0, 1}});
    auto h = outsplit_inverse(g, {0, 1});
    CHECK(h.adjacency() == Matrix<ExtInt>{{0, 3}, {0, 1}});

    auto two = make({"a", "b"}, {{1, 1}, {1, 1}});
    CHECK(outsplit_inverse(two, {0, 1}).adjacency() == Matrix<ExtInt>{{2}});
    CHECK(outsplit_inverse(two, {1}) == two);

    auto bad = make({"a", "b", "c"}, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    CHECK_THROWS_AS((void)outsplit_inverse(bad, {0, 1}), DomainError);
}

TEST_CASE("insplit") {
    // v -> w twice, w -> v once
    auto g = make({"v", "w"}, {{0, 2}, {1, 0}});
    auto h = insplit(g, 1, {{1, 0}, {1, 0}});
    CHECK(h.adjacency() == Matrix<ExtInt>{{0, 1, 1}, {1, 0, 0}, {1, 0, 0}});
    CHECK(insplit(g, 1, {{2, 0}}) == g);

    // w has a loop and an edge from v: loop to copy 1, external edge to copy 2
    g = make({"v", "w"}, {{0, 1}, {1, 1}});
    h = insplit(g, 1, {{0, 1}, {1, 0}});
    CHECK(h.adjacency() == Matrix<ExtInt>{{0, 0, 1}, {1, 1, 0}, {1, 1, 0}});

    CHECK_THROWS_AS((void)insplit(make({"v"}, {{0}}), 0, {{0}}), DomainError);
}

TEST_CASE("iplus on the three displayed graphs") {
    // L has a loop, M -> L, bottom vertex B sends two edges into {L, M}
    auto g1 = make({"L", "M", "B"}, {{1, 0, 0}, {1, 0, 0}, {1, 1, 0}});
    auto g2 = make({"L", "M", "B"}, {{1, 0, 0}, {1, 0, 0}, {0, 2, 0}});
    auto g3 = make({"L", "M", "B"}, {{1, 0, 0}, {1, 0, 0}, {2, 0, 0}});
    auto common = make({"L", "B"}, {{1, 0}, {2, 0}});
    std::vector<Graph> gs{g1, g2, g3};
    for (const auto& a : gs)
        for (const auto& b : gs) {
            Matrix<ExtInt> cols(3, 2);
            for (std::size_t u = 0; u < 3; ++u)
                for (std::size_t i = 0; i < 2; ++i) cols(u, i) = b.at(u, i);
            auto r = iplus_redistribute(a, {0, 1}, cols);
            CHECK(r.graph == b);
            CHECK(r.witness == common);
        }
    CHECK(iplus_redistribute(g1, {2}, Matrix<ExtInt>{{0}, {0}, {0}}).graph == g1);
}

TEST_CASE("iplus rejects") {
    auto g1 = make({"L", "M", "B"}, {{1, 0, 0}, {1, 0, 0}, {1, 1, 0}});
    CHECK_THROWS_AS((void)iplus_redistribute(g1, {0, 1}, Matrix<ExtInt>{{1, 0}, {1, 0}, {2, 1}}), DomainError);
    CHECK_THROWS_AS((void)iplus_redistribute(g1, {0, 2}, Matrix<ExtInt>{{1, 0}, {1, 0}, {1, 0}}), DomainError);
    // constancy inside the group
    CHECK_THROWS_AS((void)iplus_redistribute(g1, {0, 1}, Matrix<ExtInt>{{1, 0}, {0, 1}, {1, 1}}), DomainError);
}

TEST_CASE("rplus") {
    auto g = make({"v", "w", "u"}, {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
    auto h = rplus(g, 1);
    CHECK(h.names() == std::vector<std::string>{"v", "w~", "u"});
    CHECK(h.adjacency() == Matrix<ExtInt>{{0, 0, 1}, {0, 0, 1}, {0, 0, 0}});

    auto src = make({"w", "u"}, {{0, 1}, {0, 1}});
    CHECK(rplus(src, 0, "w").adjacency() == src.adjacency());

    g = make({"u", "w"}, {{0, 2}, {3, 0}});
    h = rplus(g, 1);
    CHECK(h.adjacency() == Matrix<ExtInt>{{6, 0}, {3, 0}});

    CHECK_THROWS_AS((void)rplus(make({"w"}, {{1}}), 0), DomainError);
    CHECK_THROWS_AS((void)rplus(make({"w", "x"}, {{0, 0}, {1, 0}}), 0), DomainError);
}

TEST_CASE("rplus_inverse") {
    auto g = make({"u", "w"}, {{0, 2}, {3, 0}});
    auto h = rplus(g, 1);
    CHECK(rplus_inverse(h, 1, {{2, 0}, {3, 0}, {}}, "w") == g);
    CHECK_THROWS_AS((void)rplus_inverse(h, 1, {{2, 1}, {3, 0}, {}}), DomainError);
    CHECK_THROWS_AS((void)rplus_inverse(h, 1, {{3, 0}, {3, 0}, {}}), DomainError);
    CHECK(rplus_inverse(h, 1, {{1, 0}, {3, 0}, {}}).adjacency() == Matrix<ExtInt>{{3, 1}, {3, 0}});

    // lengthen a loop: x has a loop; insert a vertex on it
    auto loop = make({"x", "s"}, {{1, 0}, {1, 0}});
    auto longer = rplus_inverse(loop, 1, {{1, 0}, {1, 0}, {}}, "y");
    CHECK(longer.adjacency() == Matrix<ExtInt>{{0, 1}, {1, 0}});

    // infinite products need restore cells
    auto inf = make({"a", "b", "c"}, {{0, I, 0}, {0, 0, 1}, {0, 0, 1}});
    auto r = rplus(inf, 1);
    CHECK(r.at(0, 2) == I);
    Move m = inverse_move(inf, Move{MoveKind::Rplus, "b"}, r);
    CHECK(m.restore.size() == 1);
    CHECK(apply_move(r, m) == inf);
}

TEST_CASE("collect_sources") {
    auto g = make({"v", "s1", "s2"}, {{1, 0, 0}, {1, 0, 0}, {1, 0, 0}});
    auto c = collect_sources(g);
    CHECK(c.graph.adjacency() == Matrix<ExtInt>{{1, 0}, {2, 0}});
    CHECK(c.script.size() == 1);
    CHECK(apply_script(g, c.script).graph == c.graph);

    g = make({"v", "s1", "s2", "s3"}, {{1, 0, 0, 0}, {1, 0, 0, 0}, {2, 0, 0, 0}, {3, 0, 0, 0}});
    c = collect_sources(g);
    CHECK(c.graph.adjacency() == Matrix<ExtInt>{{1, 0}, {6, 0}});
    CHECK(collect_sources(c.graph).script.empty());

    auto one = make({"v", "s"}, {{1, 0}, {1, 0}});
    CHECK(collect_sources(one).graph == one);
    CHECK(collect_sources(one).script.empty());
}

TEST_CASE("apply_script") {
    auto g = make({"w"}, {{2}});
    auto r = apply_script(g, {});
    CHECK(r.ok());
    CHECK(r.graph == g);

    Move o{MoveKind::O, "w"};
    o.parts = {{1}, {1}};
    Move back{MoveKind::Oinv};
    back.group = {"w", "w.1"};
    r = apply_script(g, {o, back});
    CHECK(r.ok());
    CHECK(r.graph == g);
    CHECK(r.log.size() == 2);

    Move bad{MoveKind::Rplus, "w"};
    r = apply_script(g, {o, back, bad});
    REQUIRE(!r.ok());
    CHECK(*r.failed_step == 2);
    CHECK(r.graph == g);
    CHECK(move_kind_from_string("Rplus") == MoveKind::Rplus);
    CHECK_THROWS_AS((void)move_kind_from_string("Iminus"), DomainError);
}

TEST_CASE("inverse_move round trips") {
    auto g = make({"a", "b", "c"}, {{1, 2, 0}, {1, 0, 1}, {0, 1, 1}});
    Move o{MoveKind::O, "a"};
    o.parts = {{1, 1, 0}, {0, 1, 0}};
    auto h = apply_move(g, o);
    CHECK(apply_move(h, inverse_move(g, o, h)) == g);

    Move oi{MoveKind::Oinv};
    oi.group = {"a", "a.1"};
    auto back = apply_move(h, oi);
    auto redo = apply_move(back, inverse_move(h, oi, back));
    CHECK(redo.same_up_to_relabeling(h));

    Move rp{MoveKind::Rplus, "b"};
    h = apply_move(g, rp);
    CHECK(apply_move(h, inverse_move(g, rp, h)) == g);

    auto moved = reorder(o, g.names(), {"c", "a", "b"});
    CHECK(apply_move(g.permuted({2, 0, 1}), moved).same_up_to_relabeling(apply_move(g, o)));
}
