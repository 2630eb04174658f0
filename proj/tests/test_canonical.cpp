#include "doctest.h"

#include <random>

#include "graphmoves/canonical.hpp"
#include "graphmoves/matops.hpp"

using namespace gm;

namespace {

DBPair db(Matrix<ExtInt> b, std::vector<std::int64_t> d) {
    auto n = d.size();
    return DBPair{std::move(b), std::move(d), default_labels(n)};
}

const Matrix<ExtInt> kBlock{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}};

IntMatrix im(std::initializer_list<std::initializer_list<long>> rows) {
    IntMatrix m(rows.size(), rows.size() ? rows.begin()->size() : 0, 0);
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (auto x : r) m(i, j++) = x;
        ++i;
    }
    return m;
}

std::optional<DBPair> random_pair(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> entry(0, 9);
    Matrix<ExtInt> a(n + 1, n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            int r = entry(rng);
            a(i, j) = r < 5 ? 0 : r < 8 ? 1 : r < 9 ? 2 : 0;
        }
    if (entry(rng) == 0) {
        auto i = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
        a(i, std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)) = kInf;
    }
    for (std::size_t j = 0; j < n; ++j) a(n, j) = entry(rng) < 3 ? 1 : 0;
    auto names = default_labels(n);
    names.push_back("src");
    Graph g(names, a);
    auto p = to_db(g);
    if (p.size() == 0) return std::nullopt;
    return p;
}

}  // namespace

TEST_CASE("check_canonical examples") {
    auto r = check_canonical(db({{0}}, {1}));
    CHECK(r.canonical());
    CHECK(r.classes == std::vector<Trichotomy>{Trichotomy::LoneLoop});

    r = check_canonical(db({{1}}, {1}));
    CHECK(!r.canonical());
    CHECK(!r.large.ok);
    CHECK(r.loops.ok);

    r = check_canonical(db({{-1}}, {1}));
    CHECK(r.canonical());
    CHECK(r.classes == std::vector<Trichotomy>{Trichotomy::LoneSingular});

    CHECK(is_canonical(db(kBlock, {1, 1, 1})));
    // Z^2 cokernel needs four regular vertices
    CHECK(!is_canonical(db({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}, {1, 1, 1})));

    // path 0 -> 1 -> 2 without 0 -> 2
    r = check_canonical(db({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {1, 1, 1}));
    CHECK(!r.edges.ok);
    r = check_canonical(db({{kInf, 0, 0}, {1, 0, 0}, {kInf, 0, -1}}, {1, 1, 1}));
    CHECK(!r.infinite.ok);
    // regular vertex without a loop
    r = check_canonical(db({{-1, 1}, {1, 0}}, {1, 1}));
    CHECK(!r.loops.ok);
}

TEST_CASE("canonicalize examples") {
    auto p = db(kBlock, {1, 2, 1});
    auto r = canonicalize(p);
    CHECK(r.script.empty());
    CHECK(r.pair == p);

    p = db({{1}}, {1});
    r = canonicalize(p);
    CHECK(is_canonical(r.pair));
    CHECK(r.pair.size() == 3);
    auto k = pointed_k0(r.pair);
    CHECK(k.factors.empty());
    CHECK(k.free_rank == 0);
    auto rep = apply_script(from_db(p), r.script);
    REQUIRE(rep.ok());
    CHECK(to_db(rep.graph) == r.pair);

    // infinite emitter with an inf loop and a single edge to a sink
    p = db({{kInf, 0}, {1, -1}}, {1, 1});
    REQUIRE(validate_db(p).empty());
    r = canonicalize(p);
    CHECK(is_canonical(r.pair));
    CHECK(check_canonical(r.pair).infinite.ok);
    rep = apply_script(from_db(p), r.script);
    REQUIRE(rep.ok());
    CHECK(to_db(rep.graph) == r.pair);
}

TEST_CASE("canonicalize random") {
    std::mt19937 rng(7);
    int done = 0;
    for (int t = 0; t < 200; ++t) {
        auto p = random_pair(rng, 1 + t % 4);
        if (!p) continue;
        CAPTURE(p->b);
        CAPTURE(p->d);
        bool inf = false;
        for (std::size_t i = 0; i < p->size(); ++i)
            for (std::size_t j = 0; j < p->size(); ++j) inf |= p->b(i, j).is_inf();
        // the default budget ignores infinite edges, so it can be too small for them
        auto r = canonicalize(*p, inf ? std::optional<std::size_t>(100000) : std::nullopt);
        REQUIRE(is_canonical(r.pair));
        if (!inf) CHECK(r.script.size() <= r.budget);
        auto rep = apply_script(from_db(*p), r.script);
        REQUIRE(rep.ok());
        CHECK(to_db(rep.graph) == r.pair);
        CHECK(same_structure(essential_structure(*p), essential_structure(r.pair)));
        CHECK(pointed_iso(pointed_k0(*p), pointed_k0(r.pair)) != IsoVerdict::NotIso);
        ++done;
    }
    CHECK(done > 100);
}

TEST_CASE("essential structure") {
    // an infinite emitter with a loop and infinitely many edges to a sink splits in two
    auto p = db({{0, 0, 0}, {kInf, -1, 0}, {0, 0, -1}}, {1, 1, 1});
    REQUIRE(validate_db(p).empty());
    CHECK(components(p).comps.size() == 3);
    auto e = essential_structure(p);
    CHECK(e.comps.size() == 4);
    CHECK(same_structure(e, e));
    CHECK(!same_structure(e, essential_structure(db({{0}}, {1}))));
}

TEST_CASE("match_components") {
    auto p = db(kBlock, {1, 1, 1});
    auto m = match_components(p, p);
    REQUIRE(m);
    CHECK(*m == std::vector<std::size_t>{0});

    auto sink = db({{0, 0}, {1, -1}}, {1, 1});
    auto loop = db({{0, 0}, {1, 0}}, {1, 1});
    CHECK(!match_components(sink, loop));

    // two chains, listed in opposite orders
    auto c1 = db({{0, 0}, {1, 0}}, {1, 1});
    auto c2 = db({{0, 1}, {0, 0}}, {1, 1});
    m = match_components(c1, c2);
    REQUIRE(m);
    auto s1 = components(c1), s2 = components(c2);
    CHECK(s2.comps[(*m)[s1.comp_of[0]]].members == std::vector<std::size_t>{1});
}

TEST_CASE("verify_certificate") {
    auto p = db(kBlock, {1, 2, 1});
    Certificate id{IntMatrix::identity(3), IntMatrix::identity(3), EquivalenceLevel::SLPlus};
    auto v = verify_certificate(p, p, id);
    CHECK(v.level == EquivalenceLevel::SLPlus);
    CHECK(v.accepts(EquivalenceLevel::SLPlus));

    auto bad = id;
    bad.u(0, 0) = 2;
    v = verify_certificate(p, p, bad);
    CHECK(!v.invertible);
    CHECK(v.level == EquivalenceLevel::None);

    auto e = db({{0, 1}, {1, 0}}, {1, 1});
    auto f = row_add_basic(e, 0, 1).pair;
    Certificate c{im({{1, 0}, {1, 1}}), IntMatrix::identity(2), EquivalenceLevel::SLPlus};
    v = verify_certificate(e, f, c);
    CHECK(v.pattern);
    CHECK(v.intertwines);
    CHECK(v.level == EquivalenceLevel::SLPlus);

    // antenna addition: U = V = I, D differs by a column of B
    auto g = add_antenna(p, 0);
    v = verify_certificate(p, g, id);
    CHECK(v.level == EquivalenceLevel::SLPlus);
    g.d[0] += 1;
    v = verify_certificate(p, g, id);
    CHECK(v.unit == false);
    CHECK(v.level == EquivalenceLevel::SL);

    CHECK_THROWS_AS((void)verify_certificate(p, e, id), DomainError);
    Certificate small{IntMatrix::identity(2), IntMatrix::identity(3), EquivalenceLevel::GL};
    CHECK_THROWS_AS((void)verify_certificate(p, p, small), DomainError);
}
