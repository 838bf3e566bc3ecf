#include <doctest.h>

#include "nbb/errors.hpp"
#include "nbb/maps.hpp"

using namespace nbb;

TEST_CASE("replica IDs") {
    const auto triangle = builtin_descriptor("sierpinski-triangle");
    const auto carpet = builtin_descriptor("sierpinski-carpet");

    CHECK(replica_id(triangle, {3, 0}, 0) == 1);
    CHECK(replica_id(triangle, {0, 3}, 1) == 2);
    CHECK(replica_id(carpet, {1, 2}, 0) == 6);
    CHECK_THROWS_AS(replica_id(triangle, {3, 3}, 0), NotInFractal);

    // procedural triangle fast path agrees with the lookup form on every
    // fractal cell and level index
    for (int r = 0; r <= 6; ++r)
        for (const auto& e : enumerate_cells(triangle, r))
            for (int mu = 0; mu < r; ++mu)
                CHECK(triangle_replica_id(e, mu) == replica_id(triangle, e, mu));
}

TEST_CASE("unfold strides") {
    CHECK(unfold_stride(3, 0) == std::pair<std::int64_t, std::int64_t>{1, 0});
    CHECK(unfold_stride(3, 2) == std::pair<std::int64_t, std::int64_t>{3, 0});
    CHECK(unfold_stride(3, 3) == std::pair<std::int64_t, std::int64_t>{0, 3});

    // exactly one axis per level, magnitude k^floor(mu/2)
    for (int k : {2, 3, 5, 8})
        for (int mu = 0; mu <= 20; ++mu) {
            const auto [tx, ty] = unfold_stride(k, mu);
            CHECK(tx * ty == 0);
            CHECK(tx + ty == ipow_checked(k, mu / 2));
        }
}

TEST_CASE("compact dimensions") {
    const auto triangle = builtin_descriptor("sierpinski-triangle");
    const auto carpet = builtin_descriptor("sierpinski-carpet");
    CHECK(compact_dims(triangle, 0) ==
          std::pair<std::int64_t, std::int64_t>{1, 1});
    CHECK(compact_dims(triangle, 3) ==
          std::pair<std::int64_t, std::int64_t>{9, 3});
    CHECK(compact_dims(carpet, 2) ==
          std::pair<std::int64_t, std::int64_t>{8, 8});
    for (int r = 0; r <= 10; ++r) {
        const auto [w, h] = compact_dims(triangle, r);
        CHECK(w * h == cell_count(triangle, r));
    }
}

TEST_CASE("forward map") {
    const auto triangle = builtin_descriptor("sierpinski-triangle");
    const auto carpet = builtin_descriptor("sierpinski-carpet");

    CHECK(to_compact(triangle, 2, {0, 0}) == CompactCoord{0, 0});
    CHECK(to_compact(triangle, 2, {0, 3}) == CompactCoord{2, 2});
    CHECK(to_compact(triangle, 3, {5, 2}) == CompactCoord{4, 2});
    CHECK(to_compact(carpet, 1, {2, 1}) == CompactCoord{4, 0});

    CHECK_THROWS_AS(to_compact(triangle, 2, {2, 2}), NotInFractal);
    CHECK_THROWS_AS(to_compact(triangle, 2, {4, 0}), OutOfDomain);
}

TEST_CASE("inverse map") {
    const auto triangle = builtin_descriptor("sierpinski-triangle");
    CHECK(to_embedded(triangle, 0, {0, 0}) == EmbeddedCoord{0, 0});
    CHECK(to_embedded(triangle, 3, {4, 2}) == EmbeddedCoord{5, 2});
    CHECK(to_embedded(triangle, 2, {2, 2}) == EmbeddedCoord{0, 3});
    CHECK_THROWS_AS(to_embedded(triangle, 2, {3, 0}), OutOfDomain);
    CHECK_THROWS_AS(to_embedded(triangle, 2, {0, -1}), OutOfDomain);
}

TEST_CASE("round trips and bijectivity, small levels") {
    for (const char* name :
         {"sierpinski-triangle", "sierpinski-carpet", "vicsek"}) {
        const auto desc = builtin_descriptor(name);
        const int rmax = desc.growth == 2 ? 6 : 4;
        for (int r = 0; r <= rmax; ++r) {
            const CoordMapper mapper(desc, r);
            const auto [w, h] = compact_dims(desc, r);
            std::vector<int> hits(static_cast<std::size_t>(w * h), 0);
            for (const auto& e : enumerate_cells(desc, r)) {
                const auto c = mapper.to_compact(e);
                REQUIRE(c.cx >= 0);
                REQUIRE(c.cx < w);
                REQUIRE(c.cy >= 0);
                REQUIRE(c.cy < h);
                ++hits[static_cast<std::size_t>(c.cy * w + c.cx)];
                CHECK(mapper.to_embedded(c) == e);
            }
            for (int hit : hits)
                CHECK(hit == 1);
            for (std::int64_t cy = 0; cy < h; ++cy)
                for (std::int64_t cx = 0; cx < w; ++cx) {
                    const CompactCoord c{cx, cy};
                    CHECK(mapper.to_compact(mapper.to_embedded(c)) == c);
                }
        }
    }
}

TEST_CASE("map cost touches exactly r levels") {
    const auto vicsek = builtin_descriptor("vicsek");
    for (int r : {0, 1, 5, 9}) {
        // the center column (1,1) at every level is always a vicsek cell
        const std::int64_t mid = (side_length(vicsek, r) - 1) / 2;
        int levels = -1;
        to_compact(vicsek, r, {mid, mid}, &levels);
        CHECK(levels == r);
        levels = -1;
        to_embedded(vicsek, r, {0, 0}, &levels);
        CHECK(levels == r);
    }
}

TEST_CASE("map matrices") {
    const auto triangle = builtin_descriptor("sierpinski-triangle");

    SUBCASE("single-level encoding") {
        const auto m = build_map_matrices(triangle, 1, {1, 0});
        CHECK(m.side == 16);
        CHECK(m.at_a(0, 0) == 1);
        CHECK(m.at_a(1, 0) == 0);
        CHECK(m.at_b(0, 0) == 1);
    }
    SUBCASE("two-level encoding") {
        const auto m = build_map_matrices(triangle, 2, {0, 3});
        CHECK(m.at_a(0, 0) == 1);
        CHECK(m.at_a(0, 1) == 0);
        CHECK(m.at_a(1, 0) == 0);
        CHECK(m.at_a(1, 1) == 1);
        CHECK(m.at_b(0, 0) == 2);
        CHECK(m.at_b(1, 0) == 2);
    }
    SUBCASE("pad region is all zeros") {
        const auto m = build_map_matrices(triangle, 2, {0, 3});
        for (int row = 0; row < m.side; ++row)
            for (int col = 0; col < m.side; ++col) {
                if (row < 2 && col < 2)
                    continue;
                CHECK(m.at_a(row, col) == 0);
                if (!(col == 0 && row < 2))
                    CHECK(m.at_b(row, col) == 0);
            }
    }
    SUBCASE("holes propagate the error") {
        CHECK_THROWS_AS(build_map_matrices(triangle, 2, {2, 2}), NotInFractal);
    }
}

TEST_CASE("matrix-form map equals scalar map") {
    const auto triangle = builtin_descriptor("sierpinski-triangle");
    CHECK(to_compact_via_mma(triangle, 2, {0, 3}) == CompactCoord{2, 2});
    CHECK(to_compact_via_mma(triangle, 2, {0, 0}) == CompactCoord{0, 0});
    CHECK(to_compact_via_mma(triangle, 3, {5, 2}) == CompactCoord{4, 2});

    for (const char* name : {"sierpinski-carpet", "vicsek"}) {
        const auto desc = builtin_descriptor(name);
        for (int r = 0; r <= 3; ++r)
            for (const auto& e : enumerate_cells(desc, r))
                CHECK(to_compact_via_mma(desc, r, e) == to_compact(desc, r, e));
    }

    SUBCASE("fragment side grows past 16 when r does") {
        const int r = 17;
        const EmbeddedCoord e{side_length(triangle, r) - 1, 0}; // all-ones x
        const auto m = build_map_matrices(triangle, r, e);
        CHECK(m.side == 17);
        CHECK(to_compact_via_mma(triangle, r, e) == to_compact(triangle, r, e));
    }
}
