#include <doctest.h>

#include "nbb/errors.hpp"
#include "nbb/maps.hpp"
#include "nbb/oracle.hpp"

using namespace nbb;

TEST_CASE("unfolding oracle, small levels") {
    const auto triangle = builtin_descriptor("sierpinski-triangle");
    const auto carpet = builtin_descriptor("sierpinski-carpet");

    const auto level0 = unfold_compact_oracle(triangle, 0);
    REQUIRE(level0.size() == 1);
    CHECK(level0.at(pack_coord(0, 0)) == pack_coord(0, 0));

    const auto level1 = unfold_compact_oracle(triangle, 1);
    REQUIRE(level1.size() == 3);
    CHECK(level1.at(pack_coord(0, 0)) == pack_coord(0, 0));
    CHECK(level1.at(pack_coord(1, 0)) == pack_coord(1, 0));
    CHECK(level1.at(pack_coord(0, 1)) == pack_coord(2, 0));

    const auto carpet1 = unfold_compact_oracle(carpet, 1);
    REQUIRE(carpet1.size() == 8);
    std::vector<bool> seen(8, false);
    for (const auto& [ekey, ckey] : carpet1) {
        const auto cx = static_cast<std::int64_t>(ckey >> 32);
        const auto cy =
            static_cast<std::int64_t>(static_cast<std::int32_t>(ckey));
        CHECK(cy == 0);
        REQUIRE(cx >= 0);
        REQUIRE(cx < 8);
        seen[static_cast<std::size_t>(cx)] = true;
    }
    for (bool s : seen)
        CHECK(s);

    CHECK_THROWS_AS(unfold_compact_oracle(carpet, 10, 1000), CapacityError);
}

TEST_CASE("verify_maps") {
    const auto triangle = builtin_descriptor("sierpinski-triangle");

    const auto report = verify_maps(triangle, 8);
    CHECK(report.pass);
    CHECK(report.cells_checked == 6561);
    CHECK(report.violations.empty());

    const auto trivial = verify_maps(triangle, 0);
    CHECK(trivial.pass);
    CHECK(trivial.cells_checked == 1);

    for (const char* name : {"sierpinski-carpet", "vicsek"})
        CHECK(verify_maps(builtin_descriptor(name), 3).pass);
}

TEST_CASE("the uncorrected procedural replica ID is not injective") {
    // bit(x) + bit(y) (without the weight 2 on y) gives the right and
    // bottom replicas of the triangle the same ID; the resulting forward
    // map collides instead of being a bijection
    const auto triangle = builtin_descriptor("sierpinski-triangle");
    const int r = 4;
    auto flawed_forward = [&](EmbeddedCoord e) {
        std::int64_t cx = 0, cy = 0;
        for (int mu = 0; mu < r; ++mu) {
            const int id = static_cast<int>((e.x >> mu) & 1) +
                           static_cast<int>((e.y >> mu) & 1);
            const auto [tx, ty] = unfold_stride(triangle.replica_count, mu);
            cx += tx * id;
            cy += ty * id;
        }
        return CompactCoord{cx, cy};
    };
    std::vector<int> hits(
        static_cast<std::size_t>(cell_count(triangle, r)), 0);
    const auto [w, h] = compact_dims(triangle, r);
    std::int64_t collisions = 0;
    for (const auto& e : enumerate_cells(triangle, r)) {
        const auto c = flawed_forward(e);
        if (++hits[static_cast<std::size_t>(c.cy * w + c.cx)] > 1)
            ++collisions;
    }
    CHECK(collisions > 0);
    // the corrected form is collision free on the same cells
    CHECK(verify_maps(triangle, r).pass);
}

TEST_CASE("verify_stencil") {
    const auto triangle = builtin_descriptor("sierpinski-triangle");
    const auto rule = conway_rule();

    SUBCASE("expected pass") {
        const auto report = verify_stencil(triangle, 4, rule, 42, 0.5, 20);
        CHECK(report.pass);
        CHECK(report.violations.empty());
    }
    SUBCASE("zero steps pass by construction") {
        CHECK(verify_stencil(triangle, 4, rule, 42, 0.5, 0).pass);
    }
    SUBCASE("fault injection is caught at the right iteration") {
        // corrupt one fractal cell of the compact backend after step 1
        const auto report = verify_stencil(
            triangle, 4, rule, 42, 0.5, 5,
            [&](std::int64_t iteration, std::vector<Simulation*>& sims) {
                if (iteration == 1) {
                    Simulation* compact = sims.back();
                    compact->set_cell({0, 0}, compact->cell({0, 0}) ? 0 : 1);
                }
            });
        CHECK_FALSE(report.pass);
        REQUIRE_FALSE(report.violations.empty());
        CHECK(report.violations.front().find("iteration 1") !=
              std::string::npos);
    }
}
