#include <doctest.h>

#include <algorithm>

#include "nbb/errors.hpp"
#include "nbb/rng.hpp"
#include "nbb/stencil.hpp"

using namespace nbb;

TEST_CASE("rule parsing") {
    const auto conway = StencilRule::parse("B3/S23");
    CHECK(conway.born_with(3));
    CHECK_FALSE(conway.born_with(2));
    CHECK(conway.survives_with(2));
    CHECK(conway.survives_with(3));
    CHECK_FALSE(conway.survives_with(4));
    CHECK(conway.to_string() == "B3/S23");

    CHECK(StencilRule::parse("b36/s23").to_string() == "B36/S23");
    CHECK(StencilRule::parse("B/S").to_string() == "B/S"); // empty sets allowed
    CHECK_THROWS_AS(StencilRule::parse("B9/S2"), ParseError);
    CHECK_THROWS_AS(StencilRule::parse("3/23"), ParseError);
    CHECK_THROWS_AS(StencilRule::parse("B3/S23x"), ParseError);
}

TEST_CASE("neighbor offsets") {
    const auto& vn = neighbor_offsets(Neighborhood::VonNeumann);
    CHECK(vn == std::vector<std::pair<int, int>>{{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
    const auto& moore = neighbor_offsets(Neighborhood::Moore);
    CHECK(moore.size() == 8);
    for (const auto& off : moore)
        CHECK(off != std::pair<int, int>{0, 0});
    // Moore contains the von Neumann offsets
    for (const auto& off : vn)
        CHECK(std::find(moore.begin(), moore.end(), off) != moore.end());
}

TEST_CASE("neighbor resolution") {
    const auto triangle = builtin_descriptor("sierpinski-triangle");
    // compact (1,2) at r=2 is embedded (1,2)
    CHECK(to_embedded(triangle, 2, {1, 2}) == EmbeddedCoord{1, 2});
    CHECK_FALSE(resolve_neighbor(triangle, 2, {1, 2}, {1, 0}).has_value());
    const auto left = resolve_neighbor(triangle, 2, {1, 2}, {-1, 0});
    REQUIRE(left.has_value());
    CHECK(*left == CompactCoord{0, 2});
    // off the box edge
    CHECK_FALSE(resolve_neighbor(triangle, 2, {0, 0}, {0, -1}).has_value());
}

TEST_CASE("trivial steps") {
    const auto triangle = builtin_descriptor("sierpinski-triangle");
    const auto rule = conway_rule();
    for (Backend backend :
         {Backend::BoundingBox, Backend::CompactGrid, Backend::Compact}) {
        CAPTURE(backend_name(backend));
        Simulation sim(triangle, 3, backend);
        sim.seed_random(1, 0.0);
        sim.step(rule);
        CHECK(sim.state_hash() == 0); // all dead stays all dead

        sim.seed_random(1, 0.0);
        sim.set_cell({0, 0}, 1);
        sim.step(rule);
        CHECK(sim.state_hash() == 0); // a lone cell dies
    }
}

TEST_CASE("known pattern on a solid grid") {
    // k = s^2 makes the "fractal" a plain dense grid, so standard Life
    // patterns apply; a blinker at the center of a 4x4 box oscillates
    const auto solid =
        parse_descriptor("name=solid\nk=4\ns=2\nreplicas=0,0;1,0;0,1;1,1");
    const auto rule = conway_rule();
    for (Backend backend :
         {Backend::BoundingBox, Backend::CompactGrid, Backend::Compact}) {
        Simulation sim(solid, 2, backend);
        sim.seed_random(0, 0.0);
        sim.set_cell({1, 0}, 1);
        sim.set_cell({1, 1}, 1);
        sim.set_cell({1, 2}, 1);
        sim.step(rule);
        CHECK(sim.cell({0, 1}) == 1);
        CHECK(sim.cell({1, 1}) == 1);
        CHECK(sim.cell({2, 1}) == 1);
        CHECK(sim.cell({1, 0}) == 0);
        CHECK(sim.cell({1, 2}) == 0);
        sim.step(rule);
        CHECK(sim.cell({1, 0}) == 1); // back to vertical
        CHECK(sim.cell({1, 2}) == 1);
        // the box boundary is non-periodic: nothing wrapped around
        CHECK(sim.cell({3, 0}) == 0);
        CHECK(sim.cell({3, 3}) == 0);
    }
}

TEST_CASE("initial states are layout independent") {
    const auto carpet = builtin_descriptor("sierpinski-carpet");
    Simulation bb(carpet, 3, Backend::BoundingBox);
    Simulation lam(carpet, 3, Backend::CompactGrid);
    Simulation linear(carpet, 3, Backend::Compact);
    Simulation blocked(carpet, 3, Backend::Compact, {.block_size = 3});
    for (auto* sim : {&bb, &lam, &linear, &blocked})
        sim->seed_random(1234, 0.4);
    for (const auto& e : enumerate_cells(carpet, 3)) {
        CHECK(bb.cell(e) == linear.cell(e));
        CHECK(bb.cell(e) == lam.cell(e));
        CHECK(bb.cell(e) == blocked.cell(e));
    }

    Simulation dens(carpet, 2, Backend::Compact);
    dens.seed_random(7, 0.0);
    CHECK(dens.state_hash() == 0);
    dens.seed_random(7, 1.0);
    std::int64_t alive = 0;
    for (const auto& e : enumerate_cells(carpet, 2))
        alive += dens.cell(e);
    CHECK(alive == cell_count(carpet, 2));

    CHECK_THROWS_AS(dens.seed_random(7, 1.5), OutOfDomain);
    CHECK_THROWS_AS(dens.seed_random(7, -0.1), OutOfDomain);
}

namespace {

StencilRule random_rule(SplitMix& rng) {
    StencilRule rule;
    rule.birth = static_cast<std::uint16_t>(rng.next() & 0x1ff);
    rule.survive = static_cast<std::uint16_t>(rng.next() & 0x1ff);
    rule.neighborhood =
        rng.next() & 1 ? Neighborhood::Moore : Neighborhood::VonNeumann;
    return rule;
}

} // namespace

TEST_CASE("cross-backend equivalence") {
    const auto triangle = builtin_descriptor("sierpinski-triangle");
    const auto rule = conway_rule();

    SUBCASE("triangle r=4, 10 steps, compact equals bounding box") {
        Simulation bb(triangle, 4, Backend::BoundingBox);
        Simulation compact(triangle, 4, Backend::Compact);
        bb.seed_random(99, 0.5);
        compact.seed_random(99, 0.5);
        for (int i = 0; i < 10; ++i) {
            bb.step(rule);
            compact.step(rule);
        }
        CHECK(bb.state_hash() == compact.state_hash());
        for (const auto& e : enumerate_cells(triangle, 4))
            CHECK(bb.cell(e) == compact.cell(e));
    }

    SUBCASE("randomized rules and seeds, all backends and layouts") {
        SplitMix rng(2024);
        for (int trial = 0; trial < 15; ++trial) {
            const auto desc = trial % 2 == 0
                                  ? triangle
                                  : builtin_descriptor("sierpinski-carpet");
            const int r = trial % 2 == 0 ? 4 : 2;
            const auto trial_rule = random_rule(rng);
            const std::uint64_t seed = rng.next();
            CAPTURE(trial_rule.to_string());
            CAPTURE(seed);
            Simulation bb(desc, r, Backend::BoundingBox);
            Simulation lam(desc, r, Backend::CompactGrid);
            Simulation lin(desc, r, Backend::Compact);
            Simulation blk(desc, r, Backend::Compact,
                           {.block_size = desc.growth});
            Simulation tab(desc, r, Backend::Compact, {.neighbor_table = true});
            std::vector<Simulation*> sims = {&bb, &lam, &lin, &blk, &tab};
            for (auto* sim : sims)
                sim->seed_random(seed, 0.5);
            for (int step = 0; step < 6; ++step) {
                for (auto* sim : sims)
                    sim->step(trial_rule);
                for (auto* sim : sims)
                    REQUIRE(sim->state_hash() == bb.state_hash());
            }
        }
    }
}

TEST_CASE("holes and filler slots never become alive") {
    // B0 rules aggressively birth cells; non-fractal storage must stay dead
    const auto triangle = builtin_descriptor("sierpinski-triangle");
    StencilRule rule = StencilRule::parse("B012345678/S012345678");
    Simulation bb(triangle, 3, Backend::BoundingBox);
    Simulation blk(triangle, 3, Backend::Compact, {.block_size = 4});
    bb.seed_random(5, 0.5);
    blk.seed_random(5, 0.5);
    for (int i = 0; i < 4; ++i) {
        bb.step(rule);
        blk.step(rule);
    }
    const std::int64_t n = bb.side();
    for (std::int64_t y = 0; y < n; ++y)
        for (std::int64_t x = 0; x < n; ++x)
            if (!contains(triangle, 3, {x, y}))
                CHECK(bb.front().get({x, y}) == 0);
    // blocked grid: filler slots dead, checked through the raw buffer
    std::int64_t alive = 0;
    for (std::int64_t i = 0; i < blk.front().stored_cell_count(); ++i)
        alive += blk.front().data()[i];
    std::int64_t fractal_alive = 0;
    for (const auto& e : enumerate_cells(triangle, 3))
        fractal_alive += blk.cell(e);
    CHECK(alive == fractal_alive);
}

TEST_CASE("determinism") {
    const auto vicsek = builtin_descriptor("vicsek");
    const auto rule = conway_rule();
    const auto a = run_simulation(vicsek, 3, Backend::Compact, rule, 20, 7, 0.5);
    const auto b = run_simulation(vicsek, 3, Backend::Compact, rule, 20, 7, 0.5);
    CHECK(a.state_hash == b.state_hash);
    CHECK(a.steps == 20);
    CHECK(a.step_ms.size() == 20);

    const auto parallel = run_simulation(vicsek, 3, Backend::Compact, rule, 20,
                                         7, 0.5, {.workers = 4});
    CHECK(parallel.state_hash == a.state_hash);

    const auto zero = run_simulation(vicsek, 3, Backend::Compact, rule, 0, 7, 0.5);
    Simulation init(vicsek, 3, Backend::Compact);
    init.seed_random(7, 0.5);
    CHECK(zero.state_hash == init.state_hash());
}

TEST_CASE("option validation") {
    const auto triangle = builtin_descriptor("sierpinski-triangle");
    CHECK_THROWS_AS(
        Simulation(triangle, 3, Backend::BoundingBox, {.block_size = 2}),
        OutOfDomain);
    CHECK_THROWS_AS(
        Simulation(triangle, 3, Backend::CompactGrid, {.neighbor_table = true}),
        OutOfDomain);
    CHECK_THROWS_AS(run_simulation(triangle, 3, Backend::Compact, conway_rule(),
                                   -1, 0, 0.5),
                    OutOfDomain);
}
