#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "softgait/gaitopt.hpp"

using namespace softgait;

namespace {

RewardMatrices load_data_env(const std::string& name) {
    return load_environment(std::string(SOFTGAIT_DATA_DIR) + "/" + name);
}

const PeriodicGait kInch1{{2, 3, 1, 2}};  // S_I1 = (10)->(11)->(01)->(10)
const PeriodicGait kHop{{0, 3, 0}};       // S_H  = (00)->(11)->(00)

} // namespace

TEST_CASE("reward accumulation along a gait") {
    const auto ishape = load_data_env("ishape_table.env");

    SUBCASE("inch gait on I-shape, hand-summed from the environment file") {
        const auto eval =
            evaluate_gait(kInch1, ishape, LocomotionTask::TranslateX);
        CHECK(eval.j_x == 17);      // 8 + 8 + 1
        CHECK(eval.j_y == -2);      // -1 + -1 + 0
        CHECK(eval.j_theta == 0);
        CHECK(eval.objective == 15);
        CHECK_FALSE(eval.uncoupled);
    }

    SUBCASE("hop gait rotates without residual translation") {
        const auto eval = evaluate_gait(kHop, ishape, LocomotionTask::RotateCcw);
        CHECK(eval.j_theta == 30); // 15 + 15
        CHECK(eval.j_x == 0);
        CHECK(eval.j_y == 0);
        CHECK(eval.objective == 30);
        CHECK(eval.uncoupled);
    }

    SUBCASE("self-loop gaits accumulate nothing") {
        for (int s = 0; s < 4; ++s) {
            const auto eval = evaluate_gait(PeriodicGait{{s, s}}, ishape,
                                            LocomotionTask::TranslateX);
            CHECK(eval.j_x == 0);
            CHECK(eval.j_y == 0);
            CHECK(eval.j_theta == 0);
        }
    }

    SUBCASE("out-of-range states are rejected") {
        CHECK_THROWS_AS(evaluate_gait(PeriodicGait{{0, 4, 0}}, ishape,
                                      LocomotionTask::TranslateX),
                        InputError);
    }
}

TEST_CASE("optimal translation gaits on the tabletop environments") {
    for (const char* name :
         {"ishape_table.env", "midlines_table.env", "simples_table.env"}) {
        const auto result =
            optimize(load_data_env(name), LocomotionTask::TranslateX);
        CHECK(result.winner.gait == PeriodicGait::canonical(kInch1.states));
        CHECK(classify_gait_family(result.winner.gait, BehaviorSpec::binary(2)) ==
              "inch (S_I1)");
    }

    CHECK(optimize(load_data_env("ishape_table.env"), LocomotionTask::TranslateX)
              .winner.objective == 15);
    CHECK(optimize(load_data_env("midlines_table.env"), LocomotionTask::TranslateX)
              .winner.j_x == 18);
}

TEST_CASE("optimal rotation gaits on the tabletop environments") {
    const auto ccw =
        optimize(load_data_env("ishape_table.env"), LocomotionTask::RotateCcw);
    CHECK(ccw.winner.gait == PeriodicGait::canonical(kHop.states));
    CHECK(ccw.winner.j_theta == 30);
    CHECK(ccw.winner.objective == 30);
    CHECK(ccw.winner.uncoupled);

    const auto cw =
        optimize(load_data_env("simples_table.env"), LocomotionTask::RotateCw);
    CHECK(cw.winner.gait == PeriodicGait::canonical(kHop.states));
    CHECK(cw.winner.j_theta == -30);
    CHECK(cw.winner.objective == 30);
}

TEST_CASE("surface dependence: carpet prefers the crawl") {
    const auto carpet =
        optimize(load_data_env("midlines_carpet.env"), LocomotionTask::TranslateX);
    CHECK(classify_gait_family(carpet.winner.gait, BehaviorSpec::binary(2)) ==
          "crawl (S_C2)");
    CHECK(carpet.winner.objective == 2);
}

TEST_CASE("directional friction: non-symmetric case crawls") {
    const auto ns = optimize(load_data_env("directional_nonsymmetric.env"),
                             LocomotionTask::TranslateX);
    CHECK(classify_gait_family(ns.winner.gait, BehaviorSpec::binary(2)) ==
          "crawl (S_C1)");
    CHECK(ns.winner.j_x == 10); // 5 + 5
}

TEST_CASE("optimize matches the brute-force oracle on every canned "
          "environment and task") {
    for (const char* name :
         {"ishape_table.env", "midlines_table.env", "simples_table.env",
          "midlines_carpet.env", "directional_symmetric.env",
          "directional_nonsymmetric.env"}) {
        const auto matrices = load_data_env(name);
        for (const char* task : {"+x", "+theta", "-theta"}) {
            const auto result = optimize(matrices, parse_task(task));
            const auto oracle = oracles::brute_force_best(matrices, task);
            CHECK(result.winner.gait.states == oracle.closed);
            CHECK(result.winner.j_x == oracle.j_x);
            CHECK(result.winner.j_theta == oracle.j_theta);
        }
    }
}

TEST_CASE("ranking is sorted with deterministic tie-breaks") {
    const auto result =
        optimize(load_data_env("simples_table.env"), LocomotionTask::TranslateX);
    for (std::size_t i = 1; i < result.ranked.size(); ++i) {
        const auto& a = result.ranked[i - 1];
        const auto& b = result.ranked[i];
        const bool ordered =
            a.objective > b.objective ||
            (a.objective == b.objective &&
             (a.gait.length() < b.gait.length() ||
              (a.gait.length() == b.gait.length() && a.gait.states <= b.gait.states)));
        CHECK(ordered);
    }
    // Simple-S has S_I1 and S_I2 tied at objective 14; the shorter circuit
    // must win.
    CHECK(result.winner.gait == PeriodicGait::canonical(kInch1.states));
    CHECK(result.winner.objective == 14);
}

TEST_CASE("scale invariance of the argmax and ranking") {
    std::mt19937 rng(19);
    const auto base = load_data_env("midlines_carpet.env");
    for (int trial = 0; trial < 10; ++trial) {
        const double c = std::uniform_real_distribution<>(0.01, 50)(rng);
        RewardMatrices scaled = base;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                scaled.t_x.at(i, j) *= c;
                scaled.t_y.at(i, j) *= c;
                scaled.t_theta.at(i, j) *= c;
            }
        for (const char* task : {"+x", "+theta", "-theta"}) {
            const auto a = optimize(base, parse_task(task));
            const auto b = optimize(scaled, parse_task(task));
            REQUIRE(a.ranked.size() == b.ranked.size());
            CHECK(a.winner.gait == b.winner.gait);
            for (std::size_t i = 0; i < a.ranked.size(); ++i) {
                CHECK(a.ranked[i].gait == b.ranked[i].gait);
                CHECK(b.ranked[i].objective ==
                      doctest::Approx(c * a.ranked[i].objective).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("reversing a gait negates J_x and J_y on antisymmetric tables") {
    const auto m = load_data_env("simples_table.env");
    std::vector<int> forward{2, 3, 1, 2};
    std::vector<int> backward(forward.rbegin(), forward.rend());
    const auto f =
        evaluate_gait(PeriodicGait{forward}, m, LocomotionTask::TranslateX);
    const auto b =
        evaluate_gait(PeriodicGait{backward}, m, LocomotionTask::TranslateX);
    CHECK(b.j_x == -f.j_x);
    CHECK(b.j_y == -f.j_y);
}

TEST_CASE("gait family classification") {
    const auto spec = BehaviorSpec::binary(2);
    CHECK(classify_gait_family(PeriodicGait{{0, 3, 0}}, spec) == "hop (S_H)");
    // Rotations of a named cycle classify identically.
    CHECK(classify_gait_family(PeriodicGait{{3, 1, 2, 3}}, spec) == "inch (S_I1)");
    CHECK(classify_gait_family(PeriodicGait{{0, 1, 0}}, spec) == "unnamed");
    CHECK(classify_gait_family(PeriodicGait{{0, 2, 1, 0}}, spec) ==
          "crawl (S_C2)");
    CHECK(classify_gait_family(PeriodicGait{{0, 2, 3, 1, 0}}, spec) ==
          "inch (S_I2)");
    CHECK(classify_gait_family(PeriodicGait{{1, 2, 1}}, spec) == "crawl (S_C1)");
    // Other state spaces never match the named P=2, M=2 sequences.
    CHECK(classify_gait_family(PeriodicGait{{0, 3, 0}}, BehaviorSpec::make(3, 2)) ==
          "unnamed");
}

TEST_CASE("negative best objective carries a warning") {
    // Force a pool without self-loops so residual penalties dominate.
    auto graph = StateDigraph::complete(4);
    for (int v = 0; v < 4; ++v) graph.set_edge(v, v, false);
    const auto result = optimize(load_data_env("directional_symmetric.env"),
                                 LocomotionTask::TranslateX, graph);
    CHECK(result.negative_best);
    CHECK(result.winner.objective < 0);
}

TEST_CASE("degenerate graphs produce a no-gait error") {
    const auto m = load_data_env("ishape_table.env");
    CHECK_THROWS_AS(optimize(m, LocomotionTask::TranslateX, StateDigraph::empty(4)),
                    InputError);
}

TEST_CASE("task flags parse and print") {
    CHECK(task_name(parse_task("+x")) == "+x");
    CHECK(task_name(parse_task("+theta")) == "+theta");
    CHECK(task_name(parse_task("-theta")) == "-theta");
    CHECK_THROWS_AS(parse_task("sideways"), InputError);
}
