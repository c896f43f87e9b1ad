#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "flockopt/controller.hpp"
#include "flockopt/metrics.hpp"
#include "flockopt/rng.hpp"

using namespace flockopt;

namespace {

// Builds a static single-step log from explicit positions/velocities.
SimLog static_log(const std::vector<Vec2>& positions, const std::vector<Vec2>& velocities,
                  const SimConfig& config, const FlockParams& params, int steps = 1) {
    SimLog log;
    log.config = config;
    log.params = params;
    StepRecord rec;
    rec.positions = positions;
    rec.velocities = velocities;
    rec.desired = velocities;
    log.steps.assign(steps, rec);
    return log;
}

// Brute-force adjacency oracle for the cluster metrics.
void cluster_oracle(const std::vector<Vec2>& positions, double r_cluster,
                    std::vector<int>& n_cluster) {
    const int n = static_cast<int>(positions.size());
    n_cluster.assign(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && (positions[i] - positions[j]).norm() <= r_cluster)
                ++n_cluster[i];
}

}  // namespace

TEST_CASE("fully aligned clique") {
    SimConfig c;
    c.n_agents = 4;
    FlockParams params;
    std::vector<Vec2> pos{{0, 0}, {10, 0}, {0, 10}, {10, 10}};
    std::vector<Vec2> vel(4, Vec2{6.0, 0.0});
    SimLog log = static_log(pos, vel, c, params);
    OrderParams op = order_params(log, c, params);
    CHECK(op.phi_corr == doctest::Approx(1.0));
    CHECK(op.phi_disc == doctest::Approx(0.0));
    CHECK(op.phi_cluster == doctest::Approx(3.0));
    CHECK(op.phi_vel == doctest::Approx(6.0));
    CHECK(op.phi_wall == doctest::Approx(0.0));
}

TEST_CASE("disconnected pair") {
    SimConfig c;
    c.n_agents = 2;
    c.r_comm = 80.0;
    FlockParams params;
    double r_cluster = cluster_radius(params, c);
    std::vector<Vec2> pos{{0, 0}, {r_cluster + 50.0, 0}};
    std::vector<Vec2> vel(2, Vec2{6.0, 0.0});
    SimLog log = static_log(pos, vel, c, params);
    OrderParams op = order_params(log, c, params);
    CHECK(op.phi_disc == doctest::Approx(2.0));
    CHECK(op.phi_cluster == doctest::Approx(0.0));
}

TEST_CASE("line of five agents") {
    SimConfig c;
    c.n_agents = 5;
    FlockParams params;
    double r_cluster = cluster_radius(params, c);
    double spacing = r_cluster * 0.9;
    std::vector<Vec2> pos;
    for (int i = 0; i < 5; ++i) pos.push_back({i * spacing, 0.0});
    std::vector<Vec2> vel(5, Vec2{6.0, 0.0});
    SimLog log = static_log(pos, vel, c, params);
    OrderParams op = order_params(log, c, params);

    std::vector<int> oracle;
    cluster_oracle(pos, r_cluster, oracle);
    CHECK(oracle == std::vector<int>{1, 2, 2, 2, 1});
    CHECK(op.phi_cluster == doctest::Approx(1.0));
    CHECK(op.phi_disc == doctest::Approx(0.0));
}

TEST_CASE("cluster metrics match the adjacency oracle on random configurations") {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        SimConfig c;
        c.n_agents = 2 + static_cast<int>(rng.uniform() * 49);
        c.r_comm = 1e9;  // correlation neighborhood irrelevant here
        FlockParams params;
        std::vector<Vec2> pos;
        for (int i = 0; i < c.n_agents; ++i)
            pos.push_back({rng.uniform(-300.0, 300.0), rng.uniform(-300.0, 300.0)});
        std::vector<Vec2> vel(c.n_agents, Vec2{6.0, 0.0});
        SimLog log = static_log(pos, vel, c, params);
        OrderParams op = order_params(log, c, params);

        std::vector<int> oracle;
        cluster_oracle(pos, cluster_radius(params, c), oracle);
        int disc = 0, minclu = c.n_agents;
        for (int v : oracle) {
            if (v == 0) ++disc;
            minclu = std::min(minclu, v);
        }
        CHECK(op.phi_disc == doctest::Approx(static_cast<double>(disc)));
        CHECK(op.phi_cluster == doctest::Approx(static_cast<double>(minclu)));
    }
}

TEST_CASE("wall distance is Euclidean distance to the fence") {
    Vec2 center{0.0, 0.0};
    CHECK(dist_outside({0.0, 0.0}, center, 500.0) == 0.0);
    CHECK(dist_outside({250.0, 0.0}, center, 500.0) == 0.0);
    CHECK(dist_outside({260.0, 0.0}, center, 500.0) == doctest::Approx(10.0));
    CHECK(dist_outside({253.0, 254.0}, center, 500.0) == doctest::Approx(5.0));
}

TEST_CASE("cluster radius round-trips through decay") {
    SimConfig c;
    FlockParams params;
    double r_cluster = cluster_radius(params, c);
    CHECK(decay(r_cluster - params.r0_rep - params.r0_frict, params.a_frict,
                params.p_frict) == doctest::Approx(c.v_flock).epsilon(1e-9));
}

TEST_CASE("transfer functions") {
    CHECK(transfer_F1(6.0, 6.0, 3.75) == doctest::Approx(1.0));
    CHECK(transfer_F1(6.0 - 3.75, 6.0, 3.75) == doctest::Approx(0.0));
    CHECK(transfer_F1(4.125, 6.0, 3.75) == doctest::Approx(0.5));
    CHECK(transfer_F1(7.0, 6.0, 3.75) == doctest::Approx(1.0));

    CHECK(transfer_F2(0.0, 5.0) == doctest::Approx(1.0));
    CHECK(transfer_F2(5.0, 5.0) == doctest::Approx(0.0));
    CHECK(transfer_F2(2.5, 5.0) == doctest::Approx(0.5));
    CHECK(transfer_F2(12.0, 5.0) == doctest::Approx(0.0));

    CHECK(transfer_F3(0.0, 6.0) == doctest::Approx(1.0));
    CHECK(transfer_F3(6.0, 6.0) == doctest::Approx(0.5));
    CHECK(transfer_F3(12.0, 6.0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("fitness vector: ideal flock and heaviside gate") {
    SimConfig c;  // N = 30
    TransferParams tp;
    OrderParams op;
    op.phi_vel = c.v_flock;
    op.phi_corr = 1.0;
    op.phi_coll = 0.0;
    op.phi_wall = 0.0;
    op.phi_disc = 0.0;
    op.phi_cluster = c.n_agents - 1;
    FitnessVector fv = fitness_vector(op, tp, c);
    CHECK(fv.f_speed == doctest::Approx(1.0));
    CHECK(fv.f_coll == doctest::Approx(1.0));
    CHECK(fv.f_wall == doctest::Approx(1.0));
    CHECK(fv.f_corr == doctest::Approx(1.0));
    CHECK(fv.f_disc == doctest::Approx(1.0));
    CHECK(fv.f_cluster == doctest::Approx(1.0));

    op.phi_corr = -0.3;
    fv = fitness_vector(op, tp, c);
    CHECK(fv.f_corr == 0.0);

    op.phi_disc = 6.0;  // N/5 with N=30
    fv = fitness_vector(op, tp, c);
    CHECK(fv.f_disc == doctest::Approx(0.5));
}

TEST_CASE("reduced objectives are products") {
    FitnessVector fv;
    fv.f_speed = fv.f_coll = fv.f_wall = fv.f_corr = fv.f_disc = fv.f_cluster = 1.0;
    ReducedObjectives ro = reduce_objectives(fv);
    CHECK(ro.f1 == doctest::Approx(1.0));
    CHECK(ro.f2 == doctest::Approx(1.0));

    fv.f_wall = 0.89;
    ro = reduce_objectives(fv);
    CHECK(ro.f1 == doctest::Approx(0.89));
    CHECK(ro.f2 == doctest::Approx(1.0));

    fv = {0.9, 0.8, 0.9, 0.9, 0.8, 0.8};  // speed, coll, wall, corr, disc, cluster
    ro = reduce_objectives(fv);
    CHECK(ro.f1 == doctest::Approx(0.81));
    CHECK(ro.f2 == doctest::Approx(0.4608));
}

TEST_CASE("fitnesses stay in [0,1] and are monotone") {
    SimConfig c;
    TransferParams tp;
    Rng rng(9);
    for (int i = 0; i < 500; ++i) {
        OrderParams op;
        op.phi_vel = rng.uniform(0.0, 10.0);
        op.phi_corr = rng.uniform(-1.0, 1.0);
        op.phi_coll = rng.uniform(0.0, 1.0);
        op.phi_wall = rng.uniform(0.0, 100.0);
        op.phi_disc = rng.uniform(0.0, c.n_agents);
        op.phi_cluster = rng.uniform(0.0, c.n_agents - 1.0);
        FitnessVector fv = fitness_vector(op, tp, c);
        for (double f : {fv.f_speed, fv.f_coll, fv.f_wall, fv.f_corr, fv.f_disc,
                         fv.f_cluster}) {
            CHECK(f >= 0.0);
            CHECK(f <= 1.0);
        }
        ReducedObjectives ro = reduce_objectives(fv);
        CHECK(ro.f1 >= 0.0);
        CHECK(ro.f1 <= 1.0);
        CHECK(ro.f2 >= 0.0);
        CHECK(ro.f2 <= 1.0);

        // monotone orientations
        OrderParams op2 = op;
        op2.phi_vel += 0.5;
        op2.phi_wall += 5.0;
        op2.phi_coll = std::min(1.0, op.phi_coll + 0.1);
        op2.phi_disc = std::min<double>(c.n_agents, op.phi_disc + 1.0);
        op2.phi_cluster = std::min(c.n_agents - 1.0, op.phi_cluster + 1.0);
        FitnessVector fv2 = fitness_vector(op2, tp, c);
        CHECK(fv2.f_speed >= fv.f_speed - 1e-12);
        CHECK(fv2.f_wall <= fv.f_wall + 1e-12);
        CHECK(fv2.f_coll <= fv.f_coll + 1e-12);
        CHECK(fv2.f_disc <= fv.f_disc + 1e-12);
        CHECK(fv2.f_cluster >= fv.f_cluster - 1e-12);
    }
}
