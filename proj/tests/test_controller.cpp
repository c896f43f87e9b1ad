#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "flockopt/controller.hpp"
#include "flockopt/rng.hpp"

using namespace flockopt;

namespace {

// scalar reference for decay, evaluating both branch conditions explicitly
double decay_reference(double r, double a, double p) {
    if (r <= 0.0) return 0.0;
    bool linear = r * p <= a / p;
    if (linear) return r * p;
    return std::sqrt(2.0 * a * r - (a / p) * (a / p));
}

double bisect_braking(double v, double a, double p) {
    double lo = 0.0, hi = 1e6;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (decay(mid, a, p) < v)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

FlockParams point_a_params() { return FlockParams{}; }  // defaults are point A

Vec2 rotate90(const Vec2& v) { return {-v.y, v.x}; }
Vec2 mirror_x(const Vec2& v) { return {v.x, -v.y}; }

}  // namespace

TEST_CASE("decay boundary and branch values") {
    CHECK(decay(0.0, 5.0, 1.0) == 0.0);
    CHECK(decay(-3.0, 5.0, 1.0) == 0.0);

    // both branches agree at the transition point r = a/p^2
    double a = 5.0, p = 1.3;
    CHECK(decay(a / (p * p), a, p) == doctest::Approx(a / p).epsilon(1e-12));

    // r*p = 2 <= a/p = 5: linear branch
    CHECK(decay(2.0, 5.0, 1.0) == doctest::Approx(2.0));

    // nonlinear branch example
    CHECK(decay(20.0, 5.0, 1.0) == doctest::Approx(std::sqrt(2.0 * 5.0 * 20.0 - 25.0)));

    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        double r = rng.uniform(0.0, 200.0);
        double aa = rng.uniform(1.0, 10.0);
        double pp = rng.uniform(0.3, 10.0);
        CHECK(decay(r, aa, pp) == doctest::Approx(decay_reference(r, aa, pp)).epsilon(1e-12));
    }
}

TEST_CASE("decay is continuous at the branch point") {
    double a = 5.04, p = 0.38;
    double r_star = a / (p * p);
    double lo = decay(r_star - 1e-9, a, p);
    double hi = decay(r_star + 1e-9, a, p);
    CHECK(std::abs(hi - lo) < 1e-6);
}

TEST_CASE("decay is nondecreasing") {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        double a = rng.uniform(1.0, 10.0);
        double p = rng.uniform(0.3, 10.0);
        double r1 = rng.uniform(0.0, 100.0);
        double r2 = r1 + rng.uniform(0.0, 50.0);
        CHECK(decay(r2, a, p) >= decay(r1, a, p) - 1e-12);
    }
}

TEST_CASE("braking_distance inverts decay") {
    CHECK(braking_distance(0.0, 5.0, 1.0) == 0.0);

    // linear branch: v <= a/p, so r = v/p
    double v = 6.0, a = 5.04, p = 0.38;
    CHECK(braking_distance(v, a, p) == doctest::Approx(v / p).epsilon(1e-12));
    CHECK(braking_distance(v, a, p) == doctest::Approx(bisect_braking(v, a, p)).epsilon(1e-9));

    // quadratic branch: v > a/p
    p = 1.2;  // a/p = 4.2 < 6
    double expected = (v * v + (a / p) * (a / p)) / (2.0 * a);
    CHECK(braking_distance(v, a, p) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(braking_distance(v, a, p) == doctest::Approx(bisect_braking(v, a, p)).epsilon(1e-9));

    Rng rng(23);
    for (int i = 0; i < 100; ++i) {
        double vv = rng.uniform(0.01, 20.0);
        double aa = rng.uniform(1.0, 10.0);
        double pp = rng.uniform(0.3, 10.0);
        double r = braking_distance(vv, aa, pp);
        CHECK(decay(r, aa, pp) == doctest::Approx(vv).epsilon(1e-9));
    }
}

TEST_CASE("repulsion cutoff and hand-computed value") {
    FlockParams params;
    params.r0_rep = 30.0;
    params.p_rep = 0.1;

    // neighbor at exactly r0_rep contributes zero
    Vec2 v = repulsion_velocity({{30.0, 0.0}}, params);
    CHECK(v.x == doctest::Approx(0.0));
    CHECK(v.y == doctest::Approx(0.0));

    // 0.1 * (20 - 30) * (1, 0)
    v = repulsion_velocity({{20.0, 0.0}}, params);
    CHECK(v.x == doctest::Approx(-1.0));
    CHECK(v.y == doctest::Approx(0.0));

    // symmetric pair cancels
    v = repulsion_velocity({{15.0, 0.0}, {-15.0, 0.0}}, params);
    CHECK(v.norm() < 1e-12);
}

TEST_CASE("repulsion magnitude is nonincreasing in distance") {
    FlockParams params;
    params.r0_rep = 40.0;
    params.p_rep = 0.05;
    double prev = 1e18;
    for (double d = 0.5; d <= 45.0; d += 0.5) {
        double mag = repulsion_velocity({{d, 0.0}}, params).norm();
        CHECK(mag <= prev + 1e-12);
        if (d >= params.r0_rep) CHECK(mag == doctest::Approx(0.0));
        prev = mag;
    }
}

TEST_CASE("coincident neighbor gets a deterministic unit direction") {
    FlockParams params;
    params.r0_rep = 30.0;
    params.p_rep = 0.1;
    std::vector<int> ids{7};
    Vec2 a = repulsion_velocity({{0.0, 0.0}}, params, 3, &ids);
    Vec2 b = repulsion_velocity({{0.0, 0.0}}, params, 3, &ids);
    CHECK(a == b);
    CHECK(a.norm() == doctest::Approx(params.p_rep * params.r0_rep).epsilon(1e-6));
}

TEST_CASE("friction slack and hand-computed value") {
    FlockParams params;
    params.r0_rep = 30.0;
    params.r0_frict = 50.0;
    params.a_frict = 5.0;
    params.p_frict = 1.0;
    params.v_frict = 1.0;
    params.c_frict = 0.1;

    // aligned neighbor contributes nothing
    Vec2 v = friction_velocity({{10.0, 0.0}}, {{0.0, 0.0}}, params);
    CHECK(v.norm() == doctest::Approx(0.0));

    // exactly at the slack boundary
    v = friction_velocity({{10.0, 0.0}}, {{1.0, 0.0}}, params);
    CHECK(v.norm() == doctest::Approx(0.0));

    // 0.1 * (3 - 1) * (1, 0); decay argument negative at distance 10
    v = friction_velocity({{10.0, 0.0}}, {{3.0, 0.0}}, params);
    CHECK(v.x == doctest::Approx(0.2));
    CHECK(v.y == doctest::Approx(0.0));
}

TEST_CASE("shill term at the fence") {
    ArenaSpec arena{{0.0, 0.0}, 500.0};
    FlockParams params;
    params.c_shill = 1.0;
    params.v_shill = 13.0;
    params.a_shill = 6.0;
    params.p_shill = 1.0;
    params.r0_shill = 0.0;

    // deep inside with zero velocity: alignment slack absorbs everything
    Vec2 v = shill_velocity({0.0, 0.0}, {0.0, 0.0}, arena, params);
    CHECK(v.norm() == doctest::Approx(0.0));

    // far outside the +x wall: full alignment with the inward shill
    v = shill_velocity({350.0, 0.0}, {0.0, 0.0}, arena, params);
    CHECK(v.x == doctest::Approx(-13.0));
    CHECK(v.y == doctest::Approx(0.0));

    // gain annihilation
    params.c_shill = 0.0;
    v = shill_velocity({350.0, 120.0}, {3.0, -2.0}, arena, params);
    CHECK(v.norm() == doctest::Approx(0.0));
}

TEST_CASE("desired velocity composition") {
    SimConfig config;
    ArenaSpec arena{{0.0, 0.0}, config.arena_side};
    FlockParams params = point_a_params();

    // no neighbors, deep inside: pure self-propulsion renormalization
    Vec2 v = desired_velocity({0.0, 0.0}, {3.0, 0.0}, {}, {}, arena, params, config);
    CHECK(v.x == doctest::Approx(6.0));
    CHECK(v.y == doctest::Approx(0.0));

    // clamp preserves direction
    SimConfig wide = config;
    wide.v_max = 1e9;
    Vec2 raw = desired_velocity({249.0, 0.0}, {6.0, 0.0}, {}, {}, arena, params, wide);
    Vec2 clamped = desired_velocity({249.0, 0.0}, {6.0, 0.0}, {}, {}, arena, params, config);
    if (raw.norm() > config.v_max) {
        CHECK(clamped.norm() == doctest::Approx(config.v_max));
        Vec2 dir_raw = normalized(raw);
        Vec2 dir_clamped = normalized(clamped);
        CHECK(dir_raw.x == doctest::Approx(dir_clamped.x));
        CHECK(dir_raw.y == doctest::Approx(dir_clamped.y));
    }

    // two-agent head-on at 10 m: the interaction terms push away
    Vec2 with_neighbor = desired_velocity({-5.0, 0.0}, {6.0, 0.0}, {{10.0, 0.0}},
                                          {{-12.0, 0.0}}, arena, params, config);
    Vec2 alone = desired_velocity({-5.0, 0.0}, {6.0, 0.0}, {}, {}, arena, params, config);
    Vec2 away{-1.0, 0.0};
    CHECK((with_neighbor - alone).dot(away) > 0.0);
}

TEST_CASE("desired velocity never exceeds v_max") {
    SimConfig config;
    ArenaSpec arena{{0.0, 0.0}, config.arena_side};
    FlockParams params = point_a_params();
    Rng rng(99);
    for (int i = 0; i < 500; ++i) {
        Vec2 pos{rng.uniform(-400.0, 400.0), rng.uniform(-400.0, 400.0)};
        Vec2 vel{rng.uniform(-6.0, 6.0), rng.uniform(-6.0, 6.0)};
        std::vector<Vec2> r_rel, v_rel;
        int k = static_cast<int>(rng.uniform(0.0, 5.0));
        for (int j = 0; j < k; ++j) {
            r_rel.push_back({rng.uniform(-80.0, 80.0), rng.uniform(-80.0, 80.0)});
            v_rel.push_back({rng.uniform(-12.0, 12.0), rng.uniform(-12.0, 12.0)});
        }
        Vec2 v = desired_velocity(pos, vel, r_rel, v_rel, arena, params, config);
        CHECK(v.norm() <= config.v_max + 1e-9);
    }
}

TEST_CASE("controller is equivariant under the square symmetry group") {
    SimConfig config;
    ArenaSpec arena{{0.0, 0.0}, config.arena_side};
    FlockParams params = point_a_params();
    Rng rng(123);
    for (int i = 0; i < 100; ++i) {
        Vec2 pos{rng.uniform(-260.0, 260.0), rng.uniform(-260.0, 260.0)};
        Vec2 vel{rng.uniform(-6.0, 6.0), rng.uniform(-6.0, 6.0)};
        std::vector<Vec2> r_rel, v_rel;
        for (int j = 0; j < 3; ++j) {
            r_rel.push_back({rng.uniform(-60.0, 60.0), rng.uniform(-60.0, 60.0)});
            v_rel.push_back({rng.uniform(-12.0, 12.0), rng.uniform(-12.0, 12.0)});
        }
        Vec2 base = desired_velocity(pos, vel, r_rel, v_rel, arena, params, config);

        // 90 degree rotation
        std::vector<Vec2> rr, vr;
        for (std::size_t j = 0; j < r_rel.size(); ++j) {
            rr.push_back(rotate90(r_rel[j]));
            vr.push_back(rotate90(v_rel[j]));
        }
        Vec2 rot = desired_velocity(rotate90(pos), rotate90(vel), rr, vr, arena, params,
                                    config);
        Vec2 expect = rotate90(base);
        CHECK(rot.x == doctest::Approx(expect.x).epsilon(1e-9));
        CHECK(rot.y == doctest::Approx(expect.y).epsilon(1e-9));

        // x-axis mirror
        rr.clear();
        vr.clear();
        for (std::size_t j = 0; j < r_rel.size(); ++j) {
            rr.push_back(mirror_x(r_rel[j]));
            vr.push_back(mirror_x(v_rel[j]));
        }
        Vec2 mir = desired_velocity(mirror_x(pos), mirror_x(vel), rr, vr, arena, params,
                                    config);
        expect = mirror_x(base);
        CHECK(mir.x == doctest::Approx(expect.x).epsilon(1e-9));
        CHECK(mir.y == doctest::Approx(expect.y).epsilon(1e-9));
    }
}
