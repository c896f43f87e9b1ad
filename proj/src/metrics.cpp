#include "flockopt/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "flockopt/controller.hpp"

namespace flockopt {

double cluster_radius(const FlockParams& params, const SimConfig& config) {
    return params.r0_rep + params.r0_frict +
           braking_distance(config.v_flock, params.a_frict, params.p_frict);
}

double dist_outside(const Vec2& p, const Vec2& center, double side) {
    double half = side / 2.0;
    double dx = std::max(0.0, std::abs(p.x - center.x) - half);
    double dy = std::max(0.0, std::abs(p.y - center.y) - half);
    return std::hypot(dx, dy);
}

OrderParams order_params(const SimLog& log, const SimConfig& config,
                         const FlockParams& params) {
    const int n = config.n_agents;
    const double r_cluster = cluster_radius(params, config);
    const Vec2 center{0.0, 0.0};

    double sum_vel = 0.0, sum_corr = 0.0, sum_coll = 0.0, sum_wall = 0.0;
    double sum_disc = 0.0, sum_minclu = 0.0;
    const double pairs = n * (n - 1) / 2.0;

    const double r_coll_sq = config.r_coll * config.r_coll;
    const double r_cluster_sq = r_cluster * r_cluster;
    const double r_comm_sq = config.r_comm * config.r_comm;

    std::vector<int> n_cluster(n);
    std::vector<int> n_neigh(n);
    std::vector<double> corr(n);
    std::vector<double> vnorm(n);
    for (const StepRecord& s : log.steps) {
        std::fill(n_cluster.begin(), n_cluster.end(), 0);
        std::fill(n_neigh.begin(), n_neigh.end(), 0);
        std::fill(corr.begin(), corr.end(), 0.0);
        for (int i = 0; i < n; ++i) vnorm[i] = s.velocities[i].norm();

        int coll = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double d_sq = (s.positions[i] - s.positions[j]).norm_sq();
                if (d_sq < r_coll_sq) ++coll;
                if (d_sq <= r_cluster_sq) {
                    ++n_cluster[i];
                    ++n_cluster[j];
                }
                if (d_sq <= r_comm_sq) {
                    double denom = vnorm[i] * vnorm[j];
                    double c = denom > 1e-12
                                   ? s.velocities[i].dot(s.velocities[j]) / denom
                                   : 0.0;
                    corr[i] += c;
                    corr[j] += c;
                    ++n_neigh[i];
                    ++n_neigh[j];
                }
            }
        }
        sum_coll += coll / pairs;

        int disc = 0, minclu = n;
        for (int i = 0; i < n; ++i) {
            if (n_cluster[i] == 0) ++disc;
            minclu = std::min(minclu, n_cluster[i]);
            if (n_neigh[i] > 0) sum_corr += corr[i] / n_neigh[i];
            sum_vel += vnorm[i];
            sum_wall += dist_outside(s.positions[i], center, config.arena_side);
        }
        sum_disc += disc;
        sum_minclu += minclu;
    }

    const double steps = static_cast<double>(log.steps.size());
    OrderParams op;
    op.phi_vel = sum_vel / (steps * n);
    op.phi_corr = sum_corr / (steps * n);
    op.phi_coll = sum_coll / steps;
    op.phi_wall = sum_wall / (steps * n);
    op.phi_disc = sum_disc / steps;
    op.phi_cluster = sum_minclu / steps;
    return op;
}

double transfer_F1(double x, double x_ref, double tol) {
    return std::clamp(1.0 - std::max(0.0, x_ref - x) / tol, 0.0, 1.0);
}

double transfer_F2(double x, double tol) { return std::clamp(1.0 - x / tol, 0.0, 1.0); }

double transfer_F3(double x, double tol) { return tol / (tol + x); }

FitnessVector fitness_vector(const OrderParams& op, const TransferParams& tp,
                             const SimConfig& config) {
    const double n_tol = config.n_agents / 5.0;
    FitnessVector fv;
    fv.f_speed = transfer_F1(op.phi_vel, config.v_flock, tp.v_tol);
    fv.f_coll = transfer_F3(op.phi_coll, tp.a_tol);
    fv.f_wall = transfer_F2(op.phi_wall, tp.r_tol);
    fv.f_corr = std::max(0.0, op.phi_corr);
    fv.f_disc = transfer_F3(op.phi_disc, n_tol);
    // connectivity deficit: phi_cluster measures minimum connectivity,
    // the penalty transfer applies to how far it falls short of N-1
    fv.f_cluster = transfer_F3((config.n_agents - 1) - op.phi_cluster, n_tol);
    return fv;
}

ReducedObjectives reduce_objectives(const FitnessVector& fv) {
    return {fv.f_wall * fv.f_speed, fv.f_corr * fv.f_coll * fv.f_disc * fv.f_cluster};
}

}  // namespace flockopt
