#include "flockopt/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flockopt/errors.hpp"
#include "flockopt/parallel.hpp"
#include "flockopt/rng.hpp"
#include "flockopt/sim.hpp"

namespace flockopt {

std::array<double, 6> to_row(const FitnessVector& fv) {
    return {fv.f_wall, fv.f_speed, fv.f_corr, fv.f_coll, fv.f_disc, fv.f_cluster};
}

DesignMatrix sample_random_runs(int n, const ParamBounds& bounds, const SimConfig& config,
                                const TransferParams& tp, std::uint64_t master_seed,
                                int jobs) {
    if (n < 1) throw ConfigError("sample count must be >= 1");
    DesignMatrix dm;
    dm.rows.resize(n);

    parallel_for(n, jobs, [&](int i) {
        // up to 3 attempts per row; fresh seed substream on divergence
        for (int attempt = 0;; ++attempt) {
            std::uint64_t s =
                substream_seed(master_seed, static_cast<std::uint64_t>(i) * 4 + attempt);
            Rng draw(s);
            std::array<double, FlockParams::kDim> genome;
            for (std::size_t d = 0; d < FlockParams::kDim; ++d)
                genome[d] = draw.uniform(bounds.lower[d], bounds.upper[d]);
            SimConfig cfg = config;
            cfg.seed = splitmix64(s);
            try {
                FlockParams params = FlockParams::from_array(genome);
                SimLog log = run_simulation(params, cfg);
                dm.rows[i] = to_row(fitness_vector(order_params(log, cfg, params), tp, cfg));
                return;
            } catch (const SimulationDiverged&) {
                if (attempt >= 2) throw;
            }
        }
    });
    return dm;
}

DesignMatrix normalize(const DesignMatrix& x) {
    const int n = static_cast<int>(x.rows.size());
    if (n < 2) throw ConfigError("need at least 2 samples to normalize");
    DesignMatrix out = x;
    for (int j = 0; j < 6; ++j) {
        double mean = 0.0;
        for (const auto& r : x.rows) mean += r[j];
        mean /= n;
        double var = 0.0;
        for (const auto& r : x.rows) var += (r[j] - mean) * (r[j] - mean);
        var /= n;  // population variance
        double sd = std::sqrt(var);
        if (sd < 1e-15)
            throw DegenerateColumn("zero-variance objective column: " + kObjectiveNames[j]);
        out.means[j] = mean;
        out.stddevs[j] = sd;
        for (auto& r : out.rows) r[j] = (r[j] - mean) / sd;
    }
    return out;
}

Matrix6 covariance(const DesignMatrix& xnorm) {
    const int n = static_cast<int>(xnorm.rows.size());
    Matrix6 k{};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            double s = 0.0;
            for (const auto& r : xnorm.rows) s += r[i] * r[j];
            k[i][j] = s / (n - 1);
        }
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            double v = 0.5 * (k[i][j] + k[j][i]);
            k[i][j] = v;
            k[j][i] = v;
        }
    return k;
}

void jacobi_eigen(std::vector<std::vector<double>>& a, std::vector<double>& eigenvalues,
                  std::vector<std::vector<double>>& eigenvectors) {
    const int n = static_cast<int>(a.size());
    eigenvectors.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) eigenvectors[i][i] = 1.0;

    double norm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) norm += a[i][j] * a[i][j];
    norm = std::sqrt(norm);
    const double tol = 1e-12 * std::max(norm, 1e-300);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += 2.0 * a[i][j] * a[i][j];
        if (std::sqrt(off) < tol) break;
        if (sweep == 99) throw NumericalFailure("jacobi eigensolver did not converge");

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                for (int i = 0; i < n; ++i) {
                    double aip = a[i][p], aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    double api = a[p][i], aqi = a[q][i];
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
                for (int i = 0; i < n; ++i) {
                    double vip = eigenvectors[i][p], viq = eigenvectors[i][q];
                    eigenvectors[i][p] = c * vip - s * viq;
                    eigenvectors[i][q] = s * vip + c * viq;
                }
            }
        }
    }

    eigenvalues.resize(n);
    for (int i = 0; i < n; ++i) eigenvalues[i] = a[i][i];

    // sort descending, canonicalize sign
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return eigenvalues[x] > eigenvalues[y]; });
    std::vector<double> ev(n);
    std::vector<std::vector<double>> vecs(n, std::vector<double>(n));
    for (int k = 0; k < n; ++k) {
        ev[k] = eigenvalues[order[k]];
        for (int i = 0; i < n; ++i) vecs[i][k] = eigenvectors[i][order[k]];
        for (int i = 0; i < n; ++i) {
            if (std::abs(vecs[i][k]) > 1e-12) {
                if (vecs[i][k] < 0.0)
                    for (int r = 0; r < n; ++r) vecs[r][k] = -vecs[r][k];
                break;
            }
        }
    }
    eigenvalues = std::move(ev);
    eigenvectors = std::move(vecs);
}

void eigen_decompose(const Matrix6& k, std::array<double, 6>& eigenvalues,
                     Matrix6& eigenvectors) {
    std::vector<std::vector<double>> a(6, std::vector<double>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) a[i][j] = k[i][j];
    std::vector<double> ev;
    std::vector<std::vector<double>> vecs;
    jacobi_eigen(a, ev, vecs);
    for (int i = 0; i < 6; ++i) {
        eigenvalues[i] = ev[i];
        for (int j = 0; j < 6; ++j) eigenvectors[i][j] = vecs[i][j];
    }
}

void partition_objectives(const std::array<double, 6>& w, std::vector<int>& group_a,
                          std::vector<int>& group_b) {
    std::vector<int> pos, neg;
    for (int j = 0; j < 6; ++j) {
        if (std::abs(w[j]) <= 1e-9)
            throw AmbiguousPartition("near-zero first-component entry for objective: " +
                                     kObjectiveNames[j]);
        (w[j] > 0.0 ? pos : neg).push_back(j);
    }
    if (pos.empty() || neg.empty())
        throw AmbiguousPartition("first component has a single sign; no partition");
    // wall (index 0) designates group A
    bool wall_positive = std::find(pos.begin(), pos.end(), 0) != pos.end();
    group_a = wall_positive ? pos : neg;
    group_b = wall_positive ? neg : pos;
}

PcaResult run_pca(const DesignMatrix& x) {
    PcaResult res;
    DesignMatrix xn = normalize(x);
    res.covariance = covariance(xn);
    eigen_decompose(res.covariance, res.eigenvalues, res.eigenvectors);
    for (int i = 0; i < 6; ++i) res.first_component[i] = res.eigenvectors[i][0];
    partition_objectives(res.first_component, res.group_a, res.group_b);
    return res;
}

}  // namespace flockopt
