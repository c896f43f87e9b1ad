#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "flockopt/flock_params.hpp"
#include "flockopt/metrics.hpp"
#include "flockopt/sim_config.hpp"

namespace flockopt {

// Column order matches the objective naming used throughout the reports.
inline const std::array<std::string, 6> kObjectiveNames = {"wall", "speed", "corr",
                                                           "coll", "disc", "cluster"};

struct DesignMatrix {
    std::vector<std::array<double, 6>> rows;
    std::array<double, 6> means{};
    std::array<double, 6> stddevs{};  // population (1/n) standard deviations
};

using Matrix6 = std::array<std::array<double, 6>, 6>;

struct PcaResult {
    Matrix6 covariance{};
    std::array<double, 6> eigenvalues{};
    Matrix6 eigenvectors{};  // columns are eigenvectors, descending eigenvalue
    std::array<double, 6> first_component{};
    std::vector<int> group_a;  // contains the wall objective
    std::vector<int> group_b;
};

std::array<double, 6> to_row(const FitnessVector& fv);

// n uniform parameter draws in the bounds box, one simulation each.
DesignMatrix sample_random_runs(int n, const ParamBounds& bounds, const SimConfig& config,
                                const TransferParams& tp, std::uint64_t master_seed,
                                int jobs = 1);

// Centers each column and scales it to unit population standard
// deviation. Fills means/stddevs with the pre-normalization statistics.
DesignMatrix normalize(const DesignMatrix& x);

// K = (1/(n-1)) Xnorm^T Xnorm, symmetrized. With population-std
// normalization the diagonal is n/(n-1).
Matrix6 covariance(const DesignMatrix& xnorm);

// Cyclic Jacobi spectral decomposition for symmetric matrices.
// Eigenvalues descending; each eigenvector's first nonzero entry positive.
void jacobi_eigen(std::vector<std::vector<double>>& a, std::vector<double>& eigenvalues,
                  std::vector<std::vector<double>>& eigenvectors);

void eigen_decompose(const Matrix6& k, std::array<double, 6>& eigenvalues,
                     Matrix6& eigenvectors);

// Splits objective indices by the sign of the first component; the group
// containing the wall objective (index 0) comes first.
void partition_objectives(const std::array<double, 6>& w, std::vector<int>& group_a,
                          std::vector<int>& group_b);

PcaResult run_pca(const DesignMatrix& x);

}  // namespace flockopt
