// Copyright 2026 The cvforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef _CVFORGE_GAUSSIAN_H
#define _CVFORGE_GAUSSIAN_H

#include <Eigen/Dense>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "cvforge/lattice.h"

namespace cvforge {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Quad : uint8_t { kX = 0, kP = 1 };

/// Position of quadrature q of mode `mode` in the xx..pp ordering.
inline size_t quad_index(size_t mode, Quad q, size_t num_modes) {
    return q == Quad::kX ? mode : num_modes + mode;
}

/// Block form [[0, I], [-I, 0]].
Eigen::MatrixXd symplectic_form(size_t num_modes);

/// Linear phase-space map acting on a few modes, or a relabeling of all modes.
///
/// A local op stores a 2k x 2k matrix over (x_s1..x_sk, p_s1..p_sk) for its
/// support s. Everything outside the support is left alone, so the same op
/// applies to registers of any size that contain the support.
class SymplecticOp {
   public:
    static SymplecticOp local(std::vector<size_t> support, Eigen::MatrixXd matrix);
    /// target[i] is the new index of mode i.
    static SymplecticOp permutation(std::vector<size_t> target);

    bool is_permutation() const {
        return is_permutation_;
    }
    const std::vector<size_t> &support() const {
        return support_;
    }
    const Eigen::MatrixXd &local_matrix() const {
        return matrix_;
    }
    const std::vector<size_t> &targets() const {
        return targets_;
    }

    /// Full 2M x 2M matrix. Intended for verification, not for simulation.
    Eigen::MatrixXd dense(size_t num_modes) const;

    /// max |S Omega S^T - Omega| over the stored block.
    double symplectic_defect() const;

   private:
    bool is_permutation_ = false;
    std::vector<size_t> support_;
    Eigen::MatrixXd matrix_;
    std::vector<size_t> targets_;
};

/// Squeezes x_i - x_j and p_i + p_j: var(x_i - x_j) = exp(-2 r) on vacuum.
SymplecticOp two_mode_squeeze(size_t i, size_t j, double r);

/// Two-mode squeezer with separate strengths for the difference-x
/// correlation (r_x) and the sum-p correlation (r_p). Equal strengths
/// reproduce two_mode_squeeze(i, j, r).
SymplecticOp two_mode_squeeze(size_t i, size_t j, double r_x, double r_p);

/// Balanced beamsplitter: a_i' = (a_i - a_j)/sqrt2, a_j' = (a_i + a_j)/sqrt2.
SymplecticOp beamsplitter(size_t i, size_t j);

/// x' = x cos(phi) - p sin(phi), p' = x sin(phi) + p cos(phi).
SymplecticOp phase_rotate(size_t i, double phi);

/// Product of two local ops: applying the result equals applying `first` then `second`.
SymplecticOp compose(const SymplecticOp &first, const SymplecticOp &second);

struct DelayRelabel {
    SymplecticOp op;
    /// Destination indices of modes pushed past the last bin. They wrap into the
    /// first dk bins, which the registry already flags as edge.
    std::vector<size_t> wrapped;
};

/// Shifts the bin label of every (field, nopa) mode by dk >= 1.
DelayRelabel delay_relabel(const ModeRegistry &registry, Field field, Nopa nopa, int dk);

class GaussianState {
   public:
    GaussianState() = default;
    GaussianState(ModeRegistry registry, Eigen::VectorXd mean, RowMatrix cov);
    static GaussianState vacuum(ModeRegistry registry);

    size_t num_modes() const {
        return registry_.size();
    }
    const ModeRegistry &registry() const {
        return registry_;
    }
    const Eigen::VectorXd &mean() const {
        return mean_;
    }
    const RowMatrix &cov() const {
        return cov_;
    }
    size_t index(const ModeId &id) const {
        return registry_.index(id);
    }

    /// Applies op in place; only rows and columns in the op's support are touched.
    void apply(const SymplecticOp &op);
    void displace(size_t mode, double dx, double dp);
    /// Replaces the label set while keeping the numbers (used by basis changes).
    void relabel(ModeRegistry registry);

   private:
    ModeRegistry registry_;
    Eigen::VectorXd mean_;
    RowMatrix cov_;
};

GaussianState apply(GaussianState state, const SymplecticOp &op);
GaussianState displace(GaussianState state, const ModeId &mode, double dx, double dp);

struct QuadTerm {
    ModeId mode;
    Quad quad;
    double coeff;
};
using QuadCombination = std::vector<QuadTerm>;

/// c^T cov c for the sparse vector c. Throws std::out_of_range on an unknown mode
/// and std::invalid_argument on an empty combination.
double quadrature_variance(const GaussianState &state, const QuadCombination &c);
double quadrature_covariance(const GaussianState &state, const QuadCombination &a, const QuadCombination &b);
double quadrature_mean(const GaussianState &state, const QuadCombination &c);

class DegenerateMeasurement : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct HomodyneResult {
    GaussianState state;
    double value = 0;
    double marginal_mean = 0;
    double marginal_variance = 0;
};

/// Measures x cos(theta) + p sin(theta) on `mode` and removes it from the register.
/// With no outcome the value is drawn from the marginal normal using `rng`.
HomodyneResult homodyne(
    const GaussianState &state,
    const ModeId &mode,
    double theta,
    std::optional<double> outcome,
    std::mt19937_64 *rng = nullptr);

/// Partial trace over one mode.
GaussianState discard(const GaussianState &state, const ModeId &mode);

/// Symplectic eigenvalues in ascending order (one per mode).
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd &cov);
Eigen::VectorXd symplectic_eigenvalues(const GaussianState &state);

/// max_k |nu_k - 1/2|.
double purity_defect(const GaussianState &state);

}  // namespace cvforge

#endif
