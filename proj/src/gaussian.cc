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


#include "cvforge/gaussian.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "cvforge/simd/kernels.h"
#include "cvforge/tolerances.h"

namespace cvforge {

Eigen::MatrixXd symplectic_form(size_t num_modes) {
    const auto m = static_cast<Eigen::Index>(num_modes);
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    omega.topRightCorner(m, m).setIdentity();
    omega.bottomLeftCorner(m, m) = -Eigen::MatrixXd::Identity(m, m);
    return omega;
}

SymplecticOp SymplecticOp::local(std::vector<size_t> support, Eigen::MatrixXd matrix) {
    const size_t k = support.size();
    if (k == 0) {
        throw std::invalid_argument("SymplecticOp: empty support");
    }
    if (2 * k > simd::kMaxMix) {
        throw std::invalid_argument("SymplecticOp: local ops act on at most 4 modes");
    }
    if (std::set<size_t>(support.begin(), support.end()).size() != k) {
        throw std::invalid_argument("SymplecticOp: repeated mode in support");
    }
    if (matrix.rows() != static_cast<Eigen::Index>(2 * k) || matrix.cols() != static_cast<Eigen::Index>(2 * k)) {
        throw std::invalid_argument("SymplecticOp: matrix must be 2k x 2k for k support modes");
    }
    SymplecticOp op;
    op.support_ = std::move(support);
    op.matrix_ = std::move(matrix);
    return op;
}

SymplecticOp SymplecticOp::permutation(std::vector<size_t> target) {
    std::vector<bool> hit(target.size(), false);
    for (size_t t : target) {
        if (t >= target.size() || hit[t]) {
            throw std::invalid_argument("SymplecticOp: permutation target is not a bijection");
        }
        hit[t] = true;
    }
    SymplecticOp op;
    op.is_permutation_ = true;
    op.targets_ = std::move(target);
    return op;
}

Eigen::MatrixXd SymplecticOp::dense(size_t num_modes) const {
    const auto m = static_cast<Eigen::Index>(num_modes);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    if (is_permutation_) {
        if (targets_.size() != num_modes) {
            throw std::invalid_argument("SymplecticOp::dense: permutation size mismatch");
        }
        for (size_t i = 0; i < num_modes; i++) {
            s(targets_[i], i) = 1;
            s(num_modes + targets_[i], num_modes + i) = 1;
        }
        return s;
    }
    s.setIdentity();
    const size_t k = support_.size();
    std::vector<size_t> idx(2 * k);
    for (size_t a = 0; a < k; a++) {
        if (support_[a] >= num_modes) {
            throw std::invalid_argument("SymplecticOp::dense: support exceeds register");
        }
        idx[a] = support_[a];
        idx[k + a] = num_modes + support_[a];
    }
    for (size_t a = 0; a < 2 * k; a++) {
        for (size_t b = 0; b < 2 * k; b++) {
            s(idx[a], idx[b]) = matrix_(a, b);
        }
    }
    return s;
}

double SymplecticOp::symplectic_defect() const {
    if (is_permutation_) {
        return 0.0;
    }
    Eigen::MatrixXd omega = symplectic_form(support_.size());
    return (matrix_ * omega * matrix_.transpose() - omega).cwiseAbs().maxCoeff();
}

namespace {

void check_real(double v, const char *what) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

}  // namespace

SymplecticOp two_mode_squeeze(size_t i, size_t j, double r) {
    return two_mode_squeeze(i, j, r, r);
}

SymplecticOp two_mode_squeeze(size_t i, size_t j, double r_x, double r_p) {
    check_real(r_x, "squeezing");
    check_real(r_p, "squeezing");
    if (r_x < 0 || r_p < 0) {
        throw std::invalid_argument("two_mode_squeeze: negative squeezing parameter");
    }
    if (i == j) {
        throw std::invalid_argument("two_mode_squeeze: modes must differ");
    }
    // In the (a_i +- a_j)/sqrt2 basis this is two single-mode squeezers:
    // x_- scaled by e^{-r_x} (p_- by e^{r_x}) and p_+ by e^{-r_p} (x_+ by e^{r_p}).
    double xs = 0.5 * (std::exp(r_p) + std::exp(-r_x));
    double xd = 0.5 * (std::exp(r_p) - std::exp(-r_x));
    double ps = 0.5 * (std::exp(-r_p) + std::exp(r_x));
    double pd = 0.5 * (std::exp(-r_p) - std::exp(r_x));
    if (r_x == r_p) {
        xs = ps = std::cosh(r_x);
        xd = std::sinh(r_x);
        pd = -xd;
    }
    Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
    s(0, 0) = xs;
    s(0, 1) = xd;
    s(1, 0) = xd;
    s(1, 1) = xs;
    s(2, 2) = ps;
    s(2, 3) = pd;
    s(3, 2) = pd;
    s(3, 3) = ps;
    return SymplecticOp::local({i, j}, s);
}

SymplecticOp beamsplitter(size_t i, size_t j) {
    if (i == j) {
        throw std::invalid_argument("beamsplitter: modes must differ");
    }
    const double h = std::sqrt(0.5);
    Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
    s(0, 0) = h;
    s(0, 1) = -h;
    s(1, 0) = h;
    s(1, 1) = h;
    s.bottomRightCorner<2, 2>() = s.topLeftCorner<2, 2>();
    return SymplecticOp::local({i, j}, s);
}

SymplecticOp phase_rotate(size_t i, double phi) {
    check_real(phi, "phase");
    double c = std::cos(phi);
    double s = std::sin(phi);
    Eigen::Matrix2d m;
    m << c, -s, s, c;
    return SymplecticOp::local({i}, m);
}

SymplecticOp compose(const SymplecticOp &first, const SymplecticOp &second) {
    if (first.is_permutation() || second.is_permutation()) {
        throw std::invalid_argument("compose: only local ops can be composed");
    }
    std::vector<size_t> support = first.support();
    for (size_t m : second.support()) {
        if (std::find(support.begin(), support.end(), m) == support.end()) {
            support.push_back(m);
        }
    }
    const size_t k = support.size();
    if (2 * k > simd::kMaxMix) {
        throw std::invalid_argument("compose: combined support exceeds 4 modes");
    }
    auto embed = [&](const SymplecticOp &op) {
        Eigen::MatrixXd e = Eigen::MatrixXd::Identity(2 * k, 2 * k);
        const size_t ko = op.support().size();
        std::vector<size_t> pos(2 * ko);
        for (size_t a = 0; a < ko; a++) {
            size_t p = std::find(support.begin(), support.end(), op.support()[a]) - support.begin();
            pos[a] = p;
            pos[ko + a] = k + p;
        }
        for (size_t a = 0; a < 2 * ko; a++) {
            for (size_t b = 0; b < 2 * ko; b++) {
                e(pos[a], pos[b]) = op.local_matrix()(a, b);
            }
        }
        return e;
    };
    return SymplecticOp::local(support, embed(second) * embed(first));
}

DelayRelabel delay_relabel(const ModeRegistry &registry, Field field, Nopa nopa, int dk) {
    if (dk < 1) {
        throw std::invalid_argument("delay_relabel: shift must be >= 1, got " + std::to_string(dk));
    }
    int n_bins = 0;
    for (const ModeId &id : registry.modes()) {
        if (id.field == field && id.nopa == nopa) {
            n_bins = std::max(n_bins, id.bin + 1);
        }
    }
    std::vector<size_t> target(registry.size());
    DelayRelabel out;
    for (size_t i = 0; i < registry.size(); i++) {
        ModeId id = registry.mode(i);
        target[i] = i;
        if (id.field != field || id.nopa != nopa) {
            continue;
        }
        int shifted = id.bin + dk;
        bool wraps = shifted >= n_bins;
        id.bin = shifted % n_bins;
        target[i] = registry.index(id);
        if (wraps) {
            out.wrapped.push_back(target[i]);
        }
    }
    std::sort(out.wrapped.begin(), out.wrapped.end());
    out.op = SymplecticOp::permutation(std::move(target));
    return out;
}

GaussianState::GaussianState(ModeRegistry registry, Eigen::VectorXd mean, RowMatrix cov)
    : registry_(std::move(registry)), mean_(std::move(mean)), cov_(std::move(cov)) {
    const auto n = static_cast<Eigen::Index>(2 * registry_.size());
    if (mean_.size() != n || cov_.rows() != n || cov_.cols() != n) {
        throw std::invalid_argument("GaussianState: mean/cov dimensions do not match the registry");
    }
    if (n > 0 && (cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > tol::kSymmetry) {
        throw std::invalid_argument("GaussianState: covariance is not symmetric");
    }
}

GaussianState GaussianState::vacuum(ModeRegistry registry) {
    if (registry.empty()) {
        throw std::invalid_argument("vacuum: empty registry");
    }
    const auto n = static_cast<Eigen::Index>(2 * registry.size());
    RowMatrix cov = RowMatrix::Identity(n, n) * 0.5;
    return GaussianState(std::move(registry), Eigen::VectorXd::Zero(n), std::move(cov));
}

void GaussianState::apply(const SymplecticOp &op) {
    const size_t m = num_modes();
    const size_t n = 2 * m;
    if (op.is_permutation()) {
        const auto &target = op.targets();
        if (target.size() != m) {
            throw std::invalid_argument("apply: permutation size does not match register");
        }
        std::vector<size_t> source(n);
        for (size_t i = 0; i < m; i++) {
            source[target[i]] = i;
            source[m + target[i]] = m + i;
        }
        RowMatrix next(n, n);
        Eigen::VectorXd next_mean(n);
        for (size_t r = 0; r < n; r++) {
            next_mean[r] = mean_[source[r]];
            const double *src = cov_.data() + source[r] * n;
            double *dst = next.data() + r * n;
            for (size_t c = 0; c < n; c++) {
                dst[c] = src[source[c]];
            }
        }
        cov_ = std::move(next);
        mean_ = std::move(next_mean);
        return;
    }

    const auto &support = op.support();
    const size_t k = support.size();
    for (size_t s : support) {
        if (s >= m) {
            throw std::invalid_argument("apply: op touches mode " + std::to_string(s) + " outside a register of " +
                                        std::to_string(m) + " modes");
        }
    }
    const size_t t = 2 * k;
    size_t idx[simd::kMaxMix];
    for (size_t a = 0; a < k; a++) {
        idx[a] = support[a];
        idx[k + a] = m + support[a];
    }
    const Eigen::MatrixXd &s = op.local_matrix();
    double coef[simd::kMaxMix * simd::kMaxMix];
    for (size_t a = 0; a < t; a++) {
        for (size_t b = 0; b < t; b++) {
            coef[a * t + b] = s(a, b);
        }
    }

    Eigen::MatrixXd block(t, t);
    Eigen::VectorXd mu(t);
    for (size_t a = 0; a < t; a++) {
        mu[a] = mean_[idx[a]];
        for (size_t b = 0; b < t; b++) {
            block(a, b) = cov_(idx[a], idx[b]);
        }
    }
    Eigen::VectorXd new_mu = s * mu;
    for (size_t a = 0; a < t; a++) {
        mean_[idx[a]] = new_mu[a];
    }

    // Rows of S*cov, then mirror them into the columns. Entries inside the
    // touched block get S*block*S^T computed separately and symmetrized.
    double *rows[simd::kMaxMix];
    for (size_t a = 0; a < t; a++) {
        rows[a] = cov_.data() + idx[a] * n;
    }
    simd::active_kernels().mix_rows(coef, t, rows, n);
    for (size_t a = 0; a < t; a++) {
        const double *row = rows[a];
        const size_t col = idx[a];
        for (size_t r = 0; r < n; r++) {
            cov_(r, col) = row[r];
        }
    }
    Eigen::MatrixXd nb = s * block * s.transpose();
    for (size_t a = 0; a < t; a++) {
        for (size_t b = a; b < t; b++) {
            double v = 0.5 * (nb(a, b) + nb(b, a));
            cov_(idx[a], idx[b]) = v;
            cov_(idx[b], idx[a]) = v;
        }
    }
}

void GaussianState::displace(size_t mode, double dx, double dp) {
    if (mode >= num_modes()) {
        throw std::out_of_range("displace: mode index out of range");
    }
    mean_[mode] += dx;
    mean_[num_modes() + mode] += dp;
}

void GaussianState::relabel(ModeRegistry registry) {
    if (registry.size() != registry_.size()) {
        throw std::invalid_argument("relabel: registry size mismatch");
    }
    registry_ = std::move(registry);
}

GaussianState apply(GaussianState state, const SymplecticOp &op) {
    state.apply(op);
    return state;
}

GaussianState displace(GaussianState state, const ModeId &mode, double dx, double dp) {
    state.displace(state.index(mode), dx, dp);
    return state;
}

namespace {

struct Resolved {
    std::vector<size_t> idx;
    std::vector<double> coeff;
};

Resolved resolve(const GaussianState &state, const QuadCombination &c) {
    if (c.empty()) {
        throw std::invalid_argument("quadrature combination is empty");
    }
    Resolved out;
    const size_t m = state.num_modes();
    for (const QuadTerm &term : c) {
        out.idx.push_back(quad_index(state.index(term.mode), term.quad, m));
        out.coeff.push_back(term.coeff);
    }
    return out;
}

}  // namespace

double quadrature_covariance(const GaussianState &state, const QuadCombination &a, const QuadCombination &b) {
    Resolved ra = resolve(state, a);
    Resolved rb = resolve(state, b);
    const RowMatrix &cov = state.cov();
    double total = 0;
    for (size_t i = 0; i < ra.idx.size(); i++) {
        double row = 0;
        for (size_t j = 0; j < rb.idx.size(); j++) {
            row += cov(ra.idx[i], rb.idx[j]) * rb.coeff[j];
        }
        total += ra.coeff[i] * row;
    }
    return total;
}

double quadrature_variance(const GaussianState &state, const QuadCombination &c) {
    return quadrature_covariance(state, c, c);
}

double quadrature_mean(const GaussianState &state, const QuadCombination &c) {
    Resolved r = resolve(state, c);
    double total = 0;
    for (size_t i = 0; i < r.idx.size(); i++) {
        total += r.coeff[i] * state.mean()[r.idx[i]];
    }
    return total;
}

namespace {

/// Copy of the state without the x and p rows/columns of `mode`.
GaussianState drop_mode(const ModeRegistry &registry, const Eigen::VectorXd &mean, const RowMatrix &cov, size_t mode) {
    const size_t m = registry.size();
    const size_t n = 2 * m;
    std::vector<size_t> keep;
    keep.reserve(n - 2);
    for (size_t i = 0; i < n; i++) {
        if (i != mode && i != m + mode) {
            keep.push_back(i);
        }
    }
    const size_t nk = keep.size();
    RowMatrix out(nk, nk);
    Eigen::VectorXd out_mean(nk);
    for (size_t r = 0; r < nk; r++) {
        out_mean[r] = mean[keep[r]];
        const double *src = cov.data() + keep[r] * n;
        double *dst = out.data() + r * nk;
        for (size_t c = 0; c < nk; c++) {
            dst[c] = src[keep[c]];
        }
    }
    return GaussianState(registry.without(mode), std::move(out_mean), std::move(out));
}

}  // namespace

HomodyneResult homodyne(
    const GaussianState &state, const ModeId &mode, double theta, std::optional<double> outcome, std::mt19937_64 *rng) {
    check_real(theta, "homodyne angle");
    const size_t m = state.num_modes();
    const size_t n = 2 * m;
    const size_t q = state.index(mode);
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    // v = cov * (c e_x + s e_p); cov is symmetric so rows stand in for columns.
    Eigen::VectorXd v(n);
    const double *rx = state.cov().data() + q * n;
    const double *rp = state.cov().data() + (m + q) * n;
    for (size_t i = 0; i < n; i++) {
        v[i] = c * rx[i] + s * rp[i];
    }
    const double variance = c * v[q] + s * v[m + q];
    if (!(variance >= tol::kDegenerateVariance)) {
        throw DegenerateMeasurement(
            "homodyne: marginal variance " + std::to_string(variance) + " of " + mode.str() + " is degenerate");
    }
    const double mu = c * state.mean()[q] + s * state.mean()[m + q];

    HomodyneResult result;
    result.marginal_mean = mu;
    result.marginal_variance = variance;
    if (outcome.has_value()) {
        check_real(*outcome, "homodyne outcome");
        result.value = *outcome;
    } else {
        if (rng == nullptr) {
            throw std::invalid_argument("homodyne: sampling requested without a random generator");
        }
        std::normal_distribution<double> dist(mu, std::sqrt(variance));
        result.value = dist(*rng);
    }

    Eigen::VectorXd mean = state.mean() + v * ((result.value - mu) / variance);
    RowMatrix cov = state.cov();
    simd::active_kernels().rank1_update(cov.data(), n, n, n, v.data(), v.data(), 1.0 / variance);
    RowMatrix sym = 0.5 * (cov + cov.transpose());
    result.state = drop_mode(state.registry(), mean, sym, q);
    return result;
}

GaussianState discard(const GaussianState &state, const ModeId &mode) {
    return drop_mode(state.registry(), state.mean(), state.cov(), state.index(mode));
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd &cov) {
    const auto n = cov.rows();
    if (n % 2 != 0 || cov.cols() != n) {
        throw std::invalid_argument("symplectic_eigenvalues: covariance must be 2M x 2M");
    }
    const auto m = n / 2;
    // K = cov^1/2 Omega cov^1/2 is antisymmetric and -K^2 = K^T K has each
    // nu_k^2 twice. Symmetric solvers keep the degenerate pure-state spectrum
    // accurate where a general eigensolver on Omega cov does not.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> root(cov);
    if (root.eigenvalues().minCoeff() < 0) {
        throw std::invalid_argument("symplectic_eigenvalues: covariance is not positive semidefinite");
    }
    Eigen::MatrixXd half = root.operatorSqrt();
    Eigen::MatrixXd k = half * symplectic_form(m) * half;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(k.transpose() * k, Eigen::EigenvaluesOnly);
    std::vector<double> mags;
    mags.reserve(n);
    for (Eigen::Index i = 0; i < n; i++) {
        mags.push_back(std::sqrt(std::max(0.0, solver.eigenvalues()[i])));
    }
    std::sort(mags.begin(), mags.end());
    Eigen::VectorXd nu(m);
    for (Eigen::Index i = 0; i < m; i++) {
        nu[i] = 0.5 * (mags[2 * i] + mags[2 * i + 1]);
    }
    return nu;
}

Eigen::VectorXd symplectic_eigenvalues(const GaussianState &state) {
    return symplectic_eigenvalues(Eigen::MatrixXd(state.cov()));
}

double purity_defect(const GaussianState &state) {
    Eigen::VectorXd nu = symplectic_eigenvalues(state);
    return (nu.array() - 0.5).abs().maxCoeff();
}

}  // namespace cvforge
