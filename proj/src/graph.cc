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


#include "cvforge/graph.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "cvforge/io.h"
#include "cvforge/tolerances.h"

namespace cvforge {

namespace {

void relabel_graph(Eigen::MatrixXd &g, const std::vector<size_t> &target) {
    const size_t m = target.size();
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(g.rows(), g.cols());
    for (size_t i = 0; i < m; i++) {
        for (size_t j = 0; j < m; j++) {
            next(target[i], target[j]) = g(i, j);
        }
    }
    g = std::move(next);
}

void check_trace_modes(const TraceOp &op, size_t num_modes) {
    for (size_t m : op.modes) {
        if (m >= num_modes) {
            throw std::invalid_argument("trace references mode " + std::to_string(m) + " beyond " +
                                        std::to_string(num_modes) + " registered modes");
        }
    }
    if (op.kind == OpKind::kDelay && op.modes.size() != num_modes) {
        throw std::invalid_argument("trace delay permutation does not cover the register");
    }
}

}  // namespace

HGraph hgraph_from_trace(const PipelineTrace &trace, size_t num_modes, const std::string &until) {
    if (!until.empty() && !trace.has_checkpoint(until)) {
        throw std::invalid_argument("hgraph_from_trace: no checkpoint named '" + until + "'");
    }
    const auto m = static_cast<Eigen::Index>(num_modes);
    HGraph g{Eigen::MatrixXd::Zero(m, m)};
    for (const TraceOp &op : trace.ops) {
        if (op.kind == OpKind::kCheckpoint && op.label == until) {
            break;
        }
        check_trace_modes(op, num_modes);
        if (op.kind == OpKind::kTwoModeSqueeze) {
            size_t i = op.modes[0];
            size_t j = op.modes[1];
            if (g.adjacency(i, j) != 0) {
                throw std::invalid_argument("hgraph_from_trace: modes " + std::to_string(i) + " and " +
                                            std::to_string(j) + " squeezed twice");
            }
            if (g.adjacency.row(i).cwiseAbs().sum() != 0 || g.adjacency.row(j).cwiseAbs().sum() != 0) {
                throw std::invalid_argument("hgraph_from_trace: conflicting squeezer partners for modes " +
                                            std::to_string(i) + ", " + std::to_string(j));
            }
            g.adjacency(i, j) = 1;
            g.adjacency(j, i) = 1;
        } else if (op.kind == OpKind::kDelay) {
            relabel_graph(g.adjacency, op.modes);
        }
    }
    return g;
}

HGraph propagate_hgraph(const PipelineTrace &trace, size_t num_modes) {
    const auto m = static_cast<Eigen::Index>(num_modes);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
    bool passive_seen = false;
    double strength = -1;
    const double root_half = std::sqrt(0.5);
    for (const TraceOp &op : trace.ops) {
        check_trace_modes(op, num_modes);
        switch (op.kind) {
            case OpKind::kTwoModeSqueeze: {
                if (passive_seen) {
                    throw std::invalid_argument("propagate_hgraph: squeezer after passive network");
                }
                if (op.params[0] != op.params[1] || (strength >= 0 && op.params[0] != strength)) {
                    throw std::invalid_argument("propagate_hgraph: squeezers must share one strength");
                }
                strength = op.params[0];
                h(op.modes[0], op.modes[1]) = 1;
                h(op.modes[1], op.modes[0]) = 1;
                break;
            }
            case OpKind::kBeamsplitter: {
                passive_seen = true;
                // Rows and columns of i, j mix like the amplitudes themselves.
                const size_t i = op.modes[0];
                const size_t j = op.modes[1];
                Eigen::VectorXd ri = h.row(i);
                Eigen::VectorXd rj = h.row(j);
                h.row(i) = root_half * (ri - rj);
                h.row(j) = root_half * (ri + rj);
                Eigen::VectorXd ci = h.col(i);
                Eigen::VectorXd cj = h.col(j);
                h.col(i) = root_half * (ci - cj);
                h.col(j) = root_half * (ci + cj);
                break;
            }
            case OpKind::kPhase: {
                passive_seen = true;
                const double phi = op.params[0];
                if (std::abs(std::sin(phi)) > tol::kStructural) {
                    throw std::invalid_argument("propagate_hgraph: phase is not a multiple of pi");
                }
                const double sign = std::cos(phi) > 0 ? 1.0 : -1.0;
                h.row(op.modes[0]) *= sign;
                h.col(op.modes[0]) *= sign;
                break;
            }
            case OpKind::kDelay:
                passive_seen = true;
                relabel_graph(h, op.modes);
                break;
            case OpKind::kRejectedPair:
            case OpKind::kCheckpoint:
                break;
        }
    }
    return HGraph{std::move(h)};
}

bool check_self_inverse(const HGraph &g) {
    if (g.size() == 0) {
        return false;
    }
    Eigen::MatrixXd sq = g.adjacency * g.adjacency;
    return (sq - Eigen::MatrixXd::Identity(g.adjacency.rows(), g.adjacency.cols())).cwiseAbs().maxCoeff() <=
           tol::kStructural;
}

bool check_self_inverse_on_support(const HGraph &g) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < g.adjacency.rows(); i++) {
        if (g.adjacency.row(i).cwiseAbs().maxCoeff() > tol::kEdgeWeight) {
            keep.push_back(i);
        }
    }
    if (keep.empty()) {
        return false;
    }
    const auto n = static_cast<Eigen::Index>(keep.size());
    Eigen::MatrixXd sub(n, n);
    for (Eigen::Index a = 0; a < n; a++) {
        for (Eigen::Index b = 0; b < n; b++) {
            sub(a, b) = g.adjacency(keep[a], keep[b]);
        }
    }
    // Unpaired rows must really be empty: any coupling into them breaks the block structure.
    Eigen::MatrixXd sq = sub * sub;
    return (sq - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= tol::kStructural;
}

namespace {

std::vector<std::vector<size_t>> neighbor_lists(const Eigen::MatrixXd &w, double threshold) {
    const size_t n = static_cast<size_t>(w.rows());
    std::vector<std::vector<size_t>> nbrs(n);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            if (i != j && std::abs(w(i, j)) > threshold) {
                nbrs[i].push_back(j);
            }
        }
    }
    return nbrs;
}

}  // namespace

BipartiteCheck check_bipartite(const HGraph &g) {
    const size_t n = g.size();
    auto nbrs = neighbor_lists(g.adjacency, tol::kEdgeWeight);
    BipartiteCheck out;
    out.coloring.assign(n, -1);
    std::vector<size_t> parent(n, SIZE_MAX);
    for (size_t root = 0; root < n; root++) {
        if (out.coloring[root] != -1) {
            continue;
        }
        out.coloring[root] = 0;
        std::queue<size_t> q;
        q.push(root);
        while (!q.empty()) {
            size_t u = q.front();
            q.pop();
            for (size_t v : nbrs[u]) {
                if (out.coloring[v] == -1) {
                    out.coloring[v] = 1 - out.coloring[u];
                    parent[v] = u;
                    q.push(v);
                } else if (out.coloring[v] == out.coloring[u]) {
                    // Walk both tree paths up to the common ancestor.
                    std::vector<size_t> pu{u};
                    std::vector<size_t> pv{v};
                    std::set<size_t> seen{u};
                    for (size_t a = u; parent[a] != SIZE_MAX;) {
                        a = parent[a];
                        pu.push_back(a);
                        seen.insert(a);
                    }
                    size_t meet = v;
                    while (!seen.count(meet)) {
                        meet = parent[meet];
                        pv.push_back(meet);
                    }
                    out.odd_cycle.clear();
                    for (size_t a : pu) {
                        out.odd_cycle.push_back(a);
                        if (a == meet) {
                            break;
                        }
                    }
                    for (size_t i = pv.size() - 1; i-- > 0;) {
                        out.odd_cycle.push_back(pv[i]);
                    }
                    out.bipartite = false;
                    return out;
                }
            }
        }
    }
    out.bipartite = true;
    return out;
}

ComplexGraph z_from_hgraph(const HGraph &g, double r) {
    if (!check_self_inverse(g)) {
        throw std::invalid_argument("z_from_hgraph: G is not self-inverse (G^2 != I)");
    }
    if (!check_bipartite(g).bipartite) {
        throw std::invalid_argument("z_from_hgraph: G is not bipartite");
    }
    const auto m = g.adjacency.rows();
    const std::complex<double> i(0, 1);
    ComplexGraph out;
    out.z = i * std::cosh(2 * r) * Eigen::MatrixXcd::Identity(m, m) -
            i * std::sinh(2 * r) * g.adjacency.cast<std::complex<double>>();
    return out;
}

ComplexGraph z_from_state(const GaussianState &state) {
    // Spectrum error grows with the covariance norm, so the tolerance does too.
    const double defect = purity_defect(state);
    const double scale = std::max(1.0, state.cov().cwiseAbs().maxCoeff());
    if (defect > tol::kPhysics * scale) {
        throw std::invalid_argument("z_from_state: state is not pure (symplectic eigenvalue off by " +
                                    format_double(defect) + ")");
    }
    const auto m = static_cast<Eigen::Index>(state.num_modes());
    Eigen::MatrixXd sxx = state.cov().topLeftCorner(m, m);
    Eigen::MatrixXd sxp = state.cov().topRightCorner(m, m);
    Eigen::MatrixXd spp = state.cov().bottomRightCorner(m, m);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(2 * sxx);
    if (!lu.isInvertible()) {
        throw std::invalid_argument("z_from_state: cov_xx is singular");
    }
    Eigen::MatrixXd v = lu.inverse();
    v = 0.5 * (v + v.transpose()).eval();
    Eigen::MatrixXd u = 2 * v * sxp;
    u = 0.5 * (u + u.transpose()).eval();
    // cov_pp = (V + U V^-1 U) / 2 and V^-1 = 2 cov_xx.
    Eigen::MatrixXd rebuilt = 0.5 * (v + u * (2 * sxx) * u);
    const double pp_scale = std::max(1.0, spp.cwiseAbs().maxCoeff());
    if ((rebuilt - spp).cwiseAbs().maxCoeff() > tol::kPhysics * pp_scale) {
        throw std::invalid_argument("z_from_state: cov_pp inconsistent with the recovered Z");
    }
    ComplexGraph out;
    out.z = u.cast<std::complex<double>>() + std::complex<double>(0, 1) * v.cast<std::complex<double>>();
    return out;
}

HGraph support_graph(const ComplexGraph &z) {
    const auto m = z.z.rows();
    HGraph g{Eigen::MatrixXd::Zero(m, m)};
    for (Eigen::Index i = 0; i < m; i++) {
        for (Eigen::Index j = 0; j < m; j++) {
            if (i != j && std::abs(z.z(i, j)) > tol::kEdgeWeight) {
                g.adjacency(i, j) = 1;
            }
        }
    }
    return g;
}

ClusterAdjacency cluster_adjacency(const ComplexGraph &z, const std::vector<size_t> &mask, const HGraph &structure) {
    const auto m = z.z.rows();
    if (structure.adjacency.rows() != m) {
        throw std::invalid_argument("cluster_adjacency: structure graph size mismatch");
    }
    std::vector<bool> in_mask(m, false);
    for (size_t b : mask) {
        if (b >= static_cast<size_t>(m)) {
            throw std::invalid_argument("cluster_adjacency: mask mode out of range");
        }
        in_mask[b] = true;
    }
    for (size_t a : mask) {
        for (size_t b : mask) {
            if (a != b && std::abs(structure.adjacency(a, b)) > tol::kEdgeWeight) {
                throw std::invalid_argument("cluster_adjacency: mask is not an independent set (modes " +
                                            std::to_string(a) + " and " + std::to_string(b) + " are adjacent)");
            }
        }
    }
    std::vector<Eigen::Index> ia;
    std::vector<Eigen::Index> ib;
    for (Eigen::Index i = 0; i < m; i++) {
        (in_mask[i] ? ib : ia).push_back(i);
    }
    const auto na = static_cast<Eigen::Index>(ia.size());
    const auto nb = static_cast<Eigen::Index>(ib.size());
    auto block = [&](const std::vector<Eigen::Index> &r, const std::vector<Eigen::Index> &c) {
        Eigen::MatrixXcd out(r.size(), c.size());
        for (size_t a = 0; a < r.size(); a++) {
            for (size_t b = 0; b < c.size(); b++) {
                out(a, b) = z.z(r[a], c[b]);
            }
        }
        return out;
    };
    Eigen::MatrixXcd zaa = block(ia, ia);
    Eigen::MatrixXcd zab = block(ia, ib);
    Eigen::MatrixXcd zbb = block(ib, ib);
    Eigen::MatrixXcd zbb_inv = nb ? Eigen::MatrixXcd(zbb.fullPivLu().inverse()) : Eigen::MatrixXcd(0, 0);

    // Fourier transform over the mask modes (x_B -> p_B).
    Eigen::MatrixXcd zp(m, m);
    Eigen::MatrixXcd new_aa = zaa - zab * zbb_inv * zab.transpose();
    Eigen::MatrixXcd new_ab = zab * zbb_inv;
    Eigen::MatrixXcd new_bb = -zbb_inv;
    for (Eigen::Index a = 0; a < na; a++) {
        for (Eigen::Index b = 0; b < na; b++) {
            zp(ia[a], ia[b]) = new_aa(a, b);
        }
        for (Eigen::Index b = 0; b < nb; b++) {
            zp(ia[a], ib[b]) = new_ab(a, b);
            zp(ib[b], ia[a]) = new_ab(a, b);
        }
    }
    for (Eigen::Index a = 0; a < nb; a++) {
        for (Eigen::Index b = 0; b < nb; b++) {
            zp(ib[a], ib[b]) = new_bb(a, b);
        }
    }
    ClusterAdjacency out;
    out.weights = zp.real();
    out.weights = 0.5 * (out.weights + out.weights.transpose()).eval();
    out.mask = mask;
    std::sort(out.mask.begin(), out.mask.end());
    out.convention = "mask modes rotated by phase_rotate(-pi/2) (x -> p); weights = Re(Z')";
    return out;
}

ClusterAdjacency cluster_adjacency(const ComplexGraph &z, const std::vector<size_t> &mask) {
    return cluster_adjacency(z, mask, support_graph(z));
}

Eigen::MatrixXd asymptotic_cluster_weights(const HGraph &h, const std::vector<size_t> &mask) {
    const auto m = h.adjacency.rows();
    std::vector<bool> in_mask(m, false);
    for (size_t b : mask) {
        in_mask.at(b) = true;
    }
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; i++) {
        for (Eigen::Index j = 0; j < m; j++) {
            if (in_mask[i] != in_mask[j]) {
                w(i, j) = -h.adjacency(i, j);
            }
        }
    }
    return w;
}

std::vector<size_t> default_rotation_mask(const HGraph &h) {
    BipartiteCheck check = check_bipartite(h);
    if (!check.bipartite) {
        throw std::invalid_argument("default_rotation_mask: graph is not bipartite");
    }
    std::vector<size_t> mask;
    for (size_t i = 0; i < check.coloring.size(); i++) {
        if (check.coloring[i] == 0) {
            mask.push_back(i);
        }
    }
    return mask;
}

double convergence_constant(const Eigen::MatrixXd &weights, const Eigen::MatrixXd &limit, double r) {
    return (weights - limit).cwiseAbs().maxCoeff() * std::exp(2 * r);
}

std::vector<std::vector<size_t>> components(const Eigen::MatrixXd &weights, double threshold, bool keep_isolated) {
    const size_t n = static_cast<size_t>(weights.rows());
    auto nbrs = neighbor_lists(weights, threshold);
    std::vector<bool> seen(n, false);
    std::vector<std::vector<size_t>> out;
    for (size_t root = 0; root < n; root++) {
        if (seen[root]) {
            continue;
        }
        std::vector<size_t> comp;
        std::queue<size_t> q;
        q.push(root);
        seen[root] = true;
        while (!q.empty()) {
            size_t u = q.front();
            q.pop();
            comp.push_back(u);
            for (size_t v : nbrs[u]) {
                if (!seen[v]) {
                    seen[v] = true;
                    q.push(v);
                }
            }
        }
        if (comp.size() > 1 || keep_isolated) {
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
    }
    return out;
}

PortSetReport port_set_connectivity(const PipelineTrace &trace, const Eigen::MatrixXd &weights, double threshold) {
    const size_t n = static_cast<size_t>(weights.rows());
    // Port class per mode: 0 = first output, 1 = second output, -1 = never cross-coupled.
    std::vector<int> port(n, -1);
    for (const TraceOp &op : trace.ops) {
        if (op.kind == OpKind::kBeamsplitter && (op.label == "bs3" || op.label == "bs4")) {
            port.at(op.modes[0]) = 0;
            port.at(op.modes[1]) = 1;
        }
    }
    PortSetReport report;
    report.mode_components = components(weights, threshold).size();
    std::vector<int> parent{0, 1};
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    std::set<int> used;
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            if (std::abs(weights(i, j)) <= threshold || port[i] < 0 || port[j] < 0) {
                continue;
            }
            used.insert(port[i]);
            used.insert(port[j]);
            parent[find(port[i])] = find(port[j]);
        }
    }
    report.port_classes = used.size();
    std::set<int> roots;
    for (int c : used) {
        roots.insert(find(c));
    }
    report.components = roots.size();
    return report;
}

namespace {

struct Range {
    int n_max = 0;
    int n_bins = 0;
};

Range scan(const ModeRegistry &registry, Nopa nopa) {
    Range r{-1, 0};
    for (const ModeId &id : registry.modes()) {
        if (id.nopa == nopa && (id.field == Field::kSignal || id.field == Field::kIdler)) {
            r.n_max = std::max(r.n_max, std::abs(id.freq));
            r.n_bins = std::max(r.n_bins, id.bin + 1);
        }
    }
    return r;
}

bool usable(const ModeRegistry &registry, const QuadCombination &terms) {
    for (const QuadTerm &t : terms) {
        auto idx = registry.find(t.mode);
        if (!idx || registry.is_edge(*idx)) {
            return false;
        }
    }
    return true;
}

std::string tag(const std::string &family, int rail, int k) {
    return family + "[rail=" + std::to_string(rail) + ",k=" + std::to_string(k) + "]";
}

}  // namespace

NullifierSet nullifiers_1d(const ModeRegistry &registry, Nopa nopa, int pump_offset) {
    Range range = scan(registry, nopa);
    NullifierSet set;
    if (range.n_max < 0) {
        return set;
    }
    for (int k = 0; k + 1 < range.n_bins; k++) {
        for (int n = -range.n_max; n <= range.n_max; n++) {
            const int m = pair_partner(n, pump_offset);
            if (std::abs(m) > range.n_max) {
                continue;
            }
            auto s = [&](int line, int bin) { return ModeId{nopa, Field::kSignal, line, bin}; };
            auto i = [&](int line, int bin) { return ModeId{nopa, Field::kIdler, line, bin}; };
            const int rail = (k % 2 == 0) ? n : m;
            Nullifier nx{tag("x", rail, k), "x", k, rail,
                         {{s(n, k), Quad::kX, 1}, {i(n, k), Quad::kX, 1}, {s(m, k + 1), Quad::kX, -1},
                          {i(m, k + 1), Quad::kX, 1}}};
            Nullifier np{tag("p", rail, k), "p", k, rail,
                         {{s(n, k), Quad::kP, -1}, {i(n, k), Quad::kP, -1}, {s(m, k + 1), Quad::kP, -1},
                          {i(m, k + 1), Quad::kP, 1}}};
            if (usable(registry, nx.terms) && usable(registry, np.terms)) {
                set.items.push_back(std::move(nx));
                set.items.push_back(std::move(np));
            }
        }
    }
    return set;
}

NullifierSet nullifiers_3d_at(const ModeRegistry &registry, int a, int b, int c, int k2) {
    if (a + b != 1 || a + c != -1) {
        throw std::invalid_argument("nullifiers_3d: frequency triple (" + std::to_string(a) + "," + std::to_string(b) +
                                    "," + std::to_string(c) + ") violates a+b=1, a+c=-1");
    }
    if (k2 % 2 != 0) {
        throw std::invalid_argument("nullifiers_3d: bin must be even, got " + std::to_string(k2));
    }
    auto quad = [](int line, int bin, Quad q, const int (&signs)[4]) {
        QuadCombination out;
        const ModeId ids[4] = {{Nopa::kN1, Field::kSignal, line, bin},
                               {Nopa::kN1, Field::kIdler, line, bin},
                               {Nopa::kN2, Field::kSignal, line, bin},
                               {Nopa::kN2, Field::kIdler, line, bin}};
        for (int t = 0; t < 4; t++) {
            out.push_back({ids[t], q, static_cast<double>(signs[t])});
        }
        return out;
    };
    auto join = [](QuadCombination lhs, const QuadCombination &rhs) {
        lhs.insert(lhs.end(), rhs.begin(), rhs.end());
        return lhs;
    };
    const int k = k2 / 2;
    NullifierSet set;
    set.items.push_back({tag("x1", a, k2), "x1", k, a,
                         join(quad(a, k2, Quad::kX, {1, 1, 1, 1}), quad(b, k2 + 1, Quad::kX, {-1, 1, -1, 1}))});
    set.items.push_back({tag("p1", a, k2), "p1", k, a,
                         join(quad(a, k2, Quad::kP, {-1, -1, -1, -1}), quad(b, k2 + 1, Quad::kP, {-1, 1, -1, 1}))});
    set.items.push_back({tag("x2", a, k2), "x2", k, a,
                         join(quad(a, k2, Quad::kX, {-1, -1, 1, 1}), quad(c, k2 + 1, Quad::kX, {-1, 1, 1, -1}))});
    set.items.push_back({tag("p2", a, k2), "p2", k, a,
                         join(quad(a, k2, Quad::kP, {1, 1, -1, -1}), quad(c, k2 + 1, Quad::kP, {-1, 1, 1, -1}))});
    for (const Nullifier &n : set.items) {
        if (!usable(registry, n.terms)) {
            throw std::invalid_argument("nullifiers_3d: " + n.name + " references an edge or unknown mode");
        }
    }
    return set;
}

NullifierSet nullifiers_3d(const ModeRegistry &registry) {
    Range range = scan(registry, Nopa::kN1);
    NullifierSet set;
    for (int k2 = 2; k2 + 1 < range.n_bins; k2 += 2) {
        for (int a = -range.n_max; a <= range.n_max; a++) {
            const int b = 1 - a;
            const int c = -1 - a;
            if (std::abs(b) > range.n_max || std::abs(c) > range.n_max) {
                continue;
            }
            NullifierSet part = nullifiers_3d_at(registry, a, b, c, k2);
            for (Nullifier &n : part.items) {
                set.items.push_back(std::move(n));
            }
        }
    }
    return set;
}

std::string edges_to_csv(const Eigen::MatrixXd &weights, const ModeRegistry &registry, double threshold) {
    std::ostringstream out;
    out << "mode_a,mode_b,weight\n";
    for (Eigen::Index i = 0; i < weights.rows(); i++) {
        for (Eigen::Index j = i + 1; j < weights.cols(); j++) {
            if (std::abs(weights(i, j)) > threshold) {
                out << registry.mode(i).str() << ',' << registry.mode(j).str() << ',' << format_double(weights(i, j))
                    << '\n';
            }
        }
    }
    return out.str();
}

nlohmann::json adjacency_to_json(const Eigen::MatrixXd &weights, const ModeRegistry &registry, double threshold) {
    nlohmann::json edges = nlohmann::json::array();
    for (Eigen::Index i = 0; i < weights.rows(); i++) {
        for (Eigen::Index j = i + 1; j < weights.cols(); j++) {
            if (std::abs(weights(i, j)) > threshold) {
                edges.push_back({{"a", i}, {"b", j}, {"weight", weights(i, j)}});
            }
        }
    }
    nlohmann::json modes = nlohmann::json::array();
    for (size_t i = 0; i < registry.size(); i++) {
        modes.push_back(registry.mode(i).str());
    }
    return {{"modes", std::move(modes)}, {"threshold", threshold}, {"edges", std::move(edges)}};
}

}  // namespace cvforge
