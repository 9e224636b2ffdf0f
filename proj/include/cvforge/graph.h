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


#ifndef _CVFORGE_GRAPH_H
#define _CVFORGE_GRAPH_H

#include <Eigen/Dense>
#include <json.hpp>
#include <string>
#include <vector>

#include "cvforge/gaussian.h"
#include "cvforge/trace.h"

namespace cvforge {

/// Real symmetric adjacency over registered modes.
struct HGraph {
    Eigen::MatrixXd adjacency;

    size_t size() const {
        return static_cast<size_t>(adjacency.rows());
    }
};

/// Complex symmetric adjacency Z = U + iV of a pure Gaussian state; the
/// wavefunction is exp(i/2 x^T Z x) up to normalization.
struct ComplexGraph {
    Eigen::MatrixXcd z;
};

/// Squeezer placement: G[i][j] = 1 iff a two-mode squeezer coupled i and j.
/// Delay relabelings move edges along with their modes. With `until`, stops at
/// that checkpoint so G describes the state there. Throws std::invalid_argument
/// when one pair is squeezed twice or a mode is squeezed against two partners.
HGraph hgraph_from_trace(const PipelineTrace &trace, size_t num_modes, const std::string &until = {});

/// H = O G O^T where O is the passive network recorded after the squeezers.
/// Every passive step must act identically on x and p (beamsplitters,
/// relabelings, and phases of 0 or pi); anything else throws.
HGraph propagate_hgraph(const PipelineTrace &trace, size_t num_modes);

/// G^2 = I within the structural tolerance.
bool check_self_inverse(const HGraph &g);

/// G^2 = I restricted to modes with at least one edge. Unpaired modes are
/// left in vacuum and carry no graph structure.
bool check_self_inverse_on_support(const HGraph &g);

struct BipartiteCheck {
    bool bipartite = false;
    /// 0/1 per mode. Traversal starts from the lowest unvisited index, which gets color 0.
    std::vector<int> coloring;
    /// A closed walk of odd length when not bipartite.
    std::vector<size_t> odd_cycle;
};

BipartiteCheck check_bipartite(const HGraph &g);

/// Z = i cosh(2r) I - i sinh(2r) G. Throws std::invalid_argument naming the
/// failing check when G is not self-inverse or not bipartite.
ComplexGraph z_from_hgraph(const HGraph &g, double r);

/// Recovers Z from a pure state via cov_xx = V^-1 / 2 and cov_xp = V^-1 U / 2,
/// then rebuilds cov_pp as a consistency check.
ComplexGraph z_from_state(const GaussianState &state);

/// Graph of entries with |Z_ij| above threshold, diagonal excluded.
HGraph support_graph(const ComplexGraph &z);

struct ClusterAdjacency {
    /// Re(Z') after rotating the mask modes by a quarter turn.
    Eigen::MatrixXd weights;
    std::vector<size_t> mask;
    std::string convention;
};

/// Rotates `mask` modes by phase_rotate(-pi/2) in the graph picture and returns
/// Re(Z'). The mask must be an independent set of `structure`.
ClusterAdjacency cluster_adjacency(const ComplexGraph &z, const std::vector<size_t> &mask, const HGraph &structure);

/// Same, checking independence against the support graph of Z itself.
ClusterAdjacency cluster_adjacency(const ComplexGraph &z, const std::vector<size_t> &mask);

/// Infinite-squeezing limit of the cluster weights for a state whose Z is
/// i cosh(2r) I - i sinh(2r) H: the H entries that cross the mask boundary.
Eigen::MatrixXd asymptotic_cluster_weights(const HGraph &h, const std::vector<size_t> &mask);

/// Color-0 class of check_bipartite. Throws when `h` is not bipartite.
std::vector<size_t> default_rotation_mask(const HGraph &h);

/// max |w(r) - w_inf| * e^{2r}: the constant C in |w(r) - w_inf| <= C e^{-2r}.
double convergence_constant(const Eigen::MatrixXd &weights, const Eigen::MatrixXd &limit, double r);

/// Connected components of the graph with edges |w_ij| > threshold.
/// Components are sorted by smallest member; isolated vertices are dropped
/// when `keep_isolated` is false.
std::vector<std::vector<size_t>> components(const Eigen::MatrixXd &weights, double threshold, bool keep_isolated = false);

struct PortSetReport {
    /// Number of distinct coupler output-port classes that carry edges.
    size_t port_classes = 0;
    /// Components of the quotient graph whose vertices are port classes.
    size_t components = 0;
    /// Components of the mode-level graph, for comparison.
    size_t mode_components = 0;
};

/// Connectivity at the level of array sets. Every mode leaving a cross-coupler
/// beamsplitter (labels "bs3"/"bs4") is assigned to the class of its output
/// port: first port or second port. Two classes are joined when any edge of
/// `weights` runs between them.
PortSetReport port_set_connectivity(const PipelineTrace &trace, const Eigen::MatrixXd &weights, double threshold);

struct Nullifier {
    std::string name;
    std::string family;
    int k = 0;
    int rail = 0;
    QuadCombination terms;
};

struct NullifierSet {
    std::vector<Nullifier> items;
    size_t size() const {
        return items.size();
    }
};

/// Dual-rail nullifiers for the zig-zag arrays of one squeezer. For every
/// bin k whose modes and successors are all non-edge, and every line n whose
/// partner m = d - n is in range:
///   x: +x_s(n,k) + x_i(n,k) - x_s(m,k+1) + x_i(m,k+1)
///   p: -p_s(n,k) - p_i(n,k) - p_s(m,k+1) + p_i(m,k+1)
/// Idler labels are post-delay slots. `rail` is the signal line at even bins.
NullifierSet nullifiers_1d(const ModeRegistry &registry, Nopa nopa = Nopa::kN1, int pump_offset = 0);

/// Bilayer nullifiers for every even bin 2k >= 2 with 2k + 1 in range and
/// every line a with b = 1 - a and c = -1 - a in range.
NullifierSet nullifiers_3d(const ModeRegistry &registry);

/// The four nullifiers at one (a, b, c, 2k). Throws std::invalid_argument unless
/// a + b = 1, a + c = -1 and k2 is even.
NullifierSet nullifiers_3d_at(const ModeRegistry &registry, int a, int b, int c, int k2);

/// Edge list "mode_a,mode_b,weight" with i < j and |w| > threshold.
std::string edges_to_csv(const Eigen::MatrixXd &weights, const ModeRegistry &registry, double threshold);
nlohmann::json adjacency_to_json(const Eigen::MatrixXd &weights, const ModeRegistry &registry, double threshold);

}  // namespace cvforge

#endif
