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


#ifndef _CVFORGE_LATTICE_H
#define _CVFORGE_LATTICE_H

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cvforge {

enum class Nopa : uint8_t { kN1 = 0, kN2 = 1 };

/// Which output of a squeezer a mode came from. The last three kinds never
/// come out of a pipeline: kInput is an injected logical mode for the
/// measurement layer, kPlus/kMinus are distributed modes after the
/// macronode change of basis.
enum class Field : uint8_t { kSignal = 0, kIdler = 1, kInput = 2, kPlus = 3, kMinus = 4 };

std::string to_string(Nopa nopa);
std::string to_string(Field field);

struct ModeId {
    Nopa nopa = Nopa::kN1;
    Field field = Field::kSignal;
    int32_t freq = 0;  // comb line index n, frequency w0 + n * fsr
    int32_t bin = 0;   // time bin k

    auto operator<=>(const ModeId &) const = default;
    std::string str() const;
};

/// Inert physical metadata. None of it enters the dynamics.
struct LatticeMetadata {
    double fsr_hz = 0;
    double bin_period_s = 0;
    double nonlinear_coefficient = 0;
    double pump_parameter = 0;
    double crystal_length_m = 0;
    double cavity_length_m = 0;
};

struct LatticeConfig {
    int n_max = 1;
    int n_bins = 2;
    int pump_offset = 0;
    LatticeMetadata metadata;

    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
};

/// Ordered, duplicate-free list of modes with a dense index for each.
///
/// Modes may be flagged `edge`: they live in the state but have no
/// predecessor bin, so verification never builds nullifiers on them.
class ModeRegistry {
   public:
    ModeRegistry() = default;
    explicit ModeRegistry(std::vector<ModeId> modes, std::vector<bool> edge = {});

    size_t size() const {
        return modes_.size();
    }
    bool empty() const {
        return modes_.empty();
    }
    const ModeId &mode(size_t index) const {
        return modes_.at(index);
    }
    const std::vector<ModeId> &modes() const {
        return modes_;
    }
    bool is_edge(size_t index) const {
        return edge_.at(index);
    }
    bool contains(const ModeId &id) const {
        return index_.count(id) != 0;
    }
    /// Throws std::out_of_range naming the mode when absent.
    size_t index(const ModeId &id) const;
    std::optional<size_t> find(const ModeId &id) const;

    /// Copy with one mode dropped; later indices shift down by one.
    ModeRegistry without(size_t index) const;
    /// Copy with modes relabeled in place (same indices, same edge flags).
    ModeRegistry relabeled(const std::vector<ModeId> &new_ids) const;
    /// Copy with extra modes appended.
    ModeRegistry extended(const std::vector<ModeId> &extra) const;

    bool operator==(const ModeRegistry &other) const {
        return modes_ == other.modes_ && edge_ == other.edge_;
    }

   private:
    std::vector<ModeId> modes_;
    std::vector<bool> edge_;
    std::map<ModeId, size_t> index_;
};

/// All (nopa, field, freq, bin) combinations for the signal and idler fields,
/// lexicographically ordered. Bin 0 is flagged edge.
ModeRegistry enumerate_modes(const LatticeConfig &cfg, const std::vector<Nopa> &nopas);

/// Down-conversion partner of comb line n for pump offset d: n' = d - n.
int pair_partner(int n, int d);

struct PairingTable {
    /// (signal line, idler line) for every line whose partner is in range.
    std::vector<std::pair<int, int>> pairs;
    /// Signal lines whose partner falls outside [-n_max, n_max].
    std::vector<int> rejected;
};

PairingTable pairing_table(int n_max, int d);

}  // namespace cvforge

#endif
