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


#include "cvforge/lattice.h"

#include <algorithm>
#include <stdexcept>

namespace cvforge {

std::string to_string(Nopa nopa) {
    return nopa == Nopa::kN1 ? "N1" : "N2";
}

std::string to_string(Field field) {
    switch (field) {
        case Field::kSignal:
            return "signal";
        case Field::kIdler:
            return "idler";
        case Field::kInput:
            return "input";
        case Field::kPlus:
            return "plus";
        case Field::kMinus:
            return "minus";
    }
    return "?";
}

std::string ModeId::str() const {
    return to_string(nopa) + ":" + to_string(field) + ":n=" + std::to_string(freq) + ":k=" + std::to_string(bin);
}

void LatticeConfig::validate() const {
    if (n_max < 0) {
        throw std::invalid_argument("lattice: n_max must be >= 0, got " + std::to_string(n_max));
    }
    if (n_bins < 1) {
        throw std::invalid_argument("lattice: n_bins must be >= 1, got " + std::to_string(n_bins));
    }
}

ModeRegistry::ModeRegistry(std::vector<ModeId> modes, std::vector<bool> edge)
    : modes_(std::move(modes)), edge_(std::move(edge)) {
    if (edge_.empty()) {
        edge_.assign(modes_.size(), false);
    }
    if (edge_.size() != modes_.size()) {
        throw std::invalid_argument("ModeRegistry: edge flag count does not match mode count");
    }
    for (size_t i = 0; i < modes_.size(); i++) {
        if (!index_.emplace(modes_[i], i).second) {
            throw std::invalid_argument("ModeRegistry: duplicate mode " + modes_[i].str());
        }
    }
}

size_t ModeRegistry::index(const ModeId &id) const {
    auto it = index_.find(id);
    if (it == index_.end()) {
        throw std::out_of_range("unknown mode " + id.str());
    }
    return it->second;
}

std::optional<size_t> ModeRegistry::find(const ModeId &id) const {
    auto it = index_.find(id);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

ModeRegistry ModeRegistry::without(size_t index) const {
    if (index >= modes_.size()) {
        throw std::out_of_range("ModeRegistry::without: index out of range");
    }
    std::vector<ModeId> m = modes_;
    std::vector<bool> e = edge_;
    m.erase(m.begin() + index);
    e.erase(e.begin() + index);
    return ModeRegistry(std::move(m), std::move(e));
}

ModeRegistry ModeRegistry::relabeled(const std::vector<ModeId> &new_ids) const {
    if (new_ids.size() != modes_.size()) {
        throw std::invalid_argument("ModeRegistry::relabeled: size mismatch");
    }
    return ModeRegistry(new_ids, edge_);
}

ModeRegistry ModeRegistry::extended(const std::vector<ModeId> &extra) const {
    std::vector<ModeId> m = modes_;
    std::vector<bool> e = edge_;
    m.insert(m.end(), extra.begin(), extra.end());
    e.resize(m.size(), false);
    return ModeRegistry(std::move(m), std::move(e));
}

ModeRegistry enumerate_modes(const LatticeConfig &cfg, const std::vector<Nopa> &nopas) {
    cfg.validate();
    std::vector<Nopa> sorted = nopas;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<ModeId> modes;
    std::vector<bool> edge;
    for (Nopa nopa : sorted) {
        for (Field field : {Field::kSignal, Field::kIdler}) {
            for (int n = -cfg.n_max; n <= cfg.n_max; n++) {
                for (int k = 0; k < cfg.n_bins; k++) {
                    modes.push_back(ModeId{nopa, field, n, k});
                    edge.push_back(k == 0);
                }
            }
        }
    }
    return ModeRegistry(std::move(modes), std::move(edge));
}

int pair_partner(int n, int d) {
    return d - n;
}

PairingTable pairing_table(int n_max, int d) {
    PairingTable table;
    for (int n = -n_max; n <= n_max; n++) {
        int m = pair_partner(n, d);
        if (m < -n_max || m > n_max) {
            table.rejected.push_back(n);
        } else {
            table.pairs.emplace_back(n, m);
        }
    }
    return table;
}

}  // namespace cvforge
