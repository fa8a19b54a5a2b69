// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The backhaul authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "backhaul/deployment.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace backhaul {

// Union-find with path halving and union by size.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n);

    std::size_t find(std::size_t x) noexcept;
    // Returns true when x and y were in different sets.
    bool unite(std::size_t x, std::size_t y) noexcept;
    std::size_t set_count() const noexcept { return sets_; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::size_t sets_;
};

// Connection clusters: the connected components of the link graph.
// Canonical order: members ascending within a cluster, clusters ordered by
// their smallest member.
struct ClusterPartition {
    std::vector<std::vector<NodeId>> clusters;
    std::vector<std::size_t> cluster_of;  // node -> cluster index

    std::size_t count() const noexcept { return clusters.size(); }
};

ClusterPartition form_clusters(const LinkGraph& graph);

struct CoverageCheck {
    std::vector<std::size_t> uncovered;  // clusters without a gateway, ascending

    bool ok() const noexcept { return uncovered.empty(); }
};

// Clusters lacking a gateway. Throws std::out_of_range on a bad gateway index.
CoverageCheck validate_gateway_coverage(const ClusterPartition& partition,
                                        std::span<const NodeId> gateways);

void write_clusters_csv(std::ostream& out, const ClusterPartition& partition);

} // namespace backhaul
