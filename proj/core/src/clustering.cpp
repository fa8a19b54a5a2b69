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

#include "backhaul/clustering.hpp"

#include "backhaul/csv.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace backhaul {

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1), sets_(n)
{
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) noexcept
{
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool DisjointSets::unite(std::size_t x, std::size_t y) noexcept
{
    x = find(x);
    y = find(y);
    if (x == y)
        return false;
    if (size_[x] < size_[y])
        std::swap(x, y);
    parent_[y] = x;
    size_[x] += size_[y];
    --sets_;
    return true;
}

ClusterPartition form_clusters(const LinkGraph& graph)
{
    const std::size_t n = graph.node_count();
    DisjointSets sets(n);
    for (const Edge& e : graph.edges())
        sets.unite(e.u, e.v);

    ClusterPartition out;
    out.cluster_of.assign(n, 0);
    std::vector<std::size_t> root_to_cluster(n, static_cast<std::size_t>(-1));
    // Scanning nodes in index order numbers clusters by their smallest member.
    for (NodeId v = 0; v < n; ++v) {
        const std::size_t r = sets.find(v);
        if (root_to_cluster[r] == static_cast<std::size_t>(-1)) {
            root_to_cluster[r] = out.clusters.size();
            out.clusters.emplace_back();
        }
        const std::size_t c = root_to_cluster[r];
        out.clusters[c].push_back(v);
        out.cluster_of[v] = c;
    }
    return out;
}

CoverageCheck validate_gateway_coverage(const ClusterPartition& partition,
                                        std::span<const NodeId> gateways)
{
    std::vector<bool> covered(partition.count(), false);
    for (NodeId g : gateways) {
        if (g >= partition.cluster_of.size())
            throw std::out_of_range("gateway index " + std::to_string(g) + " out of range");
        covered[partition.cluster_of[g]] = true;
    }
    CoverageCheck out;
    for (std::size_t c = 0; c < covered.size(); ++c)
        if (!covered[c])
            out.uncovered.push_back(c);
    return out;
}

void write_clusters_csv(std::ostream& out, const ClusterPartition& partition)
{
    CsvWriter csv(out);
    csv.header({"node_id", "cluster_id"});
    for (NodeId v = 0; v < partition.cluster_of.size(); ++v)
        csv.row(v, partition.cluster_of[v]);
}

} // namespace backhaul
