#pragma once

#include <compare>
#include <span>
#include <unordered_map>

#include "d2dsim/core.hpp"

namespace d2dsim {

/// Weighted Data Rate: the bottleneck link rate along a node's path to the
/// BS. The BS itself carries the distinguished Unbounded value, which
/// compares greater than every finite rate.
struct Wdr {
    double value = 0.0;

    static Wdr unbounded();
    static Wdr finite(double rate);

    bool is_unbounded() const;

    auto operator<=>(const Wdr&) const = default;
};

/// Minimum of a non-empty list of link rates. Throws EmptyPathError.
Wdr path_wdr(std::span<const double> rates);

/// Bottleneck rate along path_to_bs(node); Unbounded for the BS itself.
Wdr node_wdr(const Topology& topology, NodeId node);

/// O(1) update when attaching under a parent with a known WDR.
Wdr incremental_wdr(Wdr parent_wdr, double new_link_rate);

/// Per-node WDR cache. Entries are computed lazily by folding
/// incremental_wdr down the parent chain and must be invalidated for the
/// whole subtree whenever a node is re-parented or re-linked.
class WdrCache {
  public:
    Wdr get(const Topology& topology, NodeId node);

    /// Drops root and every descendant (via served sets).
    void invalidate_subtree(const Topology& topology, NodeId root);

    void clear() { values_.clear(); }
    std::size_t size() const { return values_.size(); }

  private:
    std::unordered_map<NodeId, double> values_;
};

}  // namespace d2dsim
