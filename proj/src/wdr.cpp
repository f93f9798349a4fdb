#include "d2dsim/wdr.hpp"

#include <algorithm>
#include <limits>

#include "d2dsim/channel.hpp"

namespace d2dsim {

Wdr Wdr::unbounded() {
    return Wdr{std::numeric_limits<double>::infinity()};
}

Wdr Wdr::finite(double rate) {
    return Wdr{rate};
}

bool Wdr::is_unbounded() const {
    return std::isinf(value);
}

Wdr path_wdr(std::span<const double> rates) {
    if (rates.empty()) {
        throw EmptyPathError("path has no links");
    }
    return Wdr::finite(*std::min_element(rates.begin(), rates.end()));
}

Wdr node_wdr(const Topology& topology, NodeId node) {
    if (node == kBsId) {
        return Wdr::unbounded();
    }
    Wdr wdr = Wdr::unbounded();
    for (const NodeId hop : path_to_bs(topology, node)) {
        wdr = incremental_wdr(wdr, link_rate_between(topology, hop, topology.node(hop).parent));
    }
    return wdr;
}

Wdr incremental_wdr(Wdr parent_wdr, double new_link_rate) {
    return Wdr::finite(std::min(parent_wdr.value, new_link_rate));
}

Wdr WdrCache::get(const Topology& topology, NodeId node) {
    if (node == kBsId) {
        return Wdr::unbounded();
    }
    const auto it = values_.find(node);
    if (it != values_.end()) {
        return Wdr::finite(it->second);
    }
    const NodeId parent = topology.node(node).parent;
    const Wdr wdr = incremental_wdr(get(topology, parent), link_rate_between(topology, node, parent));
    values_.emplace(node, wdr.value);
    return wdr;
}

void WdrCache::invalidate_subtree(const Topology& topology, NodeId root) {
    if (root == kBsId) {
        return;
    }
    values_.erase(root);
    for (const NodeId child : topology.node(root).served) {
        invalidate_subtree(topology, child);
    }
}

}  // namespace d2dsim
