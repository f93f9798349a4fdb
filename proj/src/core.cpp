#include "d2dsim/core.hpp"

#include <bit>
#include <cmath>
#include <unordered_set>

namespace d2dsim {

double distance(const Position& a, const Position& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

const char* to_string(TransmissionMode mode) {
    switch (mode) {
        case TransmissionMode::Cellular: return "cellular";
        case TransmissionMode::D2dClient: return "d2d_client";
        case TransmissionMode::D2dRelay: return "d2d_relay";
        case TransmissionMode::D2dMultiHopRelay: return "d2d_multihop_relay";
    }
    return "unknown";
}

std::uint64_t ShadowTable::key(NodeId a, NodeId b) {
    const NodeId lo = a < b ? a : b;
    const NodeId hi = a < b ? b : a;
    return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

double ShadowTable::factor(NodeId a, NodeId b) const {
    const auto it = factors_.find(key(a, b));
    return it == factors_.end() ? 1.0 : it->second;
}

void ShadowTable::set(NodeId a, NodeId b, double factor) {
    factors_[key(a, b)] = factor;
}

std::vector<std::tuple<NodeId, NodeId, double>> ShadowTable::sorted_entries() const {
    std::vector<std::tuple<NodeId, NodeId, double>> out;
    out.reserve(factors_.size());
    for (const auto& [k, f] : factors_) {
        out.emplace_back(static_cast<NodeId>(k >> 32), static_cast<NodeId>(k & 0xffffffffu), f);
    }
    std::sort(out.begin(), out.end());
    return out;
}

const UeNode& Topology::node(NodeId id) const {
    const auto it = nodes.find(id);
    if (it == nodes.end()) {
        throw NotFoundError("no node with id " + std::to_string(id));
    }
    return it->second;
}

UeNode& Topology::node(NodeId id) {
    const auto it = nodes.find(id);
    if (it == nodes.end()) {
        throw NotFoundError("no node with id " + std::to_string(id));
    }
    return it->second;
}

Position Topology::position_of(NodeId id) const {
    return id == kBsId ? bs_pos : node(id).pos;
}

std::vector<NodeId> path_to_bs(const Topology& topology, NodeId node) {
    std::vector<NodeId> path;
    NodeId cur = node;
    while (cur != kBsId) {
        path.push_back(cur);
        if (path.size() > topology.nodes.size()) {
            throw TopologyCorruptionError("parent links of node " + std::to_string(node) +
                                          " form a cycle");
        }
        cur = topology.node(cur).parent;
    }
    if (path.empty()) {
        throw NotFoundError("path_to_bs called on the BS id");
    }
    return path;
}

const char* to_string(Violation::Kind kind) {
    switch (kind) {
        case Violation::Kind::MissingNode: return "missing-node";
        case Violation::Kind::Cycle: return "cycle";
        case Violation::Kind::RoleViolation: return "role-violation";
        case Violation::Kind::CapViolation: return "cap-violation";
        case Violation::Kind::DualityViolation: return "duality-violation";
        case Violation::Kind::SelfServe: return "self-serve";
        case Violation::Kind::NonServerWithChildren: return "non-server-with-children";
    }
    return "unknown";
}

namespace {

bool parent_role_ok(TransmissionMode child, TransmissionMode parent_mode, bool parent_is_bs) {
    switch (child) {
        case TransmissionMode::Cellular:
            return parent_is_bs;
        case TransmissionMode::D2dClient:
            return !parent_is_bs && parent_mode == TransmissionMode::D2dRelay;
        case TransmissionMode::D2dRelay:
        case TransmissionMode::D2dMultiHopRelay:
            return parent_is_bs || parent_mode == TransmissionMode::D2dMultiHopRelay;
    }
    return false;
}

}  // namespace

std::vector<Violation> validate_topology(const Topology& topology) {
    std::vector<Violation> report;
    const auto add = [&report](Violation::Kind kind, NodeId node, std::string detail) {
        report.push_back({kind, node, std::move(detail)});
    };

    for (const auto& [id, ue] : topology.nodes) {
        // parent link existence and role compatibility
        const bool parent_is_bs = ue.parent == kBsId;
        if (!parent_is_bs && !topology.contains(ue.parent)) {
            add(Violation::Kind::MissingNode, id,
                "parent " + std::to_string(ue.parent) + " does not exist");
            continue;
        }
        const TransmissionMode parent_mode =
            parent_is_bs ? TransmissionMode::Cellular : topology.node(ue.parent).mode;
        if (!parent_role_ok(ue.mode, parent_mode, parent_is_bs)) {
            add(Violation::Kind::RoleViolation, id,
                std::string(to_string(ue.mode)) + " under " +
                    (parent_is_bs ? "BS" : to_string(parent_mode)));
        }

        if (ue.served.count(id) != 0) {
            add(Violation::Kind::SelfServe, id, "node serves itself");
        }
        if (!ue.served.empty() && !is_serving_role(ue.mode)) {
            add(Violation::Kind::NonServerWithChildren, id,
                std::string(to_string(ue.mode)) + " with " + std::to_string(ue.served.size()) +
                    " children");
        }
        if (ue.mode == TransmissionMode::D2dRelay && ue.served.size() > topology.dais.d_serving_cap) {
            add(Violation::Kind::CapViolation, id,
                "serving " + std::to_string(ue.served.size()) + " > cap " +
                    std::to_string(topology.dais.d_serving_cap));
        }

        // served/parent duality, forward direction
        for (const NodeId child : ue.served) {
            if (!topology.contains(child)) {
                add(Violation::Kind::MissingNode, id,
                    "served child " + std::to_string(child) + " does not exist");
            } else if (topology.node(child).parent != id) {
                add(Violation::Kind::DualityViolation, id,
                    "child " + std::to_string(child) + " has a different parent");
            }
        }
        // reverse direction
        if (!parent_is_bs && topology.contains(ue.parent) &&
            topology.node(ue.parent).served.count(id) == 0) {
            add(Violation::Kind::DualityViolation, id,
                "missing from served set of parent " + std::to_string(ue.parent));
        }
    }

    // every node must reach the BS without revisiting anyone
    for (const auto& [id, ue] : topology.nodes) {
        std::unordered_set<NodeId> seen;
        NodeId cur = id;
        bool ok = true;
        while (cur != kBsId) {
            if (!seen.insert(cur).second) {
                add(Violation::Kind::Cycle, id, "cycle through node " + std::to_string(cur));
                ok = false;
                break;
            }
            const auto it = topology.nodes.find(cur);
            if (it == topology.nodes.end()) {
                ok = false;  // already reported as MissingNode above
                break;
            }
            cur = it->second.parent;
        }
        (void)ok;
    }

    return report;
}

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void mix(std::uint64_t& h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= kFnvPrime;
    }
}

void mix(std::uint64_t& h, double v) {
    mix(h, std::bit_cast<std::uint64_t>(v));
}

}  // namespace

std::uint64_t structural_hash(const Topology& topology) {
    std::uint64_t h = kFnvOffset;
    mix(h, topology.area_width_m);
    mix(h, topology.area_height_m);
    mix(h, topology.bs_pos.x);
    mix(h, topology.bs_pos.y);
    for (const auto& [id, ue] : topology.nodes) {
        mix(h, static_cast<std::uint64_t>(id));
        mix(h, ue.pos.x);
        mix(h, ue.pos.y);
        mix(h, ue.battery);
        mix(h, static_cast<std::uint64_t>(ue.mode));
        mix(h, static_cast<std::uint64_t>(ue.parent));
        mix(h, ue.tx_power_cellular_mw);
        mix(h, ue.tx_power_d2d_mw);
        for (const NodeId child : ue.served) {
            mix(h, static_cast<std::uint64_t>(child));
        }
    }
    return h;
}

}  // namespace d2dsim
