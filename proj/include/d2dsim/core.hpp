#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "d2dsim/errors.hpp"
#include "d2dsim/params.hpp"

namespace d2dsim {

using NodeId = std::uint32_t;

/// Reserved id of the Base Station. It never appears in Topology::nodes;
/// a parent of kBsId means "attached directly to the BS".
inline constexpr NodeId kBsId = 0;

struct Position {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Position&) const = default;
};

/// Euclidean distance in meters.
double distance(const Position& a, const Position& b);

enum class TransmissionMode {
    Cellular,
    D2dClient,
    D2dRelay,
    D2dMultiHopRelay,
};

const char* to_string(TransmissionMode mode);

/// Relay and multi-hop relay are the modes allowed to serve (and to
/// broadcast adverts over proximity services).
inline bool is_serving_role(TransmissionMode mode) {
    return mode == TransmissionMode::D2dRelay || mode == TransmissionMode::D2dMultiHopRelay;
}

struct UeNode {
    NodeId id = 0;
    Position pos;
    double battery = 1.0;  // fraction of full charge
    TransmissionMode mode = TransmissionMode::Cellular;
    NodeId parent = kBsId;
    std::set<NodeId> served;
    double tx_power_cellular_mw = 260.0;
    double tx_power_d2d_mw = 130.0;
};

/// Frozen per-pair log-normal shadowing factors, drawn once per scenario.
/// Missing pairs read as factor 1.0 (the exact value when sigma is 0).
class ShadowTable {
  public:
    double factor(NodeId a, NodeId b) const;
    void set(NodeId a, NodeId b, double factor);
    std::size_t size() const { return factors_.size(); }
    bool empty() const { return factors_.empty(); }
    void clear() { factors_.clear(); }

    /// Entries in ascending (a, b) order, for stable serialization.
    std::vector<std::tuple<NodeId, NodeId, double>> sorted_entries() const;

    bool operator==(const ShadowTable&) const = default;

  private:
    static std::uint64_t key(NodeId a, NodeId b);
    std::unordered_map<std::uint64_t, double> factors_;
};

/// The single mutable world state: the forest of serving links rooted at
/// the BS, plus the scenario-wide parameters and frozen shadowing needed
/// to price any link. link_evaluations counts link-rate computations and
/// is the machine-independent complexity signal used by the benchmarks.
struct Topology {
    double area_width_m = 1000.0;
    double area_height_m = 1000.0;
    Position bs_pos{500.0, 500.0};
    RadioParams radio;
    DaisParams dais;
    std::map<NodeId, UeNode> nodes;
    ShadowTable shadow;
    mutable std::uint64_t link_evaluations = 0;

    const UeNode& node(NodeId id) const;
    UeNode& node(NodeId id);
    bool contains(NodeId id) const { return nodes.count(id) != 0; }

    /// Position of a node or of the BS when id == kBsId.
    Position position_of(NodeId id) const;
};

/// Ordered parent chain starting at node; the last element is the node
/// whose parent is the BS. Throws NotFoundError / TopologyCorruptionError.
std::vector<NodeId> path_to_bs(const Topology& topology, NodeId node);

struct Violation {
    enum class Kind {
        MissingNode,      // parent or served entry refers to an unknown id
        Cycle,            // parent chain does not reach the BS
        RoleViolation,    // parent link between incompatible modes
        CapViolation,     // relay serving more than d_serving_cap
        DualityViolation, // served sets are not the inverse of parent links
        SelfServe,        // node serves itself
        NonServerWithChildren,
    };

    Kind kind;
    NodeId node;
    std::string detail;
};

const char* to_string(Violation::Kind kind);

/// Empty report iff every topology and transmission-mode invariant holds.
/// Violations are data, not failures.
std::vector<Violation> validate_topology(const Topology& topology);

/// Hash of the link structure and node state (counter excluded), used for
/// determinism checks and no-mutation assertions.
std::uint64_t structural_hash(const Topology& topology);

}  // namespace d2dsim
