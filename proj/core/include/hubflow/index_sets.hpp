#ifndef HUBFLOW_INDEX_SETS_HPP
#define HUBFLOW_INDEX_SETS_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hubflow/model.hpp"

namespace hubflow {

/// Carrier and process sets for one hub, as used by the balance
/// constraints. Carrier sets are lexicographically ordered; process lists
/// keep declaration order.
struct HubIndexSets {
    std::set<std::string> in_carriers;    // consumed by >= 1 process
    std::set<std::string> out_carriers;   // produced by >= 1 process
    std::set<std::string> net_carriers;   // with a network port
    std::set<std::string> imp_carriers;   // with an import port
    std::set<std::string> exp_carriers;   // with an export port
    std::vector<std::string> processes;
    /// Process ids with an inlet (resp. outlet) of the keyed carrier.
    std::map<std::string, std::vector<std::string>> consumers;
    std::map<std::string, std::vector<std::string>> producers;

    /// out_carriers UNION net_carriers: the carriers with an output-side
    /// balance row.
    std::set<std::string> balance_carriers() const;
};

struct IndexSets {
    std::map<std::string, HubIndexSets> by_hub;
    /// Hubs owning a network port per networked carrier, in network
    /// declaration order.
    std::map<std::string, std::vector<std::string>> network_hubs;
    std::set<std::string> network_carriers;
};

/// Derives every index set from a validated scenario. Deterministic and
/// independent of declaration order for the set-valued members. Throws
/// std::runtime_error on unresolved references.
IndexSets derive_index_sets(const Scenario& scenario);

}  // namespace hubflow

#endif
