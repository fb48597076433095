#include "hubflow/index_sets.hpp"

#include <stdexcept>

namespace hubflow {

std::set<std::string> HubIndexSets::balance_carriers() const {
    std::set<std::string> u = out_carriers;
    u.insert(net_carriers.begin(), net_carriers.end());
    return u;
}

IndexSets derive_index_sets(const Scenario& scenario) {
    IndexSets out;
    for (const auto& hub : scenario.hubs) {
        HubIndexSets s;
        for (const auto& proc : hub.processes) {
            s.processes.push_back(proc.id);
            for (const auto& in : proc.inlets) {
                if (!scenario.find_carrier(in.carrier))
                    throw std::runtime_error("derive_index_sets: unknown carrier '" +
                                             in.carrier + "' in process '" + proc.id + "'");
                s.in_carriers.insert(in.carrier);
                s.consumers[in.carrier].push_back(proc.id);
            }
            for (const auto& o : proc.outlets) {
                if (!scenario.find_carrier(o.carrier))
                    throw std::runtime_error("derive_index_sets: unknown carrier '" +
                                             o.carrier + "' in process '" + proc.id + "'");
                s.out_carriers.insert(o.carrier);
                s.producers[o.carrier].push_back(proc.id);
            }
        }
        for (const auto& port : hub.ports) {
            if (!scenario.find_carrier(port.carrier))
                throw std::runtime_error("derive_index_sets: unknown carrier '" +
                                         port.carrier + "' in a port of hub '" + hub.id + "'");
            switch (port.kind) {
                case PortKind::Network: s.net_carriers.insert(port.carrier); break;
                case PortKind::Import: s.imp_carriers.insert(port.carrier); break;
                case PortKind::Export: s.exp_carriers.insert(port.carrier); break;
                default: break;
            }
        }
        out.by_hub.emplace(hub.id, std::move(s));
    }
    for (const auto& net : scenario.networks) {
        out.network_carriers.insert(net.carrier);
        auto& hubs = out.network_hubs[net.carrier];
        for (const auto& hid : net.hubs) {
            if (!scenario.find_hub(hid))
                throw std::runtime_error("derive_index_sets: network for '" + net.carrier +
                                         "' names unknown hub '" + hid + "'");
            hubs.push_back(hid);
        }
    }
    return out;
}

}  // namespace hubflow
