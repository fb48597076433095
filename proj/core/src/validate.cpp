#include "hubflow/validate.hpp"

#include <cmath>
#include <set>
#include <string>

#include "hubflow/index_sets.hpp"
#include "hubflow/util.hpp"

namespace hubflow {

namespace {

constexpr double kFractionTol = 1e-9;
constexpr double kJoulePerKwh = 3.6e6;

struct Checker {
    const Scenario& s;
    Diagnostics diags;
    std::size_t T;

    void add(std::string code, Severity sev, std::string subject, std::string message) {
        diags.push_back({std::move(code), sev, std::move(subject), std::move(message)});
    }

    bool series_ok(const Series& v, const std::string& subject, const char* field,
                   bool nonneg) {
        bool ok = true;
        if (v.size() != T) {
            add("SERIES_LENGTH", Severity::Fatal, subject,
                std::string(field) + " has " + std::to_string(v.size()) +
                    " entries, time grid has " + std::to_string(T));
            ok = false;
        }
        for (std::size_t t = 0; t < v.size(); ++t) {
            if (!std::isfinite(v[t])) {
                add("NONFINITE_VALUE", Severity::Fatal, subject,
                    std::string(field) + " is not finite at step " + std::to_string(t));
                ok = false;
                break;
            }
            if (nonneg && v[t] < 0.0) {
                add("NEGATIVE_SERIES", Severity::Fatal, subject,
                    std::string(field) + " is negative at step " + std::to_string(t));
                ok = false;
                break;
            }
        }
        return ok;
    }

    void check_carriers() {
        std::set<std::string> seen;
        for (const auto& c : s.carriers) {
            if (c.id.empty())
                add("EMPTY_ID", Severity::Fatal, "carrier", "carrier with empty id");
            if (!seen.insert(c.id).second)
                add("DUPLICATE_ID", Severity::Fatal, "carrier " + c.id,
                    "carrier id declared twice");
            if (c.kind == CarrierKind::Energy && c.chemical_exergy_j_per_kg != 0.0)
                add("BAD_EXERGY", Severity::Fatal, "carrier " + c.id,
                    "energy carrier must not declare chemical exergy");
            if (c.kind == CarrierKind::Material &&
                !(c.chemical_exergy_j_per_kg > 0.0 &&
                  std::isfinite(c.chemical_exergy_j_per_kg)))
                add("BAD_EXERGY", Severity::Fatal, "carrier " + c.id,
                    "material carrier requires chemical exergy > 0");
        }
    }

    void check_grid() {
        if (T == 0)
            add("EMPTY_GRID", Severity::Fatal, "time_grid", "time grid needs >= 1 step");
        for (std::size_t t = 0; t < T; ++t)
            if (!(s.grid.dt(t) > 0.0) || !std::isfinite(s.grid.dt(t)))
                add("BAD_STEP", Severity::Fatal, "time_grid",
                    "step duration must be > 0 at step " + std::to_string(t));
    }

    void check_process(const Hub& hub, const Process& p) {
        const std::string subject = "process " + hub.id + "/" + p.id;
        if (p.inlets.empty())
            add("NO_INLETS", Severity::Fatal, subject, "process needs >= 1 inlet");
        if (p.outlets.empty())
            add("NO_OUTLETS", Severity::Fatal, subject, "process needs >= 1 outlet");
        if (!(p.efficiency > 0.0) || !std::isfinite(p.efficiency))
            add("BAD_EFFICIENCY", Severity::Fatal, subject,
                "global efficiency must be > 0 (got " + format_double(p.efficiency) + ")");

        for (const auto* side : {&p.inlets, &p.outlets}) {
            const bool is_in = side == &p.inlets;
            double sum = 0.0;
            std::set<std::string> carriers_on_side;
            for (const auto& f : *side) {
                if (!s.find_carrier(f.carrier))
                    add("UNKNOWN_CARRIER", Severity::Fatal, subject,
                        std::string(is_in ? "inlet" : "outlet") + " names unknown carrier '" +
                            f.carrier + "'");
                if (!carriers_on_side.insert(f.carrier).second)
                    add("DUPLICATE_FLOW", Severity::Fatal, subject,
                        "carrier '" + f.carrier + "' listed twice on one side");
                if (!(f.fraction > 0.0 && f.fraction <= 1.0))
                    add("FRACTION_RANGE", Severity::Fatal, subject,
                        "fraction for '" + f.carrier + "' outside (0, 1]");
                sum += f.fraction;
            }
            if (!side->empty() && std::abs(sum - 1.0) > kFractionTol)
                add("FRACTION_SUM", Severity::Fatal, subject,
                    std::string(is_in ? "inlet" : "outlet") + " fractions sum to " +
                        format_double(sum));
        }

        for (const auto& lim : p.limits) {
            const auto& side = lim.side == LimitSide::Inlet ? p.inlets : p.outlets;
            bool found = false;
            for (const auto& f : side)
                if (f.carrier == lim.carrier) found = true;
            if (!found)
                add("LIMIT_UNKNOWN_CARRIER", Severity::Fatal, subject,
                    "limit names carrier '" + lim.carrier + "' not present on the " +
                        to_string(lim.side) + " side");
            series_ok(lim.max_flow_kw, subject,
                      ("limit on " + lim.carrier + " " + to_string(lim.side)).c_str(), true);
        }
    }

    void check_storage(const Hub& hub, const StorageUnit& u, const HubIndexSets& sets) {
        const std::string subject = "storage " + hub.id + "/" + u.id;
        if (!s.find_carrier(u.carrier))
            add("UNKNOWN_CARRIER", Severity::Fatal, subject,
                "unknown carrier '" + u.carrier + "'");
        if (!(u.round_trip_efficiency > 0.0 && u.round_trip_efficiency <= 1.0))
            add("BAD_STORAGE", Severity::Fatal, subject,
                "round-trip efficiency outside (0, 1]");
        if (u.capacity_kwh < 0.0 || u.max_charge_kw < 0.0 || u.max_discharge_kw < 0.0)
            add("BAD_STORAGE", Severity::Fatal, subject, "capacity and rates must be >= 0");
        if (u.initial_soc_kwh < 0.0 || u.initial_soc_kwh > u.capacity_kwh)
            add("BAD_STORAGE", Severity::Fatal, subject,
                "initial SOC outside [0, capacity]");
        if (!sets.out_carriers.count(u.carrier) && !sets.net_carriers.count(u.carrier))
            add("STORAGE_UNCONNECTED", Severity::Fatal, subject,
                "stored carrier is neither produced in the hub nor networked; charge flow "
                "would have no source");
    }

    void check_port(const Hub& hub, const Port& port, const HubIndexSets& sets) {
        const std::string subject =
            std::string("port ") + hub.id + "/" + port.carrier + "/" + to_string(port.kind);
        if (!s.find_carrier(port.carrier)) {
            add("UNKNOWN_CARRIER", Severity::Fatal, subject, "unknown carrier");
            return;
        }

        auto forbid = [&](const auto& field, const char* name) {
            if (field.has_value())
                add("PORT_FIELD_MISMATCH", Severity::Fatal, subject,
                    std::string(name) + " not allowed on a " + to_string(port.kind) +
                        " port");
        };
        auto require = [&](const auto& field, const char* name, const char* code) {
            if (!field.has_value()) {
                add(code, Severity::Fatal, subject,
                    std::string(name) + " required on a " + to_string(port.kind) + " port");
                return false;
            }
            return true;
        };

        switch (port.kind) {
            case PortKind::Import:
                if (require(port.price_eur_per_kwh, "price", "PRICE_MISSING"))
                    series_ok(*port.price_eur_per_kwh, subject, "price", false);
                forbid(port.load_kw, "load");
                break;
            case PortKind::Export:
                if (require(port.price_eur_per_kwh, "price", "PRICE_MISSING"))
                    series_ok(*port.price_eur_per_kwh, subject, "price", false);
                forbid(port.min_flow_kw, "min_flow");
                forbid(port.load_kw, "load");
                break;
            case PortKind::Network:
                require(port.max_flow_kw, "max_flow", "NETWORK_PORT_UNBOUNDED");
                forbid(port.price_eur_per_kwh, "price");
                forbid(port.min_flow_kw, "min_flow");
                forbid(port.load_kw, "load");
                break;
            case PortKind::Return:
                forbid(port.price_eur_per_kwh, "price");
                forbid(port.max_flow_kw, "max_flow");
                forbid(port.min_flow_kw, "min_flow");
                forbid(port.load_kw, "load");
                break;
            case PortKind::Load:
                require(port.load_kw, "load", "LOAD_MISSING");
                forbid(port.price_eur_per_kwh, "price");
                forbid(port.max_flow_kw, "max_flow");
                forbid(port.min_flow_kw, "min_flow");
                break;
        }
        if (port.max_flow_kw) series_ok(*port.max_flow_kw, subject, "max_flow", true);
        if (port.min_flow_kw) series_ok(*port.min_flow_kw, subject, "min_flow", true);
        if (port.load_kw) series_ok(*port.load_kw, subject, "load", true);
        if (port.min_flow_kw && port.max_flow_kw &&
            port.min_flow_kw->size() == port.max_flow_kw->size()) {
            for (std::size_t t = 0; t < port.min_flow_kw->size(); ++t)
                if ((*port.min_flow_kw)[t] > (*port.max_flow_kw)[t]) {
                    add("PORT_MINMAX", Severity::Fatal, subject,
                        "min_flow exceeds max_flow at step " + std::to_string(t));
                    break;
                }
        }
        if (port.price_eur_per_kwh)
            for (double v : *port.price_eur_per_kwh)
                if (v < 0.0) {
                    add("NEGATIVE_PRICE", Severity::Warning, subject,
                        "negative price can make the program unbounded");
                    break;
                }

        const bool in_out_or_net = sets.out_carriers.count(port.carrier) ||
                                   sets.net_carriers.count(port.carrier);
        switch (port.kind) {
            case PortKind::Load:
                if (!in_out_or_net)
                    add("LOAD_UNSATISFIABLE", Severity::Fatal, subject,
                        "load on a carrier the hub neither produces nor networks");
                break;
            case PortKind::Export:
                if (!in_out_or_net)
                    add("EXPORT_UNCONNECTED", Severity::Fatal, subject,
                        "export of a carrier the hub neither produces nor networks");
                break;
            case PortKind::Return:
                if (!sets.in_carriers.count(port.carrier))
                    add("RETURN_NOT_CONSUMED", Severity::Fatal, subject,
                        "return port for a carrier no process in the hub consumes");
                if (!in_out_or_net)
                    add("RETURN_UNSOURCED", Severity::Fatal, subject,
                        "return port for a carrier with no output-side balance; returned "
                        "flow would be unconstrained supply");
                break;
            case PortKind::Import:
                if (!sets.in_carriers.count(port.carrier))
                    add("IMPORT_UNUSED", Severity::Warning, subject,
                        "imported carrier is not consumed by any process in the hub");
                break;
            default:
                break;
        }
    }

    void check_hub(const Hub& hub, const HubIndexSets& sets) {
        std::set<std::string> proc_ids, sto_ids;
        for (const auto& p : hub.processes) {
            if (!proc_ids.insert(p.id).second)
                add("DUPLICATE_ID", Severity::Fatal, "process " + hub.id + "/" + p.id,
                    "process id declared twice in hub");
            check_process(hub, p);
        }
        for (const auto& u : hub.storages) {
            if (!sto_ids.insert(u.id).second)
                add("DUPLICATE_ID", Severity::Fatal, "storage " + hub.id + "/" + u.id,
                    "storage id declared twice in hub");
            check_storage(hub, u, sets);
        }
        std::set<std::pair<std::string, PortKind>> port_keys;
        for (const auto& port : hub.ports) {
            if (!port_keys.insert({port.carrier, port.kind}).second)
                add("PORT_DUPLICATE", Severity::Fatal,
                    "port " + hub.id + "/" + port.carrier + "/" + to_string(port.kind),
                    "more than one port per (hub, carrier, kind)");
            check_port(hub, port, sets);
        }
        // Consumed carriers need a physical source for the inlet balance.
        for (const auto& c : sets.in_carriers) {
            const bool has_import = sets.imp_carriers.count(c) > 0;
            const bool has_return = hub.find_port(c, PortKind::Return) != nullptr;
            const bool sourced_return =
                has_return && (sets.out_carriers.count(c) || sets.net_carriers.count(c));
            if (!has_import && !sourced_return)
                add("UNSOURCED_INLET", Severity::Warning, "hub " + hub.id + "/" + c,
                    "carrier is consumed but has neither an import port nor a sourced "
                    "return port; the consuming processes are forced to zero");
        }
    }

    void check_networks() {
        std::set<std::string> net_carriers;
        for (const auto& net : s.networks) {
            const std::string subject = "network " + net.carrier;
            if (!s.find_carrier(net.carrier))
                add("UNKNOWN_CARRIER", Severity::Fatal, subject, "unknown carrier");
            if (!net_carriers.insert(net.carrier).second)
                add("DUPLICATE_NETWORK", Severity::Fatal, subject,
                    "more than one network per carrier");
            if (net.hubs.size() < 2)
                add("NETWORK_TOO_SMALL", Severity::Fatal, subject,
                    "a network needs >= 2 member hubs");
            if (!(net.loss_fraction >= 0.0) || !std::isfinite(net.loss_fraction))
                add("BAD_LOSS", Severity::Fatal, subject, "loss fraction must be >= 0");
            std::set<std::string> members;
            for (const auto& hid : net.hubs) {
                const Hub* hub = s.find_hub(hid);
                if (!hub) {
                    add("UNKNOWN_HUB", Severity::Fatal, subject,
                        "member hub '" + hid + "' does not exist");
                    continue;
                }
                if (!members.insert(hid).second)
                    add("DUPLICATE_ID", Severity::Fatal, subject,
                        "hub '" + hid + "' listed twice");
                if (!hub->find_port(net.carrier, PortKind::Network))
                    add("NETWORK_PORT_MISSING", Severity::Fatal, subject,
                        "member hub '" + hid + "' has no network port for the carrier");
            }
        }
        // Every network port must belong to a declared network, otherwise its
        // flows appear in no network balance and act as free supply/disposal.
        for (const auto& hub : s.hubs)
            for (const auto& port : hub.ports) {
                if (port.kind != PortKind::Network) continue;
                bool covered = false;
                for (const auto& net : s.networks)
                    if (net.carrier == port.carrier)
                        for (const auto& hid : net.hubs)
                            if (hid == hub.id) covered = true;
                if (!covered)
                    add("ORPHAN_NETWORK_PORT", Severity::Fatal,
                        "port " + hub.id + "/" + port.carrier + "/network",
                        "network port not referenced by any declared network");
            }
    }

    void run() {
        check_carriers();
        check_grid();
        std::set<std::string> hub_ids;
        for (const auto& hub : s.hubs)
            if (!hub_ids.insert(hub.id).second)
                add("DUPLICATE_ID", Severity::Fatal, "hub " + hub.id,
                    "hub id declared twice");
        IndexSets sets;
        try {
            sets = derive_index_sets(s);
        } catch (const std::exception& e) {
            add("UNRESOLVED_REFERENCE", Severity::Fatal, "scenario", e.what());
            return;
        }
        for (const auto& hub : s.hubs) check_hub(hub, sets.by_hub.at(hub.id));
        check_networks();
        for (const auto& hub : s.hubs)
            for (const auto& p : hub.processes)
                if (p.coefficient_kg_per_kwh && p.efficiency <= 0.0)
                    add("COEFFICIENT_UNRESOLVED", Severity::Fatal,
                        "process " + hub.id + "/" + p.id,
                        "unit-bearing coefficient was never resolved to an efficiency");
    }
};

}  // namespace

Diagnostics validate(const Scenario& scenario) {
    Checker checker{scenario, {}, scenario.grid.size()};
    checker.run();
    return checker.diags;
}

Diagnostics resolve_process_coefficients(Scenario& scenario) {
    Diagnostics diags;
    for (auto& hub : scenario.hubs) {
        for (auto& p : hub.processes) {
            if (!p.coefficient_kg_per_kwh) continue;
            const std::string subject = "process " + hub.id + "/" + p.id;
            const double coeff = *p.coefficient_kg_per_kwh;
            if (!(coeff > 0.0) || !std::isfinite(coeff)) {
                diags.push_back({"BAD_EFFICIENCY", Severity::Fatal, subject,
                                 "kg/kWh coefficient must be > 0"});
                continue;
            }
            const Carrier* material = nullptr;
            double material_fraction = 0.0;
            bool ambiguous = false;
            for (const auto& o : p.outlets) {
                const Carrier* c = scenario.find_carrier(o.carrier);
                if (c && c->is_material()) {
                    if (material) ambiguous = true;
                    material = c;
                    material_fraction = o.fraction;
                }
            }
            if (!material || ambiguous) {
                diags.push_back(
                    {"COEFFICIENT_AMBIGUOUS", Severity::Fatal, subject,
                     "kg/kWh coefficient needs exactly one material outlet carrier"});
                continue;
            }
            // coeff kg of product per kWh of total input; the material outlet
            // carries material_fraction of the total output exergy.
            const double eta =
                coeff * material->chemical_exergy_j_per_kg / (kJoulePerKwh * material_fraction);
            p.efficiency = eta;
            diags.push_back(
                {"COEFFICIENT_CONVERSION", Severity::Info, subject,
                 "resolved " + format_double(coeff) + " kg/kWh to global efficiency " +
                     format_double(eta) + " using chemical exergy " +
                     format_double(material->chemical_exergy_j_per_kg) + " J/kg"});
        }
    }
    return diags;
}

}  // namespace hubflow
