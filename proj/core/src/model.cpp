#include "hubflow/model.hpp"

#include <numeric>
#include <stdexcept>

namespace hubflow {

double TimeGrid::horizon_hours() const {
    return std::accumulate(step_hours.begin(), step_hours.end(), 0.0);
}

const Port* Hub::find_port(const std::string& carrier, PortKind kind) const {
    for (const auto& p : ports)
        if (p.carrier == carrier && p.kind == kind) return &p;
    return nullptr;
}

const Carrier* Scenario::find_carrier(const std::string& id) const {
    for (const auto& c : carriers)
        if (c.id == id) return &c;
    return nullptr;
}

const Hub* Scenario::find_hub(const std::string& id) const {
    for (const auto& h : hubs)
        if (h.id == id) return &h;
    return nullptr;
}

double exergy_flow_w(double mass_flow_kg_per_s, const Carrier& carrier) {
    if (!carrier.is_material() || carrier.chemical_exergy_j_per_kg <= 0.0)
        throw std::invalid_argument("exergy_flow_w: carrier '" + carrier.id +
                                    "' is not a material with chemical exergy");
    return mass_flow_kg_per_s * carrier.chemical_exergy_j_per_kg;
}

const char* to_string(CarrierKind k) {
    return k == CarrierKind::Energy ? "energy" : "material";
}

const char* to_string(PortKind k) {
    switch (k) {
        case PortKind::Import: return "import";
        case PortKind::Export: return "export";
        case PortKind::Network: return "network";
        case PortKind::Return: return "return";
        case PortKind::Load: return "load";
    }
    return "?";
}

const char* to_string(LimitSide s) {
    return s == LimitSide::Inlet ? "inlet" : "outlet";
}

const char* to_string(TerminalPolicy p) {
    return p == TerminalPolicy::Free ? "free" : "cyclic";
}

}  // namespace hubflow
