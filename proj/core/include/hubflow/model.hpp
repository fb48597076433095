#ifndef HUBFLOW_MODEL_HPP
#define HUBFLOW_MODEL_HPP

#include <optional>
#include <string>
#include <vector>

namespace hubflow {

/// One time series value per scheduling step, unit depends on context
/// (kW for flows, EUR/kWh for prices).
using Series = std::vector<double>;

enum class CarrierKind { Energy, Material };

/// A commodity whose flow is tracked per hub per step. Material carriers
/// are normalized to exergy power at ingestion: kW = (kg/s) * E_ex / 1000.
struct Carrier {
    std::string id;
    CarrierKind kind = CarrierKind::Energy;
    double chemical_exergy_j_per_kg = 0.0;  // materials only, > 0

    bool is_material() const { return kind == CarrierKind::Material; }
    bool operator==(const Carrier&) const = default;
};

/// Ordered step durations in hours. All scenario series have exactly
/// size() entries.
struct TimeGrid {
    std::vector<double> step_hours;

    std::size_t size() const { return step_hours.size(); }
    double dt(std::size_t t) const { return step_hours[t]; }
    double horizon_hours() const;
    bool operator==(const TimeGrid&) const = default;
};

enum class LimitSide { Inlet, Outlet };

/// Per-carrier flow cap on one side of a process. Caps coming from a
/// weather law (wind power law, solar area law) are flagged so reporting
/// can audit curtailment against them.
struct FlowLimit {
    std::string carrier;
    LimitSide side = LimitSide::Inlet;
    Series max_flow_kw;
    bool weather_law = false;

    bool operator==(const FlowLimit&) const = default;
};

struct FlowFraction {
    std::string carrier;
    double fraction = 0.0;  // in (0, 1]; sums to 1 per side

    bool operator==(const FlowFraction&) const = default;
};

/// Generic converter: total outlet flow = efficiency * total inlet flow,
/// with fixed per-carrier shares on both sides.
struct Process {
    std::string id;
    double efficiency = 0.0;  // resolved, dimensionless, > 0
    /// Declared mass-productivity coefficient when the process was
    /// specified as kg per kWh of input; `efficiency` is derived from it
    /// at validation using the outlet material's chemical exergy.
    std::optional<double> coefficient_kg_per_kwh;
    std::vector<FlowFraction> inlets;
    std::vector<FlowFraction> outlets;
    std::vector<FlowLimit> limits;

    bool operator==(const Process&) const = default;
};

enum class TerminalPolicy { Free, Cyclic };

struct StorageUnit {
    std::string id;
    std::string carrier;
    double round_trip_efficiency = 1.0;  // in (0, 1]
    double capacity_kwh = 0.0;
    double max_charge_kw = 0.0;
    double max_discharge_kw = 0.0;
    double initial_soc_kwh = 0.0;
    TerminalPolicy terminal_policy = TerminalPolicy::Free;

    bool operator==(const StorageUnit&) const = default;
};

enum class PortKind { Import, Export, Network, Return, Load };

/// Typed hub boundary. Which optional fields are allowed depends on kind:
///   import:  price (required), max_flow, min_flow
///   export:  price (required), max_flow
///   network: max_flow (required)
///   return:  no fields
///   load:    load (required)
struct Port {
    std::string carrier;
    PortKind kind = PortKind::Import;
    std::optional<Series> price_eur_per_kwh;
    std::optional<Series> max_flow_kw;
    std::optional<Series> min_flow_kw;
    std::optional<Series> load_kw;
    /// Weather-law provenance of max_flow (import ports for renewables).
    bool weather_law = false;

    bool operator==(const Port&) const = default;
};

struct Hub {
    std::string id;
    std::vector<Process> processes;
    std::vector<StorageUnit> storages;
    std::vector<Port> ports;

    const Port* find_port(const std::string& carrier, PortKind kind) const;
    bool operator==(const Hub&) const = default;
};

/// Carrier exchange between >= 2 hubs, each of which owns a network port
/// for the carrier. Total injection and extraction are tied together by
/// the loss fraction; the orientation of that tie is a build option.
struct Network {
    std::string carrier;
    std::vector<std::string> hubs;
    double loss_fraction = 0.0;

    bool operator==(const Network&) const = default;
};

struct Scenario {
    std::vector<Carrier> carriers;
    std::vector<Hub> hubs;
    std::vector<Network> networks;
    TimeGrid grid;

    const Carrier* find_carrier(const std::string& id) const;
    const Hub* find_hub(const std::string& id) const;
    bool operator==(const Scenario&) const = default;
};

/// Exergy flow of a material stream in W: mass_flow_kg_per_s * E_ex.
/// Throws std::invalid_argument for energy carriers.
double exergy_flow_w(double mass_flow_kg_per_s, const Carrier& carrier);

const char* to_string(CarrierKind k);
const char* to_string(PortKind k);
const char* to_string(LimitSide s);
const char* to_string(TerminalPolicy p);

}  // namespace hubflow

#endif
