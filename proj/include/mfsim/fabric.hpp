#pragma once

#include <span>
#include <string>
#include <vector>

namespace mfsim {

// Slack used for every capacity and completion comparison in the library.
inline constexpr double kEps = 1e-9;

// Non-blocking big-switch abstraction of a datacenter network: machines are
// attached to one switch and the only contention points are the per-machine
// ingress and egress ports.
struct Fabric {
  int num_machines = 0;
  double port_capacity = 1.0;
};

// Throws std::invalid_argument unless num_machines >= 1 and capacity > 0.
Fabric make_fabric(int num_machines, double port_capacity = 1.0);

enum class PortDir { kIngress, kEgress };

struct PortId {
  int machine = 0;
  PortDir dir = PortDir::kIngress;

  friend bool operator==(const PortId&, const PortId&) = default;
};

std::string port_name(PortId port);

// Scalar per port (loads, demands, residual bandwidth), indexed by machine.
struct PortTable {
  std::vector<double> ingress;
  std::vector<double> egress;

  double& at(PortId p) {
    return p.dir == PortDir::kIngress ? ingress[p.machine] : egress[p.machine];
  }
  double at(PortId p) const {
    return p.dir == PortDir::kIngress ? ingress[p.machine] : egress[p.machine];
  }
};

// Every port at full capacity.
PortTable full_capacity(const Fabric& fabric);

// Endpoint and demand snapshot of one flow. Rows of a snapshot parallel the
// rates of an allocation built against it.
struct FlowPorts {
  int src = 0;
  int dst = 0;
  double remaining = 0.0;
};

// Transmission rates, one per flow of the snapshot the allocation was built
// against. Valid until the next scheduling event.
struct RateAllocation {
  std::vector<double> rates;
};

// Capacity left on each port after subtracting all flow rates crossing it.
// Throws std::invalid_argument on size mismatch or out-of-range endpoints.
PortTable residual_capacities(const Fabric& fabric, const RateAllocation& alloc,
                              std::span<const FlowPorts> flows);

struct CapacityViolation {
  enum class Kind { kPortOverCapacity, kNegativeRate, kRateOnFinishedFlow };

  Kind kind = Kind::kPortOverCapacity;
  PortId port;      // meaningful for kPortOverCapacity
  int flow = -1;    // meaningful for per-flow kinds
  double excess = 0.0;

  std::string describe() const;
};

struct ValidationReport {
  std::vector<CapacityViolation> violations;

  bool ok() const { return violations.empty(); }
};

// Checks an allocation against the fabric: port sums within capacity (with
// kEps slack), no negative rates, no rate on a flow with nothing left to send.
ValidationReport validate_allocation(const Fabric& fabric,
                                     const RateAllocation& alloc,
                                     std::span<const FlowPorts> flows);

}  // namespace mfsim
