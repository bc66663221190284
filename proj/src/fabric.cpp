#include "mfsim/fabric.hpp"

#include <cstdio>
#include <stdexcept>

namespace mfsim {

Fabric make_fabric(int num_machines, double port_capacity) {
  if (num_machines < 1)
    throw std::invalid_argument("fabric: num_machines must be >= 1, got " +
                                std::to_string(num_machines));
  if (!(port_capacity > 0.0))
    throw std::invalid_argument("fabric: port_capacity must be > 0, got " +
                                std::to_string(port_capacity));
  return Fabric{num_machines, port_capacity};
}

std::string port_name(PortId port) {
  return (port.dir == PortDir::kIngress ? "ingress(" : "egress(") +
         std::to_string(port.machine) + ")";
}

PortTable full_capacity(const Fabric& fabric) {
  PortTable t;
  t.ingress.assign(fabric.num_machines, fabric.port_capacity);
  t.egress.assign(fabric.num_machines, fabric.port_capacity);
  return t;
}

namespace {

void check_rows(const Fabric& fabric, const RateAllocation& alloc,
                std::span<const FlowPorts> flows) {
  if (alloc.rates.size() != flows.size())
    throw std::invalid_argument(
        "allocation has " + std::to_string(alloc.rates.size()) +
        " rates for " + std::to_string(flows.size()) + " flows");
  for (size_t i = 0; i < flows.size(); ++i) {
    const FlowPorts& f = flows[i];
    if (f.src < 0 || f.src >= fabric.num_machines || f.dst < 0 ||
        f.dst >= fabric.num_machines)
      throw std::invalid_argument("flow " + std::to_string(i) +
                                  " references machine outside fabric");
  }
}

}  // namespace

PortTable residual_capacities(const Fabric& fabric, const RateAllocation& alloc,
                              std::span<const FlowPorts> flows) {
  check_rows(fabric, alloc, flows);
  PortTable t = full_capacity(fabric);
  for (size_t i = 0; i < flows.size(); ++i) {
    t.egress[flows[i].src] -= alloc.rates[i];
    t.ingress[flows[i].dst] -= alloc.rates[i];
  }
  return t;
}

std::string CapacityViolation::describe() const {
  char buf[128];
  switch (kind) {
    case Kind::kPortOverCapacity:
      std::snprintf(buf, sizeof(buf), "%s over capacity by %.9g",
                    port_name(port).c_str(), excess);
      break;
    case Kind::kNegativeRate:
      std::snprintf(buf, sizeof(buf), "flow %d has negative rate %.9g", flow,
                    -excess);
      break;
    case Kind::kRateOnFinishedFlow:
      std::snprintf(buf, sizeof(buf), "finished flow %d has rate %.9g", flow,
                    excess);
      break;
  }
  return buf;
}

ValidationReport validate_allocation(const Fabric& fabric,
                                     const RateAllocation& alloc,
                                     std::span<const FlowPorts> flows) {
  check_rows(fabric, alloc, flows);
  ValidationReport report;
  PortTable sum;
  sum.ingress.assign(fabric.num_machines, 0.0);
  sum.egress.assign(fabric.num_machines, 0.0);
  for (size_t i = 0; i < flows.size(); ++i) {
    double r = alloc.rates[i];
    if (r < 0.0)
      report.violations.push_back({CapacityViolation::Kind::kNegativeRate,
                                   PortId{}, static_cast<int>(i), -r});
    if (flows[i].remaining <= 0.0 && r > kEps)
      report.violations.push_back(
          {CapacityViolation::Kind::kRateOnFinishedFlow, PortId{},
           static_cast<int>(i), r});
    sum.egress[flows[i].src] += r;
    sum.ingress[flows[i].dst] += r;
  }
  for (int m = 0; m < fabric.num_machines; ++m) {
    if (sum.ingress[m] > fabric.port_capacity + kEps)
      report.violations.push_back(
          {CapacityViolation::Kind::kPortOverCapacity,
           PortId{m, PortDir::kIngress}, -1,
           sum.ingress[m] - fabric.port_capacity});
    if (sum.egress[m] > fabric.port_capacity + kEps)
      report.violations.push_back(
          {CapacityViolation::Kind::kPortOverCapacity,
           PortId{m, PortDir::kEgress}, -1,
           sum.egress[m] - fabric.port_capacity});
  }
  return report;
}

}  // namespace mfsim
