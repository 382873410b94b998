#include "ontointent/feasibility.hpp"

#include <cmath>
#include <sstream>

#include "ontointent/errors.hpp"

namespace ontointent {

namespace {

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << name << " must be positive, got " << x;
    throw NonPositiveInput(os.str());
  }
}

std::string describe(const char* what, double value, const char* op,
                     double limit) {
  std::ostringstream os;
  os << what << " " << value << " " << op << " " << limit;
  return os.str();
}

}  // namespace

FeasibilityResult feasibility(const FeasibilitySpec& spec) {
  require_positive(spec.device.ram_gb, "device RAM");
  require_positive(spec.device.max_latency_ms, "latency budget");
  require_positive(spec.device.max_energy_j, "energy budget");
  require_positive(spec.model.size_gb, "model size");
  require_positive(spec.model.latency_ms, "model latency");
  require_positive(spec.model.energy_j, "model energy");

  FeasibilityResult r;
  r.memory_share = spec.model.size_gb / spec.device.ram_gb;
  r.min_ram_gb = spec.model.size_gb / kMaxMemoryShare;
  if (!(r.memory_share < kMaxMemoryShare)) {
    r.reasons.push_back(describe("memory share", r.memory_share, ">=",
                                 kMaxMemoryShare));
  }
  if (!(spec.model.latency_ms < spec.device.max_latency_ms)) {
    r.reasons.push_back(describe("latency ms", spec.model.latency_ms, ">=",
                                 spec.device.max_latency_ms));
  }
  if (!(spec.model.energy_j < spec.device.max_energy_j)) {
    r.reasons.push_back(describe("energy J", spec.model.energy_j, ">=",
                                 spec.device.max_energy_j));
  }
  r.feasible = r.reasons.empty();
  return r;
}

}  // namespace ontointent
