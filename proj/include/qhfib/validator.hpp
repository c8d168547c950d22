#pragma once

#include "qhfib/fibration.hpp"

#include <string>
#include <vector>

namespace qhfib {

// Suite names accepted by run_suite, in campaign order. "all" runs every
// suite that applies to the target.
const std::vector<std::string>& suite_names();

VerificationReport run_suite(const QuantumManifold& target, const std::string& suite, const Rational& cutoff);
VerificationReport run_suite(const FibrationModel& target, const std::string& suite, const Rational& cutoff);

// Individual suites on the fiber side.
VerificationReport check_model(const ManifoldModel& m);
VerificationReport check_quantum_laws(const QuantumManifold& m, const Rational& cutoff);

} // namespace qhfib
