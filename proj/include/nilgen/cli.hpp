#pragma once

// The nilgen command-line front end. Reports are key=value lines; failing
// checks append certificates as
//
//   begin certificate check=<name> <key>=<value>...
//   <ALT v1 document with element sets / maps>
//   end certificate

#include "nilgen/alt_io.hpp"
#include "nilgen/model_theory.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace nilgen {

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitUsage = 2 };

// args excludes the program name. `indep` replaces indep0 in kp-suite
// (mutation testing hook).
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, IndepFn indep = indep0);

struct Certificate {
    std::map<std::string, std::string> attrs; // from the begin line, including "check"
    AltDocument doc;
};

// Extracts every certificate block from a report.
std::vector<Certificate> parse_certificates(const std::string& report);

std::string kp_certificate(const AltSystem& d, const KpViolation& v);
std::string sigma3_certificate(const AltSystem& d, std::size_t t, std::size_t pair, const FMatrix& base_map);

// Re-runs the named check on the certificate alone; true if it fails again.
bool certificate_refails(const Certificate& cert, IndepFn indep = indep0);

} // namespace nilgen
