// cmatel :: certify
//
// Independent audit of open tableaux, and the DOT / JSON exports.

#ifndef CMATEL_CERTIFY_HPP_
#define CMATEL_CERTIFY_HPP_

#include <string>
#include <vector>

#include "cmatel/pretableau.hpp"
#include "cmatel/tableau.hpp"

namespace cmatel {

enum class Condition { H1, H2, SuccX, SuccD, H6Forward, RealC, RealU };

const char* condition_name(Condition c);

struct Violation {
  Condition condition;
  StateIndex state;
  std::string detail;
};

struct CertificateReport {
  std::vector<Violation> violations;
  bool pass() const { return violations.empty(); }
};

// Checks every live state of a final tableau against the local Hintikka
// conditions, successor coverage and eventuality realization.  Reads the
// graph and labels only.
CertificateReport check_certificate(const Tableau& t);

struct DotOptions {
  std::string graph_name = "tableau";
  bool include_removed = false;  // removed states drawn dashed
};

std::string export_dot(const Pretableau& p, const DotOptions& opts = {});
std::string export_dot(const Tableau& t, const DotOptions& opts = {});

std::string export_trace(const Decision& d);

}  // namespace cmatel

#endif  // CMATEL_CERTIFY_HPP_
