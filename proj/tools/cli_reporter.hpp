#pragma once

#include "toric_plt/duval_recognizer.hpp"
#include "toric_plt/plt_families.hpp"
#include "toric_plt/verification.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace toric_plt::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kParseError = 2, kDomainError = 3 };

/// "cyclic r=7 q=3", "cone (1,0,0) (0,1,0) (1,3,7)" or "odp"; one germ,
/// "#" comments.
ConeGerm parse_germ(const std::string& text);

/// "<kind> key=value ...", kind one of A, D, E6, E7, E8, ODP. D takes k
/// (D_{2k+2}) or n. Keys may spread over several lines.
FamilySpec parse_family(const std::string& text);

Json to_json(const Rational& q);
Json to_json(const LatticeMatrix& m);
Json to_json(const CyclicQuotientType& t);
Json to_json(const TerminalToricType& t);
Json to_json(const FamilySpec& s);
Json to_json(const ConicBundleDescription& d);
Json to_json(const CheckResult& c);

struct Report {
  Json doc;
  int exit_code = kOk;
};

/// Each builder returns the full document; input errors raise ParseError
/// and are not caught here.
Report classify_report(const std::string& file, const std::string& text);
Report family_report(const std::string& file, const std::string& text);
Report verify_report(VerifyScope scope, const VerifyBounds& bounds);

/// Human-readable rendering of a report.
std::string summary(const Json& doc);

/// Deterministic serialization: two-space indent, trailing newline.
std::string serialize(const Json& doc);

/// Entry point shared by the binary and the tests.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace toric_plt::cli
