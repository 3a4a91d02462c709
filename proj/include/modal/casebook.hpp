#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modal/formula.hpp"
#include "modal/proof.hpp"
#include "modal/semantics.hpp"

namespace modal {

// Bundled, machine-checked encodings of the classic ontological-argument
// derivations and their missteps. Each case is a text payload loaded through
// the public parsers, so the casebook doubles as a format regression suite.

enum class CaseKind { ProofAccept, ProofReject, SemanticValid, SemanticCountermodel };

const char* to_string(CaseKind kind);

struct CaseInfo {
  std::string name;
  CaseKind kind;
  std::string payload_file;
  std::string expected_file;
  std::string summary;
  std::string narrative;
  std::string repaired_twin;  // for reject cases: the accepted counterpart
};

// Stable catalog; order and length are part of the interface.
const std::vector<CaseInfo>& case_catalog();
const CaseInfo* find_case(const std::string& name);

class UnknownCase : public std::runtime_error {
 public:
  explicit UnknownCase(const std::string& name)
      : std::runtime_error("unknown case '" + name + "'") {}
};

class CasebookError : public std::runtime_error {
 public:
  explicit CasebookError(const std::string& what) : std::runtime_error(what) {}
};

struct ConsequenceQuery {
  Logic logic;
  std::vector<Formula> globals;
  std::vector<Formula> locals;
  Formula goal;
};

// Query file format (.query), line oriented:
//   logic S5
//   global <formula>   (zero or more)
//   local <formula>    (zero or more)
//   goal <formula>     (exactly one)
ConsequenceQuery parse_query(std::string_view text);

// Expected-outcome file format (.expected):
//   proof cases:     status accepted | status rejected, then `error <kind>`
//                    lines naming the exact expected error kinds;
//   semantic cases:  verdict valid | verdict countermodel, the latter
//                    followed by a `model:` marker and the exact .km text
//                    the countermodel must print as.
struct ExpectedOutcome {
  CaseKind kind;
  bool accepted = false;                        // proof cases
  std::vector<CheckErrorKind> error_kinds;      // proof-reject cases
  Verdict::Kind verdict = Verdict::Kind::Valid; // semantic cases
  std::string model_text;                       // semantic-countermodel cases
};

ExpectedOutcome parse_expected(std::string_view text, CaseKind kind);

struct CaseOutcome {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

// Loads, executes and judges one case from `cases_dir`.
CaseOutcome run_case(const std::string& cases_dir, const std::string& name);

// All cases in catalog order.
std::vector<CaseOutcome> run_all_cases(const std::string& cases_dir);

std::string read_text_file(const std::string& path);  // CasebookError on failure

}  // namespace modal
