#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "greedy_lab/graph.hpp"
#include "greedy_lab/matching.hpp"
#include "greedy_lab/rational.hpp"

namespace greedy_lab {

enum class ComponentKind { kOneOnePath, kAugmentingPath };

std::string component_kind_name(ComponentKind kind);

struct Component {
  ComponentKind kind = ComponentKind::kOneOnePath;
  std::size_t m = 0;  // edges of M
  std::size_t w = 0;  // edges of M_opt
  // Nodes in path order; an augmenting path starts and ends with its endpoints.
  std::vector<Node> nodes;
  // The two M-free ends of an augmenting path; empty for one-one paths.
  std::vector<Node> endpoints;
};

struct ComponentDecomposition {
  std::vector<Component> components;
  // Component index per node, -1 for nodes covered by neither matching.
  std::vector<int> component_of;
  std::vector<Node> m_mate;
  std::vector<Node> opt_mate;
  std::size_t total_m = 0;
  std::size_t total_w = 0;
};

// Swaps the M_opt edges of every even cycle and even path of M u M_opt for
// the M edges. Throws Error(kInvalidMatching) for invalid inputs and
// Error(kNotMaximum) if M_opt has an augmenting path inside M u M_opt.
Matching canonicalize_opt(const Graph& g, const Matching& m, const Matching& m_opt);

// Throws Error(kNonCanonical) on even cycles or even paths, Error(kNotMaximum)
// if M_opt is augmentable and Error(kNotMaximal) for a component without
// M edges.
ComponentDecomposition decompose(const Graph& g, const Matching& m,
                                 const Matching& m_opt);

enum class TransferMode { kRegular, kIndirect };

std::string transfer_mode_name(TransferMode mode);
TransferMode parse_transfer_mode(const std::string& name);

struct Transfer {
  Node from = 0;
  Node to = 0;
  std::size_t step = 0;
  bool direct = true;
};

struct TransferLedger {
  TransferMode mode = TransferMode::kRegular;
  std::size_t delta = 0;
  Rational theta;
  std::vector<Transfer> transfers;
  // Per component.
  std::vector<std::size_t> debits;
  std::vector<std::size_t> credits;
  // Credits received per node (nonzero only at augmenting-path endpoints).
  std::vector<std::size_t> node_credits;
};

// theta = 1/(2(2D-3)) in regular mode and 1/(2(2D-2)) in indirect mode.
Rational transfer_amount(TransferMode mode, std::size_t delta);
// (D-1)/(2D-3) in regular mode, (2D-1)/(4D-4) in indirect mode.
Rational target_ratio(TransferMode mode, std::size_t delta);

// Replays the trace and lists every transfer. M must be the trace's matching
// and the decomposition must come from it. Throws Error(kTraceMismatch) when
// they disagree and Error(kInvalidArgument) for delta < 3.
TransferLedger compute_transfers(const Graph& g, const ExecutionTrace& trace,
                                 const ComponentDecomposition& decomposition,
                                 TransferMode mode, std::size_t delta);

struct ComponentRow {
  ComponentKind kind = ComponentKind::kOneOnePath;
  std::size_t m = 0;
  std::size_t w = 0;
  std::size_t d = 0;
  std::size_t c = 0;
  std::int64_t bound = 0;  // largest admissible d - c
  Rational alpha;
  bool balance_ok = true;
  bool ratio_ok = true;
};

struct CertReport {
  TransferMode mode = TransferMode::kRegular;
  std::size_t delta = 0;
  Rational theta;
  Rational target;
  std::vector<ComponentRow> rows;
  std::size_t matching_size = 0;
  std::size_t optimum_size = 0;
  Rational global_ratio;  // |M| / |M_opt|
  Rational funded_ratio;  // sum(m_X - theta(d_X - c_X)) / sum(w_X)
  bool conservation_ok = true;
  bool balances_ok = true;
  bool local_ratios_ok = true;
  bool global_ok = true;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }
};

CertReport check_balances(const ComponentDecomposition& decomposition,
                          const TransferLedger& ledger, TransferMode mode,
                          std::size_t delta);

struct CheckReport {
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

// Every augmenting-path endpoint has degree >= 2 in g.
CheckReport endpoint_degree_check(const Graph& g,
                                  const ComponentDecomposition& decomposition);
// Every augmenting-path endpoint w receives at least min(d_G(w)-1, D-2)
// credits. Meaningful for regular-mode ledgers.
CheckReport credit_lower_bound_check(const Graph& g,
                                     const ComponentDecomposition& decomposition,
                                     const TransferLedger& ledger);
// When the first M edge of an augmenting path is picked, at least one
// endpoint of that path keeps a live edge after the step.
CheckReport creation_step_check(const Graph& g, const ExecutionTrace& trace,
                                const ComponentDecomposition& decomposition);

struct CertificationResult {
  ComponentDecomposition decomposition;
  TransferLedger ledger;
  CertReport report;
  CheckReport endpoints;
  CheckReport credits;  // empty in indirect mode
  CheckReport creation;

  bool passed() const {
    return report.passed() && endpoints.passed() && credits.passed() &&
           creation.passed();
  }
  std::vector<std::string> all_violations() const;
};

// Full pipeline: canonicalize, decompose, transfers, balances and per-step
// checks. m_opt must be a maximum matching of g.
CertificationResult certify_execution(const Graph& g, const ExecutionTrace& trace,
                                      const Matching& m_opt, TransferMode mode,
                                      std::size_t delta);

std::string cert_report_json(const CertificationResult& result, int indent = -1);

}  // namespace greedy_lab
