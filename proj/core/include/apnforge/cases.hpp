#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "apnforge/field.hpp"

namespace apnforge {

// Sign patterns (eta(x+a), eta(x)) for the SQ2 derivative equation
//   F(x+a) - F(x) = b,  F(x) = x^{(q+3)/2} + u x^2.
enum class CaseTag { kC11, kCm1m1, kCm11, kC1m1 };

std::string case_name(CaseTag tag);

struct Candidate {
  Fe x;
  int eta_x = 0;
  int eta_xa = 0;
  bool valid = false;
};

struct CaseRecord {
  CaseTag tag = CaseTag::kC11;
  int t_a = 1;  // required eta(x + a)
  int t_x = 1;  // required eta(x)
  std::vector<Candidate> candidates;  // distinct
  bool predicate = false;             // character condition as printed
  bool predicate_corrected = false;   // with the eta(2) factor restored
  std::uint32_t valid_count = 0;
};

// Points x in {0, -a} lie outside every case (eta = 0) and are checked directly.
struct BoundaryRecord {
  Fe x;
  bool solves = false;
};

struct CaseAnalysis {
  Fe u, a, b;
  std::array<CaseRecord, 4> cases;
  std::vector<BoundaryRecord> boundary;
  std::uint32_t case_total = 0;       // valid case candidates
  std::uint32_t predicted_total = 0;  // case_total + boundary solutions

  std::vector<Fe> solutions() const;  // sorted
};

CaseAnalysis analyze_cases(const Field& field, Fe u, Fe a, Fe b);

struct UMinus3Summary {
  std::map<std::uint32_t, std::uint64_t> histogram;  // predicted_total -> #(a,b)
  std::uint32_t max = 0;
  Fe argmax_a;
  Fe argmax_b;
};

// u = -3 over q = 5 mod 8. Rows a = 1 and a = first nonsquare represent all a.
UMinus3Summary u_minus3_summary(const Field& field);

struct SquareTest {
  std::string name;
  Fe value;
  int eta = 0;
};

struct System2Witness {
  Fe u, xi, a, b;
  Fe X, Y, Z, U, V, W, T;
  std::array<Fe, 3> roots;
  std::vector<SquareTest> tests;
  bool u3_relaxed = false;
};

struct System2Options {
  bool allow_u3 = false;
};

std::optional<System2Witness> find_system2_witness(const Field& field, Fe u,
                                                   std::optional<Fe> xi = std::nullopt,
                                                   System2Options options = {});
// Checks the defining equations and side conditions, and that the three
// roots are distinct solutions of F(x+a) - F(x) = b.
bool verify_system2(const Field& field, const System2Witness& w);

enum class U3Route { kResidueRule, kSystem2, kScanFallback };
std::string u3_route_name(U3Route route);

struct U3BranchResult {
  U3Route route = U3Route::kResidueRule;
  std::string rule;      // residue-class rule that applied
  bool rule_held = false;
  Fe a, b;
  std::uint32_t count = 0;  // direct solution count at (a, b)
  std::optional<System2Witness> system2;
};

std::optional<U3BranchResult> u3_branch_witness(const Field& field);

// Direct count of x with F(x+a) - F(x) = b for SQ2 at u.
std::uint32_t sq2_solution_count(const Field& field, Fe u, Fe a, Fe b);

}  // namespace apnforge
