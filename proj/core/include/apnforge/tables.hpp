#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apnforge/ddt.hpp"
#include "apnforge/field.hpp"

namespace apnforge {

// One printed table row: p, n, u-label, spectrum string.
struct TableRow {
  std::uint32_t p = 0;
  std::uint32_t n = 1;
  std::string u_label;
  std::string spectrum;
  std::size_t line = 0;  // 1-based line in the CSV
};

// CSV with header "p,n,u_label,spectrum"; fields may be double-quoted.
std::vector<TableRow> load_table_csv(const std::string& path);
std::vector<TableRow> parse_table_csv(const std::string& text);

// Sq2 for tables 1 and 2, Cube3 for table 3.
Family table_family(int table);

struct RestrictionCheck {
  std::string hypothesis;
  Spectrum spectrum;
  bool matches = false;
};

enum class RowMatch { kFull, kRestricted, kNone };
std::string row_match_name(RowMatch m);

struct RowCheck {
  TableRow row;
  std::string field;  // descriptor, so the u-label is interpretable
  Fe u;
  Spectrum expected;
  Spectrum body;    // exponent of record, full domain
  std::optional<Spectrum> caption;  // printed caption exponent, when integral
  bool caption_matches = false;
  std::vector<RestrictionCheck> restrictions;  // only when the printed total is short
  RowMatch match = RowMatch::kNone;
  bool pass = false;
};

struct TableCheck {
  int table = 0;
  std::vector<RowCheck> rows;
  std::size_t body_matches = 0;
  std::size_t caption_matches = 0;
  bool pass = false;
};

// Exponent-of-record policy: a row passes when the body-exponent full-domain
// spectrum equals the printed one, or when the printed total is q(q-1) - q and
// the aggregation with the a = 1 row dropped equals it.
TableCheck verify_table(int table, std::span<const TableRow> rows);

// Spectrum over all a != 0 and all b != 0.
Spectrum spectrum_without_b0(const Field& field, const SparsePoly& f);

// Prose statements about SQ2 for larger fields.
std::vector<ClaimCheck> sq2_prose_claims(const Field& field);

struct GenJkClaim {
  std::uint32_t p, n, a, b;
  std::vector<std::uint32_t> claimed;
};
// DU sets printed for x^{(q-1)/2+p^b+1} + u x^{p^a+1}.
std::vector<GenJkClaim> genjk_prose_claims();

struct GenJkClaimCheck {
  GenJkClaim claim;
  std::vector<std::uint32_t> observed;   // over u outside {0, +-1}
  std::uint32_t du_without_u = 0;        // the polynomial exactly as printed, u = 1
  bool holds = false;
};
GenJkClaimCheck check_genjk_claim(const GenJkClaim& claim);

}  // namespace apnforge
