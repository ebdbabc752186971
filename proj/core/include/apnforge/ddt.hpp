#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apnforge/field.hpp"

namespace apnforge {

struct Term {
  std::uint64_t exponent = 0;
  Fe coef;
};

// Function F_q -> F_q as a sum of monomials. Exponents are reduced with
// x^q = x (so they lie in [0, q-1]), merged, and zero terms dropped.
class SparsePoly {
 public:
  SparsePoly() = default;
  SparsePoly(const Field& field, std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Fe eval(const Field& field, Fe x) const;
  std::vector<Fe> values(const Field& field) const;
  std::string to_string(const Field& field) const;

 private:
  std::vector<Term> terms_;  // ascending exponent
};

enum class Family { kSq2, kCube3, kGenJK };

struct FamilyParams {
  Family family = Family::kSq2;
  Fe u;
  std::uint32_t j = 0;
  std::uint32_t k = 0;
};

std::string_view family_name(Family family);
Family parse_family(std::string_view name);
// x^{(q+3)/2}+ux^2, x^{(q-1)/2+3}+ux^3, x^{(q-1)/2+p^k+1}+ux^{p^j+1}.
SparsePoly make_family(const Field& field, const FamilyParams& params);
// Leading exponent printed in the table captions: (q+1)/2 for SQ2, (q+1)/3
// for CUBE3 when integral.
std::optional<SparsePoly> make_caption_variant(const Field& field, Family family, Fe u);
bool family_excluded_u(const Field& field, Fe u);  // u in {0, 1, -1}
// Every u outside {0, +-1}, by canonical index.
std::vector<Fe> family_u_range(const Field& field);

using Spectrum = std::map<std::uint32_t, std::uint64_t>;
std::string format_spectrum(const Spectrum& s);
// Accepts "{0^4, 1^12, 2^4}" and the braced-exponent form "0^{4}".
Spectrum parse_spectrum(std::string_view text);

enum class Verdict { kPN, kAPN, kDU };
Verdict verdict_for(std::uint32_t du);
std::string verdict_string(std::uint32_t du);  // "PN", "APN", "DU(5)"

struct Cell {
  Fe a;
  Fe b;
};

enum class SpectrumMethod { kAuto, kFull, kSquareClass };
std::string_view method_name(SpectrumMethod m);

struct SpectrumReport {
  Spectrum freq;
  std::uint32_t du = 0;
  Verdict verdict = Verdict::kDU;
  Cell witness;
  SpectrumMethod method = SpectrumMethod::kFull;

  std::uint64_t cells() const;
  std::uint64_t weighted_sum() const;
  std::string to_string() const { return format_spectrum(freq); }
};

struct SpectrumOptions {
  SpectrumMethod method = SpectrumMethod::kAuto;
  unsigned threads = 0;
};

// count[b] = #{x : F(x+a) - F(x) = b}.
std::vector<std::uint32_t> ddt_row(const Field& field, std::span<const Fe> values, Fe a);
std::vector<std::uint32_t> ddt_row(const Field& field, const SparsePoly& f, Fe a);

// True when all non-constant exponents agree modulo (q-1)/2. Then
// F(cx) = c^m F(x) for every square c, so Delta(ca, c^m b) = Delta(a, b) and
// DDT rows are determined by a = 1 and a = first nonsquare.
bool square_class_invariant(const Field& field, const SparsePoly& f);

// Full-domain spectrum over F_q^* x F_q. kAuto uses the square-class
// reduction when it applies.
SpectrumReport spectrum(const Field& field, const SparsePoly& f, SpectrumOptions options = {});
// Spectrum over all a except those listed (row restriction for table reconciliation).
Spectrum spectrum_without_rows(const Field& field, const SparsePoly& f, std::span<const Fe> dropped_a);

struct ApnWitness {
  Fe a;
  Fe b;
  std::uint32_t count = 0;  // exact Delta(a, b)
};

// Scans a ascending by canonical index, x ascending; returns as soon as a bin
// reaches 3. `row_budget` caps the number of a-rows examined.
std::optional<ApnWitness> refute_apn(const Field& field, const SparsePoly& f,
                                     std::optional<std::uint64_t> row_budget = std::nullopt);

enum class SweepMode { kEarlyExit, kFull };

struct SweepEntry {
  Fe u;
  std::uint64_t u_log = 0;
  Verdict verdict = Verdict::kDU;
  std::optional<std::uint32_t> du;   // exact in full mode
  std::optional<Spectrum> spectrum;  // full mode only
  std::optional<ApnWitness> witness;
};

// Results in canonical u order; `sink` sees each entry as soon as it is done.
std::vector<SweepEntry> sweep_family(const Field& field, Family family, std::span<const Fe> us,
                                     SweepMode mode, std::uint32_t j = 0, std::uint32_t k = 0,
                                     const std::function<void(const SweepEntry&)>& sink = {});

// A printed claim compared with brute force.
struct ClaimCheck {
  std::string claim;
  bool holds = false;
  std::string observed;
};

struct PnClaim {
  std::string label;
  Fe u;
  bool excluded = false;  // u in {0, +-1}
  std::uint32_t du = 0;
  bool confirmed = false;  // du == 1
};

// SQ2 PN instances for p = 3: n=1, u=-1; n=2, u in {g, g^3, g^5, g^7}.
std::vector<PnClaim> pn_remarks_check(const Field& field);
PnClaim pn_check(const Field& field, Fe u, std::string label);

}  // namespace apnforge
