#pragma once

#include <json.hpp>

#include "apnforge/cases.hpp"
#include "apnforge/cubic.hpp"
#include "apnforge/ddt.hpp"
#include "apnforge/field.hpp"
#include "apnforge/geom.hpp"
#include "apnforge/kim.hpp"
#include "apnforge/tables.hpp"
#include "apnforge/weil.hpp"

namespace apnforge::cli {

using json = nlohmann::ordered_json;

json field_json(const Field& field);
json fe_json(const Field& field, Fe x);
json spectrum_json(const Spectrum& s);
json report_json(const Field& field, const SpectrumReport& r);
json sweep_entry_json(const Field& field, const SweepEntry& e);
json witness_json(const Field& field, const ApnWitness& w);
json case_analysis_json(const Field& field, const CaseAnalysis& c);
json system2_json(const Field& field, const System2Witness& w);
json u3_json(const Field& field, const U3BranchResult& r);
json kim_witness_json(const Field& field, const KimWitness& w);
json cubic_roots_json(const Field& field, const CubicRoots& r);
json cube3_report_json(const Field& field, const Cube3Report& r);
json claim_json(const ClaimCheck& c);
json table_check_json(const TableCheck& t);
json threshold_json(const ThresholdResult& t);
json datum_json(const RamificationDatum& d);
RamificationDatum datum_from_json(const json& j);

}  // namespace apnforge::cli
