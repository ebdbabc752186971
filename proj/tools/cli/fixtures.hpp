#pragma once

#include <string>
#include <vector>

#include "apnforge/geom.hpp"
#include "json_io.hpp"

namespace apnforge::cli {

// APNFORGE_FIXTURES overrides the compiled-in fixture directory.
std::string fixture_dir();
std::string table_fixture_path(int table);

struct TowerFixture {
  std::string name;
  std::string field;
  json parameters;
  std::int64_t base_genus = 0;
  std::vector<RamificationDatum> steps;
};

TowerFixture load_tower_fixture(const std::string& path);
json tower_fixture_json(const TowerFixture& fx);

// Derivations that produce the shipped tower fixtures.
TowerFixture derive_system2_fixture();
TowerFixture derive_kim_fixture(std::uint32_t p, std::uint32_t n, std::uint32_t k);

}  // namespace apnforge::cli
