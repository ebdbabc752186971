#include "fixtures.hpp"

#include <cstdlib>
#include <fstream>

#include "apnforge/error.hpp"

#ifndef APNFORGE_FIXTURE_DIR
#define APNFORGE_FIXTURE_DIR "fixtures"
#endif

namespace apnforge::cli {

std::string fixture_dir() {
  if (const char* env = std::getenv("APNFORGE_FIXTURES"); env && *env) return env;
  return APNFORGE_FIXTURE_DIR;
}

std::string table_fixture_path(int table) {
  return fixture_dir() + "/tables/table" + std::to_string(table) + ".csv";
}

TowerFixture load_tower_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFixtureMissing, "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
  TowerFixture fx;
  fx.name = j.value("name", "");
  fx.field = j.value("field", "");
  fx.parameters = j.value("parameters", json::object());
  fx.base_genus = j.value("base_genus", std::int64_t{0});
  if (!j.contains("steps") || !j["steps"].is_array()) throw Error(ErrorCode::kParseError, path + ": missing steps");
  for (const auto& s : j["steps"]) fx.steps.push_back(datum_from_json(s));
  return fx;
}

json tower_fixture_json(const TowerFixture& fx) {
  json steps = json::array();
  for (const auto& d : fx.steps) steps.push_back(datum_json(d));
  return {{"name", fx.name},
          {"field", fx.field},
          {"parameters", fx.parameters},
          {"base_genus", fx.base_genus},
          {"steps", steps}};
}

TowerFixture derive_system2_fixture() {
  const Field F = Field::build(10007, 1);
  const Fe u = F.from_int(2);
  const Fe xi = F.first_nonsquare();
  Fe a = F.one();
  while (!F.is_square(F.mul(a, F.add(u, F.one())))) a = F.add(a, F.one());
  const auto steps = system2_tower_steps(F, u, a, xi);
  const auto d = derive_tower(F, steps);
  TowerFixture fx;
  fx.name = "system2";
  fx.field = F.descriptor();
  fx.parameters = {{"u", u.v}, {"a", a.v}, {"xi", xi.v}};
  fx.base_genus = 0;
  fx.steps = d.steps;
  return fx;
}

TowerFixture derive_kim_fixture(std::uint32_t p, std::uint32_t n, std::uint32_t k) {
  const Field F = Field::build(p, n);
  const Fe xi = F.first_nonsquare();
  const Fe a = F.generator();
  const auto d = derive_tower(F, kim_tower_steps(F, k, a, xi));
  TowerFixture fx;
  fx.name = "kim";
  fx.field = F.descriptor();
  fx.parameters = {{"k", k}, {"a", a.v}, {"xi", xi.v}};
  fx.base_genus = 0;
  fx.steps = d.steps;
  return fx;
}

}  // namespace apnforge::cli
